#pragma once

#include <string>

#include "bpp/grid.hpp"

namespace bpp {

enum class ConstantMethod { closed_form, quadrature };

struct ConstantValue {
    std::string name;
    double value = 0.0;
    ConstantMethod method = ConstantMethod::closed_form;
    double error_estimate = 0.0;  // 0 for closed forms
};

// omega_n = volume of the n-dimensional Euclidean unit ball
double unit_ball_volume(int n);

// alpha_{n,p} = integral over S^{n-1} of |e . xi|^p, pole-independent
ConstantValue alpha(int n, double p, int directions = 0);
ConstantValue alpha_with_pole(int n, double p, const Vec& pole, int directions = 0);

// one-dimensional Poincare constant c_p (2 at p=1)
double poincare_cp(double p);

// gamma_{n,r} = (alpha_{n,r} / ((n+r) omega_n))^{1/r};  gamma_n = gamma_{n,n}
ConstantValue gamma_nr(int n, double r, int directions = 0);

// shape of the subcritical embedding constant: (1-s)/(n-sp)^{p-1}.
// The absolute factor in front is unknown and lives in the verify module
// as an empirical estimate.
double sigma_shape(double s, int n, double p);

// dual exponent p' = p/(p-1)
inline double dual_exponent(double p) { return p / (p - 1.0); }

}  // namespace bpp
