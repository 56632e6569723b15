#pragma once

#include <vector>

#include "bpp/field.hpp"

namespace bpp {

// |samples| sorted nonincreasing, each carrying the uniform cell measure.
struct DecreasingRearrangement {
    std::vector<double> values;
    double cell_measure = 0.0;

    // integral of (g*)^e du over [0, u1)
    double head_integral(double u1, double e) const;
    // integral of (g*)^e du over [u1, infinity)
    double tail_integral(double u1, double e) const;
};

// Radially nonincreasing field with the same value distribution as |f|,
// centered at the box center. Ties in cell distance break lexicographically.
FunctionField schwarz_rearrange(const FunctionField& f);

DecreasingRearrangement decreasing_rearrangement(const FunctionField& g);

// DeVore-Scherer form of K(t, f; W^1_r, W^1_p):
//   (int_0^{t^n} (|grad f|*)^r du)^{1/r} + t (int_{t^n}^inf (|grad f|*)^p du)^{1/p}
double gradient_k_functional(const FunctionField& f, double t, double r, double p);
double gradient_k_functional(const DecreasingRearrangement& dr, int dim, double t, double r,
                             double p);

}  // namespace bpp
