#pragma once

#include <vector>

#include "bpp/field.hpp"

namespace bpp {

// Haar wavelet coefficients of a field over the dyadic lattice of its box.
// The system is orthonormal in L^2(dx); levels j < 0 reduce to a single cube
// containing the box. All sequence-space functionals below therefore refer to
// box-normalized coordinates; the helpers at the bottom give field norms in
// the same normalization.
struct CoeffArray {
    struct Entry {
        int j;
        int m[3];
        int w;  // wavelet index, 1 .. 2^dim - 1
        double v;
    };
    int dim = 2;
    int j_lo = 0, j_hi = 0;
    double box_side = 1.0;
    std::vector<Entry> entries;  // nonzero coefficients only

    std::size_t size() const { return entries.size(); }
};

// exact cell-sum coefficients; requires 2^{j_hi} <= resolution / 2
CoeffArray haar_coefficients(const FunctionField& f, int j_lo = -4, int j_hi = 0 /*auto*/);

// (sum_j 2^{j(s - n/p) r} (sum_m |2^{j n/2} lambda_{jm}|^p)^{r/p})^{1/r};
// r = infinity takes the sup over levels
double frak_besov_norm(const CoeffArray& c, double s, double p, double r);

// exact K(t, lambda; l^p, l^p(2^j)) via the scalar split-parameter curve
double seq_k_functional(const CoeffArray& c, double t, double p);

// same on raw (value, weight) pairs; weights w_i play the role of t 2^{j_i}
double seq_k_functional_raw(const std::vector<double>& values,
                            const std::vector<double>& weights, double p);

// discrete dyadic version of the real interpolation norm for (l^p, l^p(2^j)):
//   (sum_l [2^{l theta} K(2^{-l}, lambda)]^r)^{1/r}
// with closed-form geometric tails outside the resolved l-range
double interp_norm(const CoeffArray& c, double theta, double r, double p);

// ---- level sums and helpers -------------------------------------------------

double level_pow_sum(const CoeffArray& c, int j, double p);  // sum_m |lambda_{jm}|^p
double seq_lp(const CoeffArray& c, double p);                // || lambda ||_{l^p}
double seq_lp_weighted(const CoeffArray& c, double p);       // || lambda ||_{l^p(2^j)}

// field L^q norm and support measure in box-normalized coordinates
double boxunit_lp_norm(const FunctionField& f, double q);
double boxunit_support(const FunctionField& f);

}  // namespace bpp
