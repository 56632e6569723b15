#include <cmath>

#include "bpp/kernels.hpp"

// Reference lane: straightforward loops over std::pow. Every SIMD lane must
// reproduce these results to ~1e-12 relative on the equivalence suite.

namespace bpp::kernels::detail {
namespace {

inline double pow_abs(double v, double p) {
    double a = std::fabs(v);
    if (p == 2.0) return a * a;
    if (p == 1.0) return a;
    if (a == 0.0) return 0.0;
    return std::pow(a, p);
}

double s_sum_abs_pow(const double* x, std::size_t n, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += pow_abs(x[i], p);
    return acc;
}

double s_sum_abs_pow_weighted(const double* x, const double* w, std::size_t n, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += pow_abs(x[i], p) * w[i];
    return acc;
}

double s_max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double s_stencil4_diff_pow(const double* A, const double* B, const double* C, double w00,
                           double w01, double w10, double w11, std::size_t n, double p) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double v = w00 * A[k] + w01 * A[k + 1] + w10 * B[k] + w11 * B[k + 1] - C[k];
        acc += pow_abs(v, p);
    }
    return acc;
}

double s_stencil8_diff_pow(const double* A, const double* B, const double* D, const double* E,
                           const double* C, const double w[8], std::size_t n, double p) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double v = w[0] * A[k] + w[1] * A[k + 1] + w[2] * B[k] + w[3] * B[k + 1] +
                   w[4] * D[k] + w[5] * D[k + 1] + w[6] * E[k] + w[7] * E[k + 1] - C[k];
        acc += pow_abs(v, p);
    }
    return acc;
}

double s_const_diff_pow_weighted(double s, const double* y, const double* w, std::size_t n,
                                 double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += pow_abs(s - y[i], p) * w[i];
    return acc;
}

double s_masked_weight_sum(const double* m, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += m[i] * w[i];
    return acc;
}

}  // namespace

const Ops scalar_ops = {
    s_sum_abs_pow,       s_sum_abs_pow_weighted,   s_max_abs,           s_stencil4_diff_pow,
    s_stencil8_diff_pow, s_const_diff_pow_weighted, s_masked_weight_sum,
};

}  // namespace bpp::kernels::detail
