#pragma once

#include <cstddef>
#include <string>

namespace bpp::kernels {

// Instruction-set lane for the reduction kernels. The scalar lane is the
// reference implementation; SIMD lanes are equivalence-tested against it.
enum class Isa { scalar, avx2 };

Isa active();
bool available(Isa isa);
void force(Isa isa);        // throws if the lane is unavailable on this CPU
void reset_to_auto();
std::string isa_name(Isa isa);

struct Ops {
    // sum_i |x_i|^p
    double (*sum_abs_pow)(const double* x, std::size_t n, double p);
    // sum_i |x_i|^p * w_i
    double (*sum_abs_pow_weighted)(const double* x, const double* w, std::size_t n, double p);
    // max_i |x_i|
    double (*max_abs)(const double* x, std::size_t n);
    // sum_k |w00 A[k] + w01 A[k+1] + w10 B[k] + w11 B[k+1] - C[k]|^p
    // (bilinear stencil difference; A and B must have n+1 readable entries)
    double (*stencil4_diff_pow)(const double* A, const double* B, const double* C,
                                double w00, double w01, double w10, double w11,
                                std::size_t n, double p);
    // trilinear variant: rows A,B (z-slab 0) and D,E (z-slab 1)
    double (*stencil8_diff_pow)(const double* A, const double* B, const double* D,
                                const double* E, const double* C, const double w[8],
                                std::size_t n, double p);
    // sum_i |s - y_i|^p * w_i
    double (*const_diff_pow_weighted)(double s, const double* y, const double* w,
                                      std::size_t n, double p);
    // sum_i m_i * w_i   (m is a 0/1 mask stored as double)
    double (*masked_weight_sum)(const double* m, const double* w, std::size_t n);
};

const Ops& ops();

namespace detail {
extern const Ops scalar_ops;
extern const Ops avx2_ops;
bool cpu_has_avx2();
}  // namespace detail

}  // namespace bpp::kernels
