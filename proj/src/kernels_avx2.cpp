// AVX2+FMA lane. |x|^p is computed as exp2(p*log2|x|) with double-precision
// polynomial cores; integer p in {1,2,3,4} short-circuits to multiplies.
// This translation unit is the only one compiled with -mavx2 -mfma.

#include <cmath>
#include <cstdint>

#include "bpp/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace bpp::kernels::detail {
namespace {

const __m256d k_one = _mm256_set1_pd(1.0);
const __m256d k_half = _mm256_set1_pd(0.5);
const __m256d k_sqrt2 = _mm256_set1_pd(1.4142135623730951);
const __m256d k_ln2 = _mm256_set1_pd(0.6931471805599453);
const __m256d k_abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));

// log2 of strictly positive finite x (callers mask out zeros).
inline __m256d v_log2(__m256d x) {
    __m256i bits = _mm256_castpd_si256(x);
    __m256i expo = _mm256_srli_epi64(bits, 52);
    // biased exponent as double
    __m256d e = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(expo, _mm256_set1_epi64x(0x4330000000000000LL))),
        _mm256_set1_pd(4503599627370496.0 + 1023.0));
    __m256i man_bits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FF0000000000000LL));
    __m256d m = _mm256_castsi256_pd(man_bits);  // in [1,2)
    // renormalize to [sqrt(2)/2, sqrt(2))
    __m256d gt = _mm256_cmp_pd(m, k_sqrt2, _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, k_half), gt);
    e = _mm256_add_pd(e, _mm256_and_pd(gt, k_one));
    // z = (m-1)/(m+1); log2(m) = z * P(z^2)
    __m256d z = _mm256_div_pd(_mm256_sub_pd(m, k_one), _mm256_add_pd(m, k_one));
    __m256d z2 = _mm256_mul_pd(z, z);
    const double c = 2.8853900817779268;  // 2/ln2
    __m256d poly = _mm256_set1_pd(c / 19.0);
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 17.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 15.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 13.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 11.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 9.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 7.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 5.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c / 3.0));
    poly = _mm256_fmadd_pd(poly, z2, _mm256_set1_pd(c));
    return _mm256_fmadd_pd(z, poly, e);
}

// 2^y for y in [-1020, 1020]
inline __m256d v_exp2(__m256d y) {
    __m256d n = _mm256_round_pd(y, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d f = _mm256_sub_pd(y, n);
    __m256d u = _mm256_mul_pd(f, k_ln2);  // |u| <= 0.347
    __m256d poly = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 479001600.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 39916800.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 3628800.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 362880.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 40320.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 5040.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 720.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 120.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 24.0));
    poly = _mm256_fmadd_pd(poly, u, _mm256_set1_pd(1.0 / 6.0));
    poly = _mm256_fmadd_pd(poly, u, k_half);
    poly = _mm256_fmadd_pd(poly, u, k_one);
    poly = _mm256_fmadd_pd(poly, u, k_one);
    // scale by 2^n through the exponent field
    __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i scaled =
        _mm256_add_epi64(_mm256_castpd_si256(poly), _mm256_slli_epi64(n64, 52));
    return _mm256_castsi256_pd(scaled);
}

// |v|^p for general p > 0; zero lanes give zero.
inline __m256d v_pow_abs(__m256d v, __m256d p) {
    __m256d a = _mm256_and_pd(v, k_abs_mask);
    __m256d is_zero = _mm256_cmp_pd(a, _mm256_setzero_pd(), _CMP_EQ_OQ);
    __m256d safe = _mm256_blendv_pd(a, k_one, is_zero);
    __m256d y = _mm256_mul_pd(p, v_log2(safe));
    // clamp to avoid exponent-field overflow on extreme inputs
    y = _mm256_max_pd(_mm256_set1_pd(-1020.0), _mm256_min_pd(y, _mm256_set1_pd(1020.0)));
    __m256d r = v_exp2(y);
    return _mm256_andnot_pd(is_zero, r);
}

struct Pow1 {
    static __m256d apply(__m256d v, __m256d) { return _mm256_and_pd(v, k_abs_mask); }
    static double scalar(double v, double) { return std::fabs(v); }
};
struct Pow2 {
    static __m256d apply(__m256d v, __m256d) { return _mm256_mul_pd(v, v); }
    static double scalar(double v, double) { return v * v; }
};
struct Pow3 {
    static __m256d apply(__m256d v, __m256d) {
        __m256d a = _mm256_and_pd(v, k_abs_mask);
        return _mm256_mul_pd(_mm256_mul_pd(a, a), a);
    }
    static double scalar(double v, double) {
        double a = std::fabs(v);
        return a * a * a;
    }
};
struct Pow4 {
    static __m256d apply(__m256d v, __m256d) {
        __m256d s = _mm256_mul_pd(v, v);
        return _mm256_mul_pd(s, s);
    }
    static double scalar(double v, double) {
        double s = v * v;
        return s * s;
    }
};
struct PowGen {
    static __m256d apply(__m256d v, __m256d p) { return v_pow_abs(v, p); }
    static double scalar(double v, double p) {
        double a = std::fabs(v);
        return a == 0.0 ? 0.0 : std::pow(a, p);
    }
};

inline double hsum(__m256d acc) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
}

template <class P>
double t_sum_abs_pow(const double* x, std::size_t n, double p) {
    __m256d acc = _mm256_setzero_pd();
    __m256d vp = _mm256_set1_pd(p);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, P::apply(_mm256_loadu_pd(x + i), vp));
    double r = hsum(acc);
    for (; i < n; ++i) r += P::scalar(x[i], p);
    return r;
}

template <class P>
double t_sum_abs_pow_weighted(const double* x, const double* w, std::size_t n, double p) {
    __m256d acc = _mm256_setzero_pd();
    __m256d vp = _mm256_set1_pd(p);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(P::apply(_mm256_loadu_pd(x + i), vp), _mm256_loadu_pd(w + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += P::scalar(x[i], p) * w[i];
    return r;
}

template <class P>
double t_stencil4_diff_pow(const double* A, const double* B, const double* C, double w00,
                           double w01, double w10, double w11, std::size_t n, double p) {
    __m256d acc = _mm256_setzero_pd();
    __m256d vp = _mm256_set1_pd(p);
    __m256d v00 = _mm256_set1_pd(w00), v01 = _mm256_set1_pd(w01);
    __m256d v10 = _mm256_set1_pd(w10), v11 = _mm256_set1_pd(w11);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d v = _mm256_mul_pd(v00, _mm256_loadu_pd(A + k));
        v = _mm256_fmadd_pd(v01, _mm256_loadu_pd(A + k + 1), v);
        v = _mm256_fmadd_pd(v10, _mm256_loadu_pd(B + k), v);
        v = _mm256_fmadd_pd(v11, _mm256_loadu_pd(B + k + 1), v);
        v = _mm256_sub_pd(v, _mm256_loadu_pd(C + k));
        acc = _mm256_add_pd(acc, P::apply(v, vp));
    }
    double r = hsum(acc);
    for (; k < n; ++k) {
        double v = w00 * A[k] + w01 * A[k + 1] + w10 * B[k] + w11 * B[k + 1] - C[k];
        r += P::scalar(v, p);
    }
    return r;
}

template <class P>
double t_stencil8_diff_pow(const double* A, const double* B, const double* D, const double* E,
                           const double* C, const double w[8], std::size_t n, double p) {
    __m256d acc = _mm256_setzero_pd();
    __m256d vp = _mm256_set1_pd(p);
    __m256d vw[8];
    for (int j = 0; j < 8; ++j) vw[j] = _mm256_set1_pd(w[j]);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d v = _mm256_mul_pd(vw[0], _mm256_loadu_pd(A + k));
        v = _mm256_fmadd_pd(vw[1], _mm256_loadu_pd(A + k + 1), v);
        v = _mm256_fmadd_pd(vw[2], _mm256_loadu_pd(B + k), v);
        v = _mm256_fmadd_pd(vw[3], _mm256_loadu_pd(B + k + 1), v);
        v = _mm256_fmadd_pd(vw[4], _mm256_loadu_pd(D + k), v);
        v = _mm256_fmadd_pd(vw[5], _mm256_loadu_pd(D + k + 1), v);
        v = _mm256_fmadd_pd(vw[6], _mm256_loadu_pd(E + k), v);
        v = _mm256_fmadd_pd(vw[7], _mm256_loadu_pd(E + k + 1), v);
        v = _mm256_sub_pd(v, _mm256_loadu_pd(C + k));
        acc = _mm256_add_pd(acc, P::apply(v, vp));
    }
    double r = hsum(acc);
    for (; k < n; ++k) {
        double v = w[0] * A[k] + w[1] * A[k + 1] + w[2] * B[k] + w[3] * B[k + 1] + w[4] * D[k] +
                   w[5] * D[k + 1] + w[6] * E[k] + w[7] * E[k + 1] - C[k];
        r += P::scalar(v, p);
    }
    return r;
}

template <class P>
double t_const_diff_pow_weighted(double s, const double* y, const double* w, std::size_t n,
                                 double p) {
    __m256d acc = _mm256_setzero_pd();
    __m256d vp = _mm256_set1_pd(p);
    __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_sub_pd(vs, _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(P::apply(v, vp), _mm256_loadu_pd(w + i), acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += P::scalar(s - y[i], p) * w[i];
    return r;
}

template <double (*F1)(const double*, std::size_t, double),
          double (*F2)(const double*, std::size_t, double),
          double (*F3)(const double*, std::size_t, double),
          double (*F4)(const double*, std::size_t, double),
          double (*FG)(const double*, std::size_t, double)>
double dispatch1(const double* x, std::size_t n, double p) {
    if (p == 2.0) return F2(x, n, p);
    if (p == 1.0) return F1(x, n, p);
    if (p == 3.0) return F3(x, n, p);
    if (p == 4.0) return F4(x, n, p);
    return FG(x, n, p);
}

double a_sum_abs_pow(const double* x, std::size_t n, double p) {
    return dispatch1<t_sum_abs_pow<Pow1>, t_sum_abs_pow<Pow2>, t_sum_abs_pow<Pow3>,
                     t_sum_abs_pow<Pow4>, t_sum_abs_pow<PowGen>>(x, n, p);
}

double a_sum_abs_pow_weighted(const double* x, const double* w, std::size_t n, double p) {
    if (p == 2.0) return t_sum_abs_pow_weighted<Pow2>(x, w, n, p);
    if (p == 1.0) return t_sum_abs_pow_weighted<Pow1>(x, w, n, p);
    if (p == 3.0) return t_sum_abs_pow_weighted<Pow3>(x, w, n, p);
    if (p == 4.0) return t_sum_abs_pow_weighted<Pow4>(x, w, n, p);
    return t_sum_abs_pow_weighted<PowGen>(x, w, n, p);
}

double a_max_abs(const double* x, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, _mm256_and_pd(_mm256_loadu_pd(x + i), k_abs_mask));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

double a_stencil4_diff_pow(const double* A, const double* B, const double* C, double w00,
                           double w01, double w10, double w11, std::size_t n, double p) {
    if (p == 2.0) return t_stencil4_diff_pow<Pow2>(A, B, C, w00, w01, w10, w11, n, p);
    if (p == 1.0) return t_stencil4_diff_pow<Pow1>(A, B, C, w00, w01, w10, w11, n, p);
    if (p == 3.0) return t_stencil4_diff_pow<Pow3>(A, B, C, w00, w01, w10, w11, n, p);
    if (p == 4.0) return t_stencil4_diff_pow<Pow4>(A, B, C, w00, w01, w10, w11, n, p);
    return t_stencil4_diff_pow<PowGen>(A, B, C, w00, w01, w10, w11, n, p);
}

double a_stencil8_diff_pow(const double* A, const double* B, const double* D, const double* E,
                           const double* C, const double w[8], std::size_t n, double p) {
    if (p == 2.0) return t_stencil8_diff_pow<Pow2>(A, B, D, E, C, w, n, p);
    if (p == 1.0) return t_stencil8_diff_pow<Pow1>(A, B, D, E, C, w, n, p);
    if (p == 3.0) return t_stencil8_diff_pow<Pow3>(A, B, D, E, C, w, n, p);
    if (p == 4.0) return t_stencil8_diff_pow<Pow4>(A, B, D, E, C, w, n, p);
    return t_stencil8_diff_pow<PowGen>(A, B, D, E, C, w, n, p);
}

double a_const_diff_pow_weighted(double s, const double* y, const double* w, std::size_t n,
                                 double p) {
    if (p == 2.0) return t_const_diff_pow_weighted<Pow2>(s, y, w, n, p);
    if (p == 1.0) return t_const_diff_pow_weighted<Pow1>(s, y, w, n, p);
    if (p == 3.0) return t_const_diff_pow_weighted<Pow3>(s, y, w, n, p);
    if (p == 4.0) return t_const_diff_pow_weighted<Pow4>(s, y, w, n, p);
    return t_const_diff_pow_weighted<PowGen>(s, y, w, n, p);
}

double a_masked_weight_sum(const double* m, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(m + i), _mm256_loadu_pd(w + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += m[i] * w[i];
    return r;
}

}  // namespace

const Ops avx2_ops = {
    a_sum_abs_pow,       a_sum_abs_pow_weighted,    a_max_abs,           a_stencil4_diff_pow,
    a_stencil8_diff_pow, a_const_diff_pow_weighted, a_masked_weight_sum,
};

}  // namespace bpp::kernels::detail

#else

namespace bpp::kernels::detail {
const Ops avx2_ops = {nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr};
}

#endif
