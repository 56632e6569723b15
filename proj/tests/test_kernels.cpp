#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bpp/kernels.hpp"
#include "oracles.hpp"

using namespace bpp;

namespace {

std::vector<double> random_vec(oracle::Rng& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = (rng.uniform() - 0.5) * 2.0 * scale * std::exp(rng.uniform(-6.0, 6.0));
    return v;
}

}  // namespace

TEST_CASE("avx2 lane matches the scalar reference on every kernel") {
    if (!kernels::available(kernels::Isa::avx2)) {
        MESSAGE("avx2 unavailable on this machine; lane equivalence not exercised");
        return;
    }
    oracle::Rng rng(42);
    const double ps[] = {1.0, 1.5, 2.0, 2.05, 2.5, 3.0, 4.0, 3.7, 1.2};
    for (std::size_t n : {1ul, 3ul, 4ul, 7ul, 64ul, 1025ul}) {
        auto x = random_vec(rng, n + 1), y = random_vec(rng, n + 1), w = random_vec(rng, n + 1);
        auto b = random_vec(rng, n + 1), c = random_vec(rng, n);
        for (auto& v : w) v = std::fabs(v);
        for (double p : ps) {
            kernels::force(kernels::Isa::scalar);
            double s1 = kernels::ops().sum_abs_pow(x.data(), n, p);
            double s2 = kernels::ops().sum_abs_pow_weighted(x.data(), w.data(), n, p);
            double s3 = kernels::ops().max_abs(x.data(), n);
            double s4 = kernels::ops().stencil4_diff_pow(x.data(), b.data(), c.data(), 0.3, 0.2,
                                                         0.4, 0.1, n, p);
            double s5 = kernels::ops().const_diff_pow_weighted(0.37, y.data(), w.data(), n, p);
            double s6 = kernels::ops().masked_weight_sum(y.data(), w.data(), n);
            kernels::force(kernels::Isa::avx2);
            double a1 = kernels::ops().sum_abs_pow(x.data(), n, p);
            double a2 = kernels::ops().sum_abs_pow_weighted(x.data(), w.data(), n, p);
            double a3 = kernels::ops().max_abs(x.data(), n);
            double a4 = kernels::ops().stencil4_diff_pow(x.data(), b.data(), c.data(), 0.3, 0.2,
                                                         0.4, 0.1, n, p);
            double a5 = kernels::ops().const_diff_pow_weighted(0.37, y.data(), w.data(), n, p);
            double a6 = kernels::ops().masked_weight_sum(y.data(), w.data(), n);
            kernels::reset_to_auto();
            CHECK(a1 == doctest::Approx(s1).epsilon(1e-11));
            CHECK(a2 == doctest::Approx(s2).epsilon(1e-11));
            CHECK(a3 == s3);
            CHECK(a4 == doctest::Approx(s4).epsilon(1e-11));
            CHECK(a5 == doctest::Approx(s5).epsilon(1e-11));
            CHECK(a6 == doctest::Approx(s6).epsilon(1e-12));
        }
    }
}

TEST_CASE("avx2 stencil8 matches scalar") {
    if (!kernels::available(kernels::Isa::avx2)) return;
    oracle::Rng rng(9);
    std::size_t n = 129;
    auto A = random_vec(rng, n + 1), B = random_vec(rng, n + 1), D = random_vec(rng, n + 1),
         E = random_vec(rng, n + 1), C = random_vec(rng, n);
    double w[8] = {0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1};
    for (double p : {1.0, 2.0, 2.3, 3.0}) {
        kernels::force(kernels::Isa::scalar);
        double s = kernels::ops().stencil8_diff_pow(A.data(), B.data(), D.data(), E.data(),
                                                    C.data(), w, n, p);
        kernels::force(kernels::Isa::avx2);
        double a = kernels::ops().stencil8_diff_pow(A.data(), B.data(), D.data(), E.data(),
                                                    C.data(), w, n, p);
        kernels::reset_to_auto();
        CHECK(a == doctest::Approx(s).epsilon(1e-11));
    }
}

TEST_CASE("vector pow path is accurate elementwise") {
    if (!kernels::available(kernels::Isa::avx2)) return;
    oracle::Rng rng(7);
    kernels::force(kernels::Isa::avx2);
    for (int i = 0; i < 4000; ++i) {
        double v = (rng.uniform() - 0.5) * std::exp(rng.uniform(-40.0, 40.0));
        double p = rng.uniform(1.0, 6.0);
        double x[4] = {v, 0.0, -v, 1.0};
        double got = kernels::ops().sum_abs_pow(x, 1, p);
        double want = std::pow(std::fabs(v), p);
        CHECK(got == doctest::Approx(want).epsilon(5e-13));
    }
    kernels::reset_to_auto();
    // zero stays exactly zero
    kernels::force(kernels::Isa::avx2);
    double z[4] = {0.0, 0.0, 0.0, 0.0};
    CHECK(kernels::ops().sum_abs_pow(z, 4, 2.7) == 0.0);
    kernels::reset_to_auto();
}

TEST_CASE("kernel lane selection reports and forces") {
    CHECK(kernels::available(kernels::Isa::scalar));
    kernels::force(kernels::Isa::scalar);
    CHECK(kernels::active() == kernels::Isa::scalar);
    kernels::reset_to_auto();
    if (kernels::detail::cpu_has_avx2()) CHECK(kernels::active() == kernels::Isa::avx2);
}
