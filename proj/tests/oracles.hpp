#pragma once

// Independent reference computations for the test suites. Everything here is
// deliberately written against the definitions directly (1-D quadrature,
// closed forms, brute-force minimization) and never calls the code paths it
// is used to check.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

constexpr double pi = 3.14159265358979323846264338327950288;

// area of the intersection of two unit disks with centers distance d apart
inline double lens_area(double d) {
    if (d >= 2.0) return 0.0;
    return 2.0 * std::acos(d / 2.0) - (d / 2.0) * std::sqrt(4.0 - d * d);
}

// ||Delta_h 1_D||_1 for the unit disk, |h| = d  (symmetric difference area)
inline double disk_difference_l1(double d) { return 2.0 * pi - 2.0 * lens_area(d); }

// adaptive Simpson on [a, b]
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// alpha_{2,p} = int_0^{2pi} |cos|^p
inline double alpha2(double p) {
    return integrate([p](double t) { return std::pow(std::fabs(std::cos(t)), p); }, 0.0,
                     2.0 * pi);
}

// alpha_{3,p} = 2 pi int_{-1}^{1} |mu|^p dmu
inline double alpha3(double p) {
    return 2.0 * pi * integrate([p](double m) { return std::pow(std::fabs(m), p); }, -1.0, 1.0);
}

// brute-force K(lambda; weights) = inf ||x||_p + ||w (a-x)||_p by cyclic
// per-coordinate golden-section minimization of the convex objective
inline double seq_k_bruteforce(const std::vector<double>& values,
                               const std::vector<double>& weights, double p) {
    std::vector<double> a;
    std::vector<double> w;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0.0) {
            a.push_back(std::fabs(values[i]));
            w.push_back(weights[i]);
        }
    }
    if (a.empty()) return 0.0;
    std::vector<double> x(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) x[i] = 0.5 * a[i];
    auto F = [&]() {
        double up = 0.0, vp = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            up += std::pow(x[i], p);
            vp += std::pow(w[i] * (a[i] - x[i]), p);
        }
        return std::pow(up, 1.0 / p) + std::pow(vp, 1.0 / p);
    };
    double cur = F();
    const double gr = 0.6180339887498949;
    for (int sweep = 0; sweep < 3000; ++sweep) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            double lo = 0.0, hi = a[i];
            double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
            x[i] = c1;
            double f1 = F();
            x[i] = c2;
            double f2 = F();
            for (int it = 0; it < 90; ++it) {
                if (f1 < f2) {
                    hi = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = hi - gr * (hi - lo);
                    x[i] = c1;
                    f1 = F();
                } else {
                    lo = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = lo + gr * (hi - lo);
                    x[i] = c2;
                    f2 = F();
                }
            }
            x[i] = 0.5 * (lo + hi);
        }
        double nv = F();
        if (std::fabs(cur - nv) < 1e-16 * std::max(1.0, cur)) break;
        cur = nv;
    }
    return F();
}

// deterministic pseudo-random stream (splitmix64), stable across platforms
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed * 0x9E3779B97F4A7C15ULL + 1) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

}  // namespace oracle
