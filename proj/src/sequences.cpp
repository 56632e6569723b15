#include "bpp/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bpp {

namespace {

int ilog2(int v) {
    int r = 0;
    while ((1 << (r + 1)) <= v) ++r;
    return r;
}

}  // namespace

CoeffArray haar_coefficients(const FunctionField& f, int j_lo, int j_hi) {
    const int R = f.resolution();
    const int n = f.dim();
    if ((R & (R - 1)) != 0)
        throw std::invalid_argument("haar_coefficients: resolution must be a power of two");
    int jmax = ilog2(R) - 1;
    if (j_hi == 0) j_hi = jmax;
    if (j_hi > jmax)
        throw std::invalid_argument("haar_coefficients: level exceeds the resolution limit");
    if (j_lo > j_hi) throw std::invalid_argument("haar_coefficients: empty level range");

    CoeffArray out;
    out.dim = n;
    out.j_lo = j_lo;
    out.j_hi = j_hi;
    out.box_side = f.box().side(0);
    const double L = out.box_side;
    const double cv = f.cell_volume();
    const int nw = (1 << n) - 1;

    if (n == 2) {
        // summed-area table for exact O(1) block sums
        std::vector<double> sat(std::size_t(R + 1) * (R + 1), 0.0);
        for (int i = 0; i < R; ++i) {
            double row = 0.0;
            for (int j = 0; j < R; ++j) {
                row += f.at(i, j);
                sat[std::size_t(i + 1) * (R + 1) + j + 1] =
                    sat[std::size_t(i) * (R + 1) + j + 1] + row;
            }
        }
        auto block = [&](int i0, int j0, int i1, int j1) {  // half-open cell ranges
            return sat[std::size_t(i1) * (R + 1) + j1] - sat[std::size_t(i0) * (R + 1) + j1] -
                   sat[std::size_t(i1) * (R + 1) + j0] + sat[std::size_t(i0) * (R + 1) + j0];
        };
        double total = block(0, 0, R, R);
        for (int j = j_lo; j <= j_hi; ++j) {
            double norm = std::pow(2.0, j * n / 2.0) * std::pow(L, -n / 2.0) * cv;
            if (j < 0) {
                // single coarse cube; the box sits in its first orthant where
                // every wavelet equals +1
                if (total != 0.0)
                    for (int w = 1; w <= nw; ++w)
                        out.entries.push_back({j, {0, 0, 0}, w, norm * total});
                continue;
            }
            int cubes = 1 << j;
            int c = R / cubes, h = c / 2;
            for (int mi = 0; mi < cubes; ++mi)
                for (int mj = 0; mj < cubes; ++mj) {
                    int i0 = mi * c, j0 = mj * c;
                    double s00 = block(i0, j0, i0 + h, j0 + h);
                    double s01 = block(i0, j0 + h, i0 + h, j0 + c);
                    double s10 = block(i0 + h, j0, i0 + c, j0 + h);
                    double s11 = block(i0 + h, j0 + h, i0 + c, j0 + c);
                    // w bit 0 -> Haar along axis 0, bit 1 -> along axis 1
                    double vals[4] = {0.0,
                                      (s00 + s01) - (s10 + s11),
                                      (s00 + s10) - (s01 + s11),
                                      (s00 + s11) - (s01 + s10)};
                    for (int w = 1; w <= 3; ++w)
                        if (vals[w] != 0.0)
                            out.entries.push_back({j, {mi, mj, 0}, w, norm * vals[w]});
                }
        }
    } else {
        for (int j = j_lo; j <= j_hi; ++j) {
            double norm = std::pow(2.0, j * n / 2.0) * std::pow(L, -n / 2.0) * cv;
            if (j < 0) {
                double total = 0.0;
                for (double v : f.samples()) total += v;
                if (total != 0.0)
                    for (int w = 1; w <= nw; ++w)
                        out.entries.push_back({j, {0, 0, 0}, w, norm * total});
                continue;
            }
            int cubes = 1 << j;
            int c = R / cubes, h = c / 2;
            std::vector<double> oct(std::size_t(cubes) * cubes * cubes * 8, 0.0);
            for (int i = 0; i < R; ++i)
                for (int j2 = 0; j2 < R; ++j2)
                    for (int k = 0; k < R; ++k) {
                        int mi = i / c, mj = j2 / c, mk = k / c;
                        int oi = (i % c) / h, oj = (j2 % c) / h, ok = (k % c) / h;
                        oct[(((std::size_t(mi) * cubes + mj) * cubes + mk) << 3) |
                            (oi << 2) | (oj << 1) | ok] += f.at(i, j2, k);
                    }
            for (int mi = 0; mi < cubes; ++mi)
                for (int mj = 0; mj < cubes; ++mj)
                    for (int mk = 0; mk < cubes; ++mk) {
                        const double* o =
                            oct.data() + (((std::size_t(mi) * cubes + mj) * cubes + mk) << 3);
                        for (int w = 1; w <= 7; ++w) {
                            double acc = 0.0;
                            for (int b = 0; b < 8; ++b) {
                                int oi = (b >> 2) & 1, oj = (b >> 1) & 1, ok = b & 1;
                                int sign = 1;
                                if ((w & 1) && oi) sign = -sign;
                                if ((w & 2) && oj) sign = -sign;
                                if ((w & 4) && ok) sign = -sign;
                                acc += sign * o[b];
                            }
                            if (acc != 0.0)
                                out.entries.push_back({j, {mi, mj, mk}, w, norm * acc});
                        }
                    }
        }
    }
    return out;
}

double level_pow_sum(const CoeffArray& c, int j, double p) {
    double acc = 0.0;
    for (const auto& e : c.entries)
        if (e.j == j) acc += std::pow(std::fabs(e.v), p);
    return acc;
}

double frak_besov_norm(const CoeffArray& c, double s, double p, double r) {
    const int n = c.dim;
    bool rinf = std::isinf(r);
    double acc = 0.0, sup = 0.0;
    for (int j = c.j_lo; j <= c.j_hi; ++j) {
        double lev = level_pow_sum(c, j, p);
        if (lev == 0.0) continue;
        // sum_m |2^{jn/2} lambda|^p = 2^{jnp/2} * lev
        double inner = std::pow(std::pow(2.0, j * n / 2.0), p) * lev;
        double term = std::pow(2.0, j * (s - double(n) / p)) * std::pow(inner, 1.0 / p);
        if (rinf)
            sup = std::max(sup, term);
        else
            acc += std::pow(term, r);
    }
    return rinf ? sup : std::pow(acc, 1.0 / r);
}

// ---- K-functional -----------------------------------------------------------

namespace {

// objective along the stationarity curve x_i = a_i z/(1+z), z = w_i^{p'} mu
double k_curve_value(const std::vector<double>& a, const std::vector<double>& lw_pp,
                     double p, double lmu) {
    double up = 0.0, vp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double lz = lw_pp[i] + lmu;
        double x, rem;  // x and a - x
        if (lz > 36.0) {
            x = a[i];
            rem = a[i] * std::exp(-lz);
        } else if (lz < -36.0) {
            x = a[i] * std::exp(lz);
            rem = a[i];
        } else {
            double z = std::exp(lz);
            x = a[i] * (z / (1.0 + z));
            rem = a[i] / (1.0 + z);
        }
        up += std::pow(x, p);
        double w = std::exp(lw_pp[i] * (p - 1.0) / p);  // recover w from w^{p'}
        vp += std::pow(w * rem, p);
    }
    return std::pow(up, 1.0 / p) + std::pow(vp, 1.0 / p);
}

}  // namespace

double seq_k_functional_raw(const std::vector<double>& values,
                            const std::vector<double>& weights, double p) {
    if (values.size() != weights.size())
        throw std::invalid_argument("seq_k_functional_raw: size mismatch");
    if (p < 1.0) throw std::invalid_argument("seq_k_functional_raw: p >= 1");
    std::vector<double> a;
    std::vector<double> w;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double av = std::fabs(values[i]);
        if (av > 0.0) {
            a.push_back(av);
            w.push_back(weights[i]);
        }
    }
    if (a.empty()) return 0.0;
    if (p == 1.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::min(1.0, w[i]) * a[i];
        return acc;
    }
    double pp = p / (p - 1.0);
    std::vector<double> lw_pp(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) lw_pp[i] = pp * std::log(w[i]);
    // endpoints
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        e0 += std::pow(w[i] * a[i], p);
        e1 += std::pow(a[i], p);
    }
    double best = std::min(std::pow(e0, 1.0 / p), std::pow(e1, 1.0 / p));
    // scan the curve in log mu, then polish with golden section
    const int N = 401;
    double lo = -130.0, hi = 130.0;
    double best_lmu = 0.0, best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
        double lmu = lo + (hi - lo) * i / (N - 1);
        double v = k_curve_value(a, lw_pp, p, lmu);
        if (v < best_val) {
            best_val = v;
            best_lmu = lmu;
        }
    }
    double span = (hi - lo) / (N - 1);
    double ga = best_lmu - 2.0 * span, gb = best_lmu + 2.0 * span;
    const double gr = 0.6180339887498949;
    double c1 = gb - gr * (gb - ga), c2 = ga + gr * (gb - ga);
    double f1 = k_curve_value(a, lw_pp, p, c1), f2 = k_curve_value(a, lw_pp, p, c2);
    for (int it = 0; it < 160; ++it) {
        if (f1 < f2) {
            gb = c2;
            c2 = c1;
            f2 = f1;
            c1 = gb - gr * (gb - ga);
            f1 = k_curve_value(a, lw_pp, p, c1);
        } else {
            ga = c1;
            c1 = c2;
            f1 = f2;
            c2 = ga + gr * (gb - ga);
            f2 = k_curve_value(a, lw_pp, p, c2);
        }
    }
    return std::min({best, best_val, f1, f2});
}

double seq_k_functional(const CoeffArray& c, double t, double p) {
    if (!(t > 0.0)) throw std::invalid_argument("seq_k_functional: t > 0");
    std::vector<double> vals, ws;
    vals.reserve(c.size());
    ws.reserve(c.size());
    for (const auto& e : c.entries) {
        vals.push_back(e.v);
        ws.push_back(t * std::pow(2.0, e.j));
    }
    return seq_k_functional_raw(vals, ws, p);
}

double interp_norm(const CoeffArray& c, double theta, double r, double p) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("interp_norm: theta in (0,1)");
    if (!(r >= 1.0) || std::isinf(r)) throw std::invalid_argument("interp_norm: finite r >= 1");
    if (c.entries.empty()) return 0.0;
    int L1 = -(c.j_hi + 4), L2 = -(c.j_lo - 4);
    double core = 0.0;
    for (int l = L1; l <= L2; ++l) {
        double K = seq_k_functional(c, std::pow(2.0, -l), p);
        core += std::pow(std::pow(2.0, l * theta) * K, r);
    }
    // below L1 the K-functional has saturated at ||lambda||_p, above L2 it is
    // linear in t; both remaining sums are geometric
    double Kinf = seq_lp(c, p);
    double head = std::pow(Kinf, r) * std::pow(2.0, (L1 - 1) * theta * r) /
                  (1.0 - std::pow(2.0, -theta * r));
    double M = seq_lp_weighted(c, p);
    double tail = std::pow(M, r) * std::pow(2.0, (L2 + 1) * (theta - 1.0) * r) /
                  (1.0 - std::pow(2.0, (theta - 1.0) * r));
    return std::pow(core + head + tail, 1.0 / r);
}

double seq_lp(const CoeffArray& c, double p) {
    double acc = 0.0;
    for (const auto& e : c.entries) acc += std::pow(std::fabs(e.v), p);
    return std::pow(acc, 1.0 / p);
}

double seq_lp_weighted(const CoeffArray& c, double p) {
    double acc = 0.0;
    for (const auto& e : c.entries)
        acc += std::pow(std::pow(2.0, e.j) * std::fabs(e.v), p);
    return std::pow(acc, 1.0 / p);
}

double boxunit_lp_norm(const FunctionField& f, double q) {
    double L = f.box().side(0);
    return lp_norm(f, q) * std::pow(L, -double(f.dim()) / q);
}

double boxunit_support(const FunctionField& f) {
    double L = f.box().side(0);
    return support_measure(f) * std::pow(L, -double(f.dim()));
}

}  // namespace bpp
