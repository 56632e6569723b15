#include "bpp/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bpp/constants.hpp"
#include "bpp/kernels.hpp"
#include "bpp/parallel.hpp"

namespace bpp {

// ---- ball quadrature -------------------------------------------------------

BallQuadrature BallQuadrature::make(const StarBody& K, int node_count) {
    int n = K.dim();
    if (node_count == 0) node_count = n == 2 ? 256 : 1024;
    int n_rad = 8;
    int n_dir = std::max(4, node_count / n_rad);
    BallQuadrature bq;
    bq.dim = n;
    DirectionGrid dg = DirectionGrid::make(n, n_dir);
    Quadrature1D gl = gauss_legendre_01(n_rad);
    bq.body_volume = 0.0;
    std::vector<double> rho(n_dir);
    for (int i = 0; i < n_dir; ++i) {
        rho[i] = K.radial_interp(dg.dirs[i]);
        bq.body_volume += dg.weights[i] * std::pow(rho[i], n) / n;
    }
    bq.nodes.reserve(std::size_t(n_dir) * n_rad);
    bq.weights.reserve(std::size_t(n_dir) * n_rad);
    for (int i = 0; i < n_dir; ++i)
        for (int j = 0; j < n_rad; ++j) {
            double r = gl.nodes[j];
            bq.nodes.push_back(dg.dirs[i] * (rho[i] * r));
            // weight: W_dir * rho^n * r^{n-1} w_r  (sums to |K|)
            bq.weights.push_back(dg.weights[i] * std::pow(rho[i], n) *
                                 std::pow(r, n - 1) * gl.weights[j]);
            bq.max_node_norm = std::max(bq.max_node_norm, bq.nodes.back().norm());
        }
    return bq;
}

// ---- moduli ----------------------------------------------------------------

double modulus_q_average(const FunctionField& f, const BallQuadrature& bq, double t, double p,
                         double q) {
    if (t <= 0.0) throw std::invalid_argument("modulus: t > 0");
    if (t * bq.max_node_norm > 64.0 * f.box().diameter(f.dim()))
        throw std::invalid_argument("modulus: t too large for box");
    bool p_inf = std::isinf(p), q_inf = std::isinf(q);
    double acc = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < bq.nodes.size(); ++i) {
        Vec h = bq.nodes[i] * t;
        double nrm;
        if (p_inf)
            nrm = difference_norm(f, h, p);
        else if (q_inf)
            nrm = std::pow(difference_norm_pow(f, h, p), 1.0 / p);
        else if (q == p)
            nrm = 0.0;  // handled below without the root
        else
            nrm = std::pow(difference_norm_pow(f, h, p), 1.0 / p);
        if (p_inf || q_inf)
            sup = std::max(sup, nrm);
        else if (q == p)
            acc += bq.weights[i] * difference_norm_pow(f, h, p);
        else
            acc += bq.weights[i] * std::pow(nrm, q);
    }
    if (p_inf || q_inf) return sup;
    return std::pow(acc / bq.body_volume, 1.0 / q);
}

double modulus_q_average(const FunctionField& f, const StarBody& K, double t, double p,
                         double q) {
    return modulus_q_average(f, BallQuadrature::make(K), t, p, q);
}

double modulus(const FunctionField& f, const BallQuadrature& bq, double t, double p) {
    return modulus_q_average(f, bq, t, p, p);
}

double modulus(const FunctionField& f, const StarBody& K, double t, double p) {
    return modulus_q_average(f, BallQuadrature::make(K), t, p, p);
}

double sup_modulus(const FunctionField& f, const StarBody& K, double t, double p) {
    return modulus_q_average(f, K, t, p, std::numeric_limits<double>::infinity());
}

// ---- radial integration engine ---------------------------------------------

namespace {

struct HeadFit {
    double beta = 1.0;       // power-law exponent of V
    double logc = 0.0;       // power-law log-amplitude
    double c[3] = {0, 0, 0}; // quadratic model of V^q / t^q
    bool intercept_ok = false;
};

HeadFit fit_head(const std::vector<double>& ts, const std::vector<double>& vq, double q,
                 double dx) {
    HeadFit h;
    // power law on the first decade of nodes
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < ts.size() && ts[i] <= ts[0] * 10.0 * (1 + 1e-12); ++i) {
        if (vq[i] <= 0.0) continue;
        double X = std::log(ts[i]), Y = std::log(vq[i]) / q;
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++m;
    }
    if (m >= 2) {
        double det = m * sxx - sx * sx;
        h.beta = (m * sxy - sx * sy) / det;
        h.logc = (sy * sxx - sx * sxy) / det;
    }
    // quadratic intercept model of y = V^q/t^q on [2dx, 16dx]
    double lo = 2.0 * dx * (1 - 1e-9), hi = 16.0 * dx * (1 + 1e-9);
    double a[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double b[3] = {0, 0, 0};
    int cnt = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double t = ts[i];
        if (t < lo || t > hi) continue;
        double y = vq[i] / std::pow(t, q);
        double basis[3] = {1.0, t, t * t};
        for (int r = 0; r < 3; ++r) {
            for (int c2 = 0; c2 < 3; ++c2) a[r][c2] += basis[r] * basis[c2];
            b[r] += basis[r] * y;
        }
        ++cnt;
    }
    if (cnt >= 4) {
        // solve the 3x3 normal equations by Gaussian elimination
        double M[3][4];
        for (int r = 0; r < 3; ++r) {
            for (int c2 = 0; c2 < 3; ++c2) M[r][c2] = a[r][c2];
            M[r][3] = b[r];
        }
        bool ok = true;
        for (int col = 0; col < 3 && ok; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
            if (std::fabs(M[piv][col]) < 1e-300) {
                ok = false;
                break;
            }
            std::swap(M[piv], M[col]);
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                double fct = M[r][col] / M[col][col];
                for (int c2 = col; c2 < 4; ++c2) M[r][c2] -= fct * M[col][c2];
            }
        }
        if (ok) {
            for (int r = 0; r < 3; ++r) h.c[r] = M[r][3] / M[r][r];
            h.intercept_ok = h.c[0] > 0.0;
        }
    }
    return h;
}

}  // namespace

NormResult integrate_radial_q(const std::function<double(double)>& V, double s, double q,
                              const RadialQuadrature& quad, double dx, double default_t_max,
                              const TailModel& tail) {
    NormResult out;
    double t_min = quad.t_min > 0 ? quad.t_min : dx;
    double t_max = quad.t_max > 0 ? quad.t_max : default_t_max;
    if (tail.kind != TailModel::Kind::truncate) t_max = std::max(t_max, tail.onset * 1.05);
    if (!(t_max > t_min)) t_max = t_min * 10.0;
    int n_nodes =
        std::max(4, (int)std::ceil(std::log10(t_max / t_min) * quad.nodes_per_decade) + 1);
    std::vector<double> ts(n_nodes), vq(n_nodes);
    double du = std::log(t_max / t_min) / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) ts[i] = t_min * std::exp(du * i);
    parallel_for(n_nodes, [&](std::size_t i) {
        double v = V(ts[i]);
        vq[i] = std::pow(v, q);
    });

    bool all_zero = true;
    for (double v : vq) all_zero = all_zero && v == 0.0;
    if (all_zero) return out;

    // trapezoid in log t of t^{-sq} V^q
    double core = 0.0;
    for (int i = 0; i + 1 < n_nodes; ++i) {
        double g0 = std::pow(ts[i], -s * q) * vq[i];
        double g1 = std::pow(ts[i + 1], -s * q) * vq[i + 1];
        core += 0.5 * (g0 + g1) * du;
    }

    // head on (0, t_min]
    HeadFit hf = fit_head(ts, vq, q, dx);
    out.head_exponent = hf.beta;
    double head = 0.0;
    RadialQuadrature::Head mode = quad.head;
    if (mode == RadialQuadrature::Head::auto_model)
        mode = (std::fabs(hf.beta - 1.0) <= 0.25 && hf.intercept_ok)
                   ? RadialQuadrature::Head::intercept
                   : RadialQuadrature::Head::power_law;
    if (mode == RadialQuadrature::Head::intercept && !hf.intercept_ok)
        mode = RadialQuadrature::Head::power_law;
    if (mode == RadialQuadrature::Head::intercept) {
        double e = (1.0 - s) * q;
        for (int k = 0; k < 3; ++k) head += hf.c[k] * std::pow(t_min, e + k) / (e + k);
    } else if (mode == RadialQuadrature::Head::power_law) {
        if (hf.beta <= s) {
            out.diverged = true;
            out.resolution_limited = true;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        if (hf.beta <= s + 0.1) out.resolution_limited = true;
        head = std::exp(q * hf.logc) * std::pow(t_min, (hf.beta - s) * q) / ((hf.beta - s) * q);
    }

    // tail on [t_max, infinity)
    double tl = 0.0;
    if (quad.tail == RadialQuadrature::Tail::analytic_tail &&
        tail.kind != TailModel::Kind::truncate) {
        double T = ts.back();
        if (tail.kind == TailModel::Kind::const_plateau) {
            tl = tail.vinf_q * std::pow(T, -s * q) / (s * q);
        } else {
            if (std::fabs(q - tail.p) < 1e-12) {
                tl = tail.vinf_p_pow * std::pow(T, -s * q) / (s * q) -
                     tail.A * std::pow(T, -s * q - tail.n) / (s * q + tail.n);
            } else {
                // model is smooth and cheap: integrate it on a fine log grid
                int M = 400;
                double Tend = T * 1e5;
                double dv = std::log(Tend / T) / M;
                double prev = std::pow(T, -s * q) *
                              std::pow(std::max(0.0, tail.vinf_p_pow - tail.A / std::pow(T, tail.n)),
                                       q / tail.p);
                for (int i = 1; i <= M; ++i) {
                    double t = T * std::exp(dv * i);
                    double vqv = std::pow(
                        std::max(0.0, tail.vinf_p_pow - tail.A / std::pow(t, tail.n)),
                        q / tail.p);
                    double cur = std::pow(t, -s * q) * vqv;
                    tl += 0.5 * (prev + cur) * dv;
                    prev = cur;
                }
                tl += tail.vinf_q * std::pow(Tend, -s * q) / (s * q);
            }
        }
    }

    out.value = std::pow(core + head + tl, 1.0 / q);
    return out;
}

namespace {

// sup over t of t^{-s} V(t) with the same node layout
NormResult sup_radial(const std::function<double(double)>& V, double s,
                      const RadialQuadrature& quad, double dx, double default_t_max,
                      const TailModel& tail) {
    NormResult out;
    double t_min = quad.t_min > 0 ? quad.t_min : dx;
    double t_max = quad.t_max > 0 ? quad.t_max : default_t_max;
    if (tail.kind != TailModel::Kind::truncate) t_max = std::max(t_max, tail.onset * 1.05);
    int n_nodes = std::max(4, (int)std::ceil(std::log10(t_max / t_min) * quad.nodes_per_decade) + 1);
    double du = std::log(t_max / t_min) / (n_nodes - 1);
    std::vector<double> ts(n_nodes), vs(n_nodes);
    for (int i = 0; i < n_nodes; ++i) ts[i] = t_min * std::exp(du * i);
    parallel_for(n_nodes, [&](std::size_t i) { vs[i] = V(ts[i]); });
    double sup = 0.0;
    std::vector<double> vq(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        sup = std::max(sup, std::pow(ts[i], -s) * vs[i]);
        vq[i] = vs[i];
    }
    HeadFit hf = fit_head(ts, vq, 1.0, dx);
    out.head_exponent = hf.beta;
    if (hf.beta <= s) {
        // sup attained below resolution; flag rather than extrapolate
        out.resolution_limited = true;
        if (hf.beta < s - 0.05) out.diverged = true;
    }
    out.value = sup;
    return out;
}

double directional_width(const FunctionField& f, const Vec& xi) {
    Box sb = support_bbox(f);
    double w = 0.0;
    int dim = f.dim();
    int corners = 1 << dim;
    for (int a = 0; a < corners; ++a)
        for (int b = 0; b < corners; ++b) {
            Vec d;
            for (int c = 0; c < dim; ++c)
                d[c] = ((a >> c) & 1 ? sb.hi[c] : sb.lo[c]) - ((b >> c) & 1 ? sb.hi[c] : sb.lo[c]);
            w = std::max(w, d.dot(xi));
        }
    return w;
}

double gauge_support_diameter(const FunctionField& f, const StarBody& K) {
    Box sb = support_bbox(f);
    double D = 0.0;
    int dim = f.dim();
    int corners = 1 << dim;
    for (int a = 0; a < corners; ++a)
        for (int b = 0; b < corners; ++b) {
            if (a == b) continue;
            Vec d;
            for (int c = 0; c < dim; ++c)
                d[c] = ((a >> c) & 1 ? sb.hi[c] : sb.lo[c]) - ((b >> c) & 1 ? sb.hi[c] : sb.lo[c]);
            D = std::max(D, K.gauge(d));
        }
    return D;
}

}  // namespace

NormResult besov_norm(const FunctionField& f, double s, double p, double q, const StarBody& K,
                      const RadialQuadrature& quad) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("besov_norm: s in (0,1)");
    BallQuadrature bq = BallQuadrature::make(K);
    double lp = lp_norm(f, p);
    if (lp == 0.0) return {};
    TailModel tail;
    tail.kind = TailModel::Kind::ball_plateau;
    tail.onset = gauge_support_diameter(f, K);
    tail.p = p;
    tail.n = f.dim();
    tail.vinf_p_pow = 2.0 * std::pow(lp, p);
    double omD = modulus(f, bq, tail.onset, p);
    tail.A = std::max(0.0, tail.vinf_p_pow - std::pow(omD, p)) * std::pow(tail.onset, f.dim());
    tail.vinf_q = std::pow(tail.vinf_p_pow, q / p);
    auto V = [&](double t) { return modulus(f, bq, t, p); };
    double tmax_default = f.box().diameter(f.dim());
    if (std::isinf(q)) return sup_radial(V, s, quad, f.dx(), tmax_default, tail);
    return integrate_radial_q(V, s, q, quad, f.dx(), tmax_default, tail);
}

NormResult directional_sq_integral(const FunctionField& f, const Vec& xi, double s, double p,
                                   double q, const RadialQuadrature& quad, double upper) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("directional integral: s in (0,1)");
    double lp = lp_norm(f, p);
    NormResult out;
    if (lp == 0.0) return out;
    auto V = [&](double t) { return std::pow(difference_norm_pow(f, xi * t, p), 1.0 / p); };
    if (upper > 0.0) {
        RadialQuadrature qq = quad;
        qq.t_max = upper;
        TailModel none;
        NormResult r = integrate_radial_q(V, s, q, qq, f.dx(), upper, none);
        r.value = std::pow(r.value, q);  // callers get the integral itself
        return r;
    }
    TailModel tail;
    tail.kind = TailModel::Kind::const_plateau;
    // supports of f and f(.+t xi) are disjoint once the shift projection
    // exceeds the support width along xi
    tail.onset = directional_width(f, xi) / xi.dot(xi);
    tail.vinf_q = std::pow(2.0 * std::pow(lp, p), q / p);
    NormResult r = integrate_radial_q(V, s, q, quad, f.dx(), f.box().diameter(f.dim()), tail);
    r.value = std::pow(r.value, q);
    return r;
}

NormResult besov_difference_norm(const FunctionField& f, double s, double p, double q,
                                 const StarBody& K, const RadialQuadrature& quad) {
    const auto& g = K.grid();
    double kvol = volume(K);
    std::vector<NormResult> per_dir(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
        per_dir[i] = directional_sq_integral(f, g.dirs[i], s, p, q, quad, 0.0);
    });
    NormResult out;
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        acc += g.weights[i] * std::pow(K.radial_at(i), s * q + f.dim()) * per_dir[i].value;
        out.diverged = out.diverged || per_dir[i].diverged;
        out.resolution_limited = out.resolution_limited || per_dir[i].resolution_limited;
    }
    out.value = std::pow(acc / kvol, 1.0 / q);
    return out;
}

// ---- gagliardo (all pairs) --------------------------------------------------

namespace {

// directional distance from x to the box boundary
double box_exit_distance(const Box& box, int dim, const Vec& x, const Vec& dir) {
    double r = std::numeric_limits<double>::infinity();
    for (int c = 0; c < dim; ++c) {
        if (dir[c] > 1e-300)
            r = std::min(r, (box.hi[c] - x[c]) / dir[c]);
        else if (dir[c] < -1e-300)
            r = std::min(r, (box.lo[c] - x[c]) / dir[c]);
    }
    return std::max(r, 0.0);
}

double gagliardo_2d(const FunctionField& f, double s, double p, const StarBody& K) {
    const int R = f.resolution();
    const double dx = f.dx(), cv = dx * dx;
    const double expo = s * p + 2.0;
    const int L = 2 * R - 1;
    // pair-weight lattice: V[u*L+v] = ||x-y||_K^{-expo} cv^2 at x-y = (R-1-u, R-1-v) dx
    std::vector<double> V(std::size_t(L) * L);
    parallel_for(L, [&](std::size_t u) {
        for (int v = 0; v < L; ++v) {
            double d0 = (double(R - 1) - double(u)) * dx;
            double d1 = (double(R - 1) - double(v)) * dx;
            if (u == std::size_t(R - 1) && v == R - 1) {
                V[u * L + v] = 0.0;
                continue;
            }
            double gv = K.gauge({d0, d1});
            V[u * L + v] = std::pow(gv, -expo) * cv * cv;
        }
    });
    // summed-area table for O(1) window sums of V
    std::vector<double> sat(std::size_t(L + 1) * (L + 1), 0.0);
    for (int u = 0; u < L; ++u) {
        double rowsum = 0.0;
        for (int v = 0; v < L; ++v) {
            rowsum += V[std::size_t(u) * L + v];
            sat[std::size_t(u + 1) * (L + 1) + (v + 1)] =
                sat[std::size_t(u) * (L + 1) + (v + 1)] + rowsum;
        }
    }
    auto window_sum = [&](int u0, int v0, int u1, int v1) {  // inclusive corners
        return sat[std::size_t(u1 + 1) * (L + 1) + (v1 + 1)] -
               sat[std::size_t(u0) * (L + 1) + (v1 + 1)] -
               sat[std::size_t(u1 + 1) * (L + 1) + v0] + sat[std::size_t(u0) * (L + 1) + v0];
    };

    // support cells and |f|^p row image
    Box sb = support_bbox(f);
    int ilo = std::max(0, int((sb.lo[0] - f.box().lo[0]) / dx) - 1);
    int ihi = std::min(R - 1, int((sb.hi[0] - f.box().lo[0]) / dx) + 1);
    int jlo = std::max(0, int((sb.lo[1] - f.box().lo[1]) / dx) - 1);
    int jhi = std::min(R - 1, int((sb.hi[1] - f.box().lo[1]) / dx) + 1);
    std::vector<double> fpow(std::size_t(R) * R, 0.0);
    for (int i = ilo; i <= ihi; ++i)
        for (int j = jlo; j <= jhi; ++j) {
            double v = f.at(i, j);
            if (v != 0.0) fpow[std::size_t(i) * R + j] = std::pow(std::fabs(v), p);
        }

    // term 1: x in supp, y over the full box
    std::vector<double> row_acc(ihi - ilo + 1, 0.0);
    parallel_for(ihi - ilo + 1, [&](std::size_t ii) {
        int i = ilo + int(ii);
        double acc = 0.0;
        for (int j = jlo; j <= jhi; ++j) {
            double c = f.at(i, j);
            if (c == 0.0) continue;
            for (int k = 0; k < R; ++k) {
                const double* vrow = V.data() + std::size_t(k - i + R - 1) * L + (R - 1 - j);
                acc += kernels::ops().const_diff_pow_weighted(
                    c, f.samples().data() + std::size_t(k) * R, vrow, R, p);
            }
        }
        row_acc[ii] = acc;
    });
    double total = 0.0;
    for (double a : row_acc) total += a;

    // term 2: x outside supp, y in supp:  sum_y |f(y)|^p (U(y) - V_S(y))
    std::vector<double> row_acc2(ihi - ilo + 1, 0.0);
    parallel_for(ihi - ilo + 1, [&](std::size_t kk) {
        int k = ilo + int(kk);
        double acc = 0.0;
        for (int l = jlo; l <= jhi; ++l) {
            double fy = fpow[std::size_t(k) * R + l];
            if (fy == 0.0) continue;
            acc += fy * window_sum(k, l, k + R - 1, l + R - 1);
        }
        row_acc2[kk] = acc;
    });
    for (double a : row_acc2) total += a;
    // subtract the x-in-supp part of U
    std::vector<double> row_acc3(ihi - ilo + 1, 0.0);
    parallel_for(ihi - ilo + 1, [&](std::size_t ii) {
        int i = ilo + int(ii);
        double acc = 0.0;
        for (int j = jlo; j <= jhi; ++j) {
            if (f.at(i, j) == 0.0) continue;
            for (int k = ilo; k <= ihi; ++k) {
                const double* vrow = V.data() + std::size_t(k - i + R - 1) * L + (R - 1 - j + jlo);
                acc += kernels::ops().masked_weight_sum(fpow.data() + std::size_t(k) * R + jlo,
                                                        vrow, jhi - jlo + 1);
            }
        }
        row_acc3[ii] = acc;
    });
    for (double a : row_acc3) total -= a;

    // diagonal cell: polar closed form r^{p - sp - 1} with the local gradient
    GradientField gf = gradient(f);
    const auto& grid = K.grid();
    std::vector<double> mtab(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        double acc = 0.0;
        for (int j2 = 0; j2 < grid.size(); ++j2)
            acc += grid.weights[j2] * std::pow(std::fabs(grid.dirs[i].dot(grid.dirs[j2])), p) *
                   std::pow(K.radial_at(j2), expo);
        mtab[i] = acc;
    }
    StarBody mlook(K.grid_ptr(), mtab, BodyProvenance::analytic);
    double rc = std::sqrt(cv / kPi);
    double diag_scale = std::pow(rc, p * (1.0 - s)) / (p * (1.0 - s));
    double diag = 0.0;
    for (int i = ilo; i <= ihi; ++i)
        for (int j = jlo; j <= jhi; ++j) {
            double gx = gf.comp[0].at(i, j), gy = gf.comp[1].at(i, j);
            double gn = std::hypot(gx, gy);
            if (gn == 0.0) continue;
            diag += std::pow(gn, p) * mlook.radial_interp({gx / gn, gy / gn});
        }
    total += diag * diag_scale * cv;

    // out-of-box tails (y outside the box and x outside the box)
    std::vector<double> rho_pos(grid.size()), rho_neg(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        rho_pos[i] = std::pow(K.radial_at(i), expo);
        rho_neg[i] = std::pow(K.radial_interp(grid.dirs[i] * -1.0), expo);
    }
    double tailsum = 0.0;
    for (int i = ilo; i <= ihi; ++i)
        for (int j = jlo; j <= jhi; ++j) {
            double fy = fpow[std::size_t(i) * R + j];
            if (fy == 0.0) continue;
            Vec x = f.cell_center(i, j);
            double G = 0.0;
            for (int d = 0; d < grid.size(); ++d) {
                double Rb = box_exit_distance(f.box(), 2, x, grid.dirs[d]);
                if (Rb <= 0.0) continue;
                G += grid.weights[d] * (rho_pos[d] + rho_neg[d]) * std::pow(Rb, -s * p);
            }
            tailsum += fy * G;
        }
    total += tailsum * cv / (s * p);

    return std::pow(total, 1.0 / p);
}

double gagliardo_3d(const FunctionField& f, double s, double p, const StarBody& K) {
    // straightforward lattice-weight variant; intended for small resolutions
    const int R = f.resolution();
    const double dx = f.dx(), cv = dx * dx * dx;
    const double expo = s * p + 3.0;
    const int L = 2 * R - 1;
    std::vector<double> V(std::size_t(L) * L * L);
    parallel_for(L, [&](std::size_t u) {
        for (int v = 0; v < L; ++v)
            for (int w = 0; w < L; ++w) {
                if (int(u) == R - 1 && v == R - 1 && w == R - 1) {
                    V[(u * L + v) * L + w] = 0.0;
                    continue;
                }
                Vec d{(double(R - 1) - double(u)) * dx, (double(R - 1) - double(v)) * dx,
                      (double(R - 1) - double(w)) * dx};
                V[(u * L + v) * L + w] = std::pow(K.gauge(d), -expo) * cv * cv;
            }
    });
    std::vector<std::size_t> supp;
    for (std::size_t idx = 0; idx < f.size(); ++idx)
        if (f.samples()[idx] != 0.0) supp.push_back(idx);
    std::vector<double> acc_per(supp.size(), 0.0);
    parallel_for(supp.size(), [&](std::size_t si) {
        std::size_t idx = supp[si];
        int i = int(idx / (std::size_t(R) * R));
        int j = int((idx / R) % R);
        int k = int(idx % R);
        double c = f.samples()[idx];
        double acc = 0.0;
        for (int a = 0; a < R; ++a)
            for (int b = 0; b < R; ++b) {
                const double* vrow =
                    V.data() + ((std::size_t(a - i + R - 1) * L + (b - j + R - 1)) * L) +
                    (R - 1 - k);
                const double* frow = f.samples().data() + (std::size_t(a) * R + b) * R;
                // pairs x in supp vs all y; and the reflected x-outside term for y==x cells
                acc += kernels::ops().const_diff_pow_weighted(c, frow, vrow, R, p);
            }
        acc_per[si] = acc;
    });
    double total = 0.0;
    for (double a : acc_per) total += a;
    // x outside supp, y in supp
    std::vector<double> acc2_per(supp.size(), 0.0);
    parallel_for(supp.size(), [&](std::size_t si) {
        std::size_t idx = supp[si];
        int i = int(idx / (std::size_t(R) * R));
        int j = int((idx / R) % R);
        int k = int(idx % R);
        double fy = std::pow(std::fabs(f.samples()[idx]), p);
        double acc = 0.0;
        for (int a = 0; a < R; ++a)
            for (int b = 0; b < R; ++b) {
                const double* vrow =
                    V.data() + ((std::size_t(a - i + R - 1) * L + (b - j + R - 1)) * L) +
                    (R - 1 - k);
                const double* frow = f.samples().data() + (std::size_t(a) * R + b) * R;
                for (int c2 = 0; c2 < R; ++c2)
                    if (frow[c2] == 0.0) acc += vrow[c2];
            }
        acc2_per[si] = acc * fy;
    });
    for (double a : acc2_per) total += a;

    GradientField gf = gradient(f);
    const auto& grid = K.grid();
    std::vector<double> mtab(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        double acc = 0.0;
        for (int j2 = 0; j2 < grid.size(); ++j2)
            acc += grid.weights[j2] * std::pow(std::fabs(grid.dirs[i].dot(grid.dirs[j2])), p) *
                   std::pow(K.radial_at(j2), expo);
        mtab[i] = acc;
    }
    StarBody mlook(K.grid_ptr(), mtab, BodyProvenance::analytic);
    double rc = std::pow(cv / unit_ball_volume(3), 1.0 / 3.0);
    double diag_scale = std::pow(rc, p * (1.0 - s)) / (p * (1.0 - s));
    double diag = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        double gx = gf.comp[0].samples()[idx], gy = gf.comp[1].samples()[idx],
               gz = gf.comp[2].samples()[idx];
        double gn = std::sqrt(gx * gx + gy * gy + gz * gz);
        if (gn == 0.0) continue;
        diag += std::pow(gn, p) * mlook.radial_interp({gx / gn, gy / gn, gz / gn});
    }
    total += diag * diag_scale * cv;

    double tailsum = 0.0;
    for (std::size_t si = 0; si < supp.size(); ++si) {
        std::size_t idx = supp[si];
        int i = int(idx / (std::size_t(R) * R));
        int j = int((idx / R) % R);
        int k = int(idx % R);
        double fy = std::pow(std::fabs(f.samples()[idx]), p);
        Vec x = f.cell_center(i, j, k);
        double G = 0.0;
        for (int d = 0; d < grid.size(); ++d) {
            double Rb = box_exit_distance(f.box(), 3, x, grid.dirs[d]);
            if (Rb <= 0.0) continue;
            double rp = std::pow(K.radial_at(d), expo);
            double rn = std::pow(K.radial_interp(grid.dirs[d] * -1.0), expo);
            G += grid.weights[d] * (rp + rn) * std::pow(Rb, -s * p);
        }
        tailsum += fy * G;
    }
    total += tailsum * cv / (s * p);
    return std::pow(total, 1.0 / p);
}

}  // namespace

double gagliardo_norm(const FunctionField& f, double s, double p, const StarBody& K) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("gagliardo_norm: s in (0,1)");
    if (K.dim() != f.dim()) throw std::invalid_argument("gagliardo_norm: dim mismatch");
    if (f.dim() == 2) return gagliardo_2d(f, s, p, K);
    return gagliardo_3d(f, s, p, K);
}

// ---- Hardy-Littlewood -------------------------------------------------------

std::vector<double> hardy_littlewood_ratio(const FunctionField& f, const StarBody& K, double p,
                                           const std::vector<double>& t_grid) {
    BallQuadrature bq = BallQuadrature::make(K);
    std::vector<double> out(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        out[i] = modulus(f, bq, t_grid[i], p) / t_grid[i];
    });
    return out;
}

double hl_limit_constant(const FunctionField& f, const StarBody& K, double p) {
    const auto& g = K.grid();
    int n = K.dim();
    std::vector<double> radial(g.size());
    for (int i = 0; i < g.size(); ++i) {
        double mg = moment_body_gauge(K, p, g.dirs[i]);
        radial[i] = 1.0 / mg;
    }
    StarBody Z(K.grid_ptr(), std::move(radial), BodyProvenance::analytic);
    GradientField gf = gradient(f);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        Vec v;
        for (int c = 0; c < f.dim(); ++c) v[c] = gf.comp[c].samples()[idx];
        double gn = v.norm();
        if (gn == 0.0) continue;
        acc += std::pow(Z.gauge(v), p);
    }
    acc *= f.cell_volume();
    return std::pow(2.0 / ((n + p) * volume(K)) * acc, 1.0 / p);
}

}  // namespace bpp
