#include "bpp/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bpp/kernels.hpp"

namespace bpp {

// ---- generators ----------------------------------------------------------

AnalyticGenerator AnalyticGenerator::bump(Vec c, double r, double a) {
    return {GeneratorKind::gaussian_bump, {c}, {r}, {a}};
}
AnalyticGenerator AnalyticGenerator::tent(Vec c, double halfwidth, double a) {
    return {GeneratorKind::tent, {c}, {halfwidth}, {a}};
}
AnalyticGenerator AnalyticGenerator::disk(Vec c, double r, double a) {
    return {GeneratorKind::disk_indicator, {c}, {r}, {a}};
}
AnalyticGenerator AnalyticGenerator::square(Vec c, double halfside, double a) {
    return {GeneratorKind::square_indicator, {c}, {halfside}, {a}};
}
AnalyticGenerator AnalyticGenerator::sum_of_bumps(std::vector<Vec> c, std::vector<double> r,
                                                  std::vector<double> a) {
    return {GeneratorKind::bump_sum, std::move(c), std::move(r), std::move(a)};
}

namespace {
double mollifier(double u2) {
    // exp(1 - 1/(1-u2)) on u2 < 1, exactly 0 beyond
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}
}  // namespace

double AnalyticGenerator::value(const Vec& x, int dim) const {
    double acc = 0.0;
    for (std::size_t b = 0; b < centers.size(); ++b) {
        Vec d = x - centers[b];
        double r = radii[b], a = amplitudes[b];
        switch (kind) {
            case GeneratorKind::gaussian_bump:
            case GeneratorKind::bump_sum: {
                double u2 = d.dot(d) / (r * r);
                acc += a * mollifier(u2);
                break;
            }
            case GeneratorKind::tent: {
                double v = a;
                for (int i = 0; i < dim; ++i) v *= std::max(0.0, 1.0 - std::fabs(d[i]) / r);
                acc += v;
                break;
            }
            case GeneratorKind::disk_indicator:
                if (d.dot(d) < r * r) acc += a;
                break;
            case GeneratorKind::square_indicator: {
                bool in = true;
                for (int i = 0; i < dim; ++i) in = in && std::fabs(d[i]) < r;
                if (in) acc += a;
                break;
            }
        }
    }
    return acc;
}

Vec AnalyticGenerator::grad(const Vec& x, int dim) const {
    Vec g;
    for (std::size_t b = 0; b < centers.size(); ++b) {
        Vec d = x - centers[b];
        double r = radii[b], a = amplitudes[b];
        if (kind == GeneratorKind::gaussian_bump || kind == GeneratorKind::bump_sum) {
            double u2 = d.dot(d) / (r * r);
            if (u2 < 1.0) {
                double m = mollifier(u2);
                double denom = (1.0 - u2) * (1.0 - u2);
                // d/du2 exp(1-1/(1-u2)) = -m / (1-u2)^2
                double c = -a * m / denom * 2.0 / (r * r);
                for (int i = 0; i < dim; ++i) g[i] += c * d[i];
            }
        } else if (kind == GeneratorKind::tent) {
            for (int i = 0; i < dim; ++i) {
                double v = a;
                for (int j = 0; j < dim; ++j) {
                    double t = 1.0 - std::fabs(d[j]) / r;
                    if (t <= 0.0) {
                        v = 0.0;
                        break;
                    }
                    v *= (j == i) ? (d[j] > 0 ? -1.0 / r : 1.0 / r) : t;
                }
                g[i] += v;
            }
        }
        // indicators: gradient not defined; returns 0
    }
    return g;
}

Box AnalyticGenerator::support_bbox(int dim) const {
    Box b;
    for (int i = 0; i < dim; ++i) {
        b.lo[i] = std::numeric_limits<double>::infinity();
        b.hi[i] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t k = 0; k < centers.size(); ++k)
        for (int i = 0; i < dim; ++i) {
            b.lo[i] = std::min(b.lo[i], centers[k][i] - radii[k]);
            b.hi[i] = std::max(b.hi[i], centers[k][i] + radii[k]);
        }
    return b;
}

// ---- FunctionField -------------------------------------------------------

FunctionField::FunctionField(int dim, const Box& box, int resolution,
                             std::vector<double> samples)
    : dim_(dim), box_(box), res_(resolution), samples_(std::move(samples)) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("FunctionField: dim must be 2 or 3");
    if (resolution < 16) throw std::invalid_argument("FunctionField: resolution >= 16");
    double side = box.side(0);
    for (int i = 1; i < dim; ++i)
        if (std::fabs(box.side(i) - side) > 1e-12 * side)
            throw std::invalid_argument("FunctionField: box must be a cube");
    dx_ = side / resolution;
    std::size_t expect = 1;
    for (int i = 0; i < dim; ++i) expect *= resolution;
    if (samples_.size() != expect) throw std::invalid_argument("FunctionField: bad sample count");
    for (double v : samples_)
        if (!std::isfinite(v)) throw std::invalid_argument("FunctionField: non-finite sample");
}

FunctionField FunctionField::from_generator(const AnalyticGenerator& g, const Box& box,
                                            int resolution) {
    int dim = box.side(2) > 0.0 ? 3 : 2;
    double dx = box.side(0) / resolution;
    Box sb = g.support_bbox(dim);
    for (int i = 0; i < dim; ++i)
        if (sb.lo[i] < box.lo[i] + 2.0 * dx || sb.hi[i] > box.hi[i] - 2.0 * dx)
            throw SupportOverflow("generator support violates the 2-cell box margin");
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= resolution;
    std::vector<double> s(total);
    if (dim == 2) {
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) {
                Vec p{box.lo[0] + (i + 0.5) * dx, box.lo[1] + (j + 0.5) * dx};
                s[std::size_t(i) * resolution + j] = g.value(p, 2);
            }
    } else {
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j)
                for (int k = 0; k < resolution; ++k) {
                    Vec p{box.lo[0] + (i + 0.5) * dx, box.lo[1] + (j + 0.5) * dx,
                          box.lo[2] + (k + 0.5) * dx};
                    s[(std::size_t(i) * resolution + j) * resolution + k] = g.value(p, 3);
                }
    }
    return FunctionField(dim, box, resolution, std::move(s));
}

double FunctionField::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim_; ++i) v *= dx_;
    return v;
}

Vec FunctionField::cell_center(int i, int j, int k) const {
    Vec p;
    p[0] = box_.lo[0] + (i + 0.5) * dx_;
    p[1] = box_.lo[1] + (j + 0.5) * dx_;
    if (dim_ == 3) p[2] = box_.lo[2] + (k + 0.5) * dx_;
    return p;
}

double FunctionField::value(const Vec& p) const {
    double u[3] = {0, 0, 0}, fr[3] = {0, 0, 0};
    int base[3] = {0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
        u[i] = (p[i] - box_.lo[i]) / dx_ - 0.5;
        double fl = std::floor(u[i]);
        base[i] = static_cast<int>(fl);
        fr[i] = u[i] - fl;
    }
    auto sample = [&](int i, int j, int k) -> double {
        if (i < 0 || i >= res_ || j < 0 || j >= res_) return 0.0;
        if (dim_ == 3 && (k < 0 || k >= res_)) return 0.0;
        return dim_ == 2 ? at(i, j) : at(i, j, k);
    };
    if (dim_ == 2) {
        double v00 = sample(base[0], base[1], 0), v01 = sample(base[0], base[1] + 1, 0);
        double v10 = sample(base[0] + 1, base[1], 0), v11 = sample(base[0] + 1, base[1] + 1, 0);
        return (1 - fr[0]) * ((1 - fr[1]) * v00 + fr[1] * v01) +
               fr[0] * ((1 - fr[1]) * v10 + fr[1] * v11);
    }
    double acc = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                double w = (a ? fr[0] : 1 - fr[0]) * (b ? fr[1] : 1 - fr[1]) *
                           (c ? fr[2] : 1 - fr[2]);
                acc += w * sample(base[0] + a, base[1] + b, base[2] + c);
            }
    return acc;
}

FunctionField FunctionField::scaled(double c) const {
    std::vector<double> s = samples_;
    for (double& v : s) v *= c;
    return FunctionField(dim_, box_, res_, std::move(s));
}

// ---- operations ----------------------------------------------------------

double lp_norm(const FunctionField& f, double p) {
    const auto& s = f.samples();
    if (std::isinf(p)) return kernels::ops().max_abs(s.data(), s.size());
    double acc = kernels::ops().sum_abs_pow(s.data(), s.size(), p);
    return std::pow(acc * f.cell_volume(), 1.0 / p);
}

namespace {

struct ShiftDecomp {
    int g[3];
    double fr[3];
    int lo[3], hi[3];  // union output window per axis
};

ShiftDecomp decompose_shift(const FunctionField& f, const Vec& h) {
    ShiftDecomp d{};
    int R = f.resolution();
    for (int i = 0; i < f.dim(); ++i) {
        double u = h[i] / f.dx();
        double fl = std::floor(u);
        d.g[i] = static_cast<int>(fl);
        d.fr[i] = u - fl;
        d.lo[i] = std::min(0, -d.g[i] - 1);
        d.hi[i] = std::max(R, R - d.g[i]);
    }
    return d;
}

// copy row `r` of f (or zeros) into buf, columns [c0, c0+len)
void fill_row_2d(const FunctionField& f, int r, int c0, double* buf, int len) {
    int R = f.resolution();
    std::fill(buf, buf + len, 0.0);
    if (r < 0 || r >= R) return;
    int a = std::max(0, c0), b = std::min(R, c0 + len);
    if (a >= b) return;
    const double* src = f.samples().data() + std::size_t(r) * R + a;
    std::copy(src, src + (b - a), buf + (a - c0));
}

void fill_row_3d(const FunctionField& f, int r, int c, int z0, double* buf, int len) {
    int R = f.resolution();
    std::fill(buf, buf + len, 0.0);
    if (r < 0 || r >= R || c < 0 || c >= R) return;
    int a = std::max(0, z0), b = std::min(R, z0 + len);
    if (a >= b) return;
    const double* src = f.samples().data() + (std::size_t(r) * R + c) * R + a;
    std::copy(src, src + (b - a), buf + (a - z0));
}

thread_local std::vector<double> tl_bufA, tl_bufB, tl_bufD, tl_bufE, tl_bufC;

}  // namespace

double difference_norm_pow(const FunctionField& f, const Vec& h, double p) {
    ShiftDecomp d = decompose_shift(f, h);
    const double eps = 1e-12;
    // snap near-lattice shifts so lattice shifts stay exact
    for (int i = 0; i < f.dim(); ++i) {
        if (d.fr[i] < eps) d.fr[i] = 0.0;
        if (d.fr[i] > 1.0 - eps) {
            d.fr[i] = 0.0;
            d.g[i] += 1;
            int R = f.resolution();
            d.lo[i] = std::min(0, -d.g[i] - 1);
            d.hi[i] = std::max(R, R - d.g[i]);
        }
    }
    double acc = 0.0;
    if (f.dim() == 2) {
        int nj = d.hi[1] - d.lo[1];
        tl_bufA.resize(nj + 1);
        tl_bufB.resize(nj + 1);
        tl_bufC.resize(nj);
        double w00 = (1 - d.fr[0]) * (1 - d.fr[1]), w01 = (1 - d.fr[0]) * d.fr[1];
        double w10 = d.fr[0] * (1 - d.fr[1]), w11 = d.fr[0] * d.fr[1];
        for (int i = d.lo[0]; i < d.hi[0]; ++i) {
            fill_row_2d(f, i + d.g[0], d.lo[1] + d.g[1], tl_bufA.data(), nj + 1);
            fill_row_2d(f, i + d.g[0] + 1, d.lo[1] + d.g[1], tl_bufB.data(), nj + 1);
            fill_row_2d(f, i, d.lo[1], tl_bufC.data(), nj);
            acc += kernels::ops().stencil4_diff_pow(tl_bufA.data(), tl_bufB.data(),
                                                    tl_bufC.data(), w00, w01, w10, w11, nj, p);
        }
    } else {
        int nk = d.hi[2] - d.lo[2];
        tl_bufA.resize(nk + 1);
        tl_bufB.resize(nk + 1);
        tl_bufD.resize(nk + 1);
        tl_bufE.resize(nk + 1);
        tl_bufC.resize(nk);
        double w[8];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    w[a * 4 + b * 2 + c] = (a ? d.fr[0] : 1 - d.fr[0]) *
                                           (b ? d.fr[1] : 1 - d.fr[1]) *
                                           (c ? d.fr[2] : 1 - d.fr[2]);
        for (int i = d.lo[0]; i < d.hi[0]; ++i)
            for (int j = d.lo[1]; j < d.hi[1]; ++j) {
                fill_row_3d(f, i + d.g[0], j + d.g[1], d.lo[2] + d.g[2], tl_bufA.data(), nk + 1);
                fill_row_3d(f, i + d.g[0], j + d.g[1] + 1, d.lo[2] + d.g[2], tl_bufB.data(),
                            nk + 1);
                fill_row_3d(f, i + d.g[0] + 1, j + d.g[1], d.lo[2] + d.g[2], tl_bufD.data(),
                            nk + 1);
                fill_row_3d(f, i + d.g[0] + 1, j + d.g[1] + 1, d.lo[2] + d.g[2], tl_bufE.data(),
                            nk + 1);
                fill_row_3d(f, i, j, d.lo[2], tl_bufC.data(), nk);
                acc += kernels::ops().stencil8_diff_pow(tl_bufA.data(), tl_bufB.data(),
                                                        tl_bufD.data(), tl_bufE.data(),
                                                        tl_bufC.data(), w, nk, p);
            }
    }
    return acc * f.cell_volume();
}

namespace {
double difference_sup(const FunctionField& f, const Vec& h) {
    // sup of |f(x+h)-f(x)| over the union window; scalar path (rarely hot)
    ShiftDecomp d = decompose_shift(f, h);
    double m = 0.0;
    if (f.dim() == 2) {
        for (int i = d.lo[0]; i < d.hi[0]; ++i)
            for (int j = d.lo[1]; j < d.hi[1]; ++j) {
                Vec x = f.cell_center(i, j);
                double v = f.value(x + h) - ((i >= 0 && i < f.resolution() && j >= 0 &&
                                              j < f.resolution())
                                                 ? f.at(i, j)
                                                 : 0.0);
                m = std::max(m, std::fabs(v));
            }
    } else {
        for (int i = d.lo[0]; i < d.hi[0]; ++i)
            for (int j = d.lo[1]; j < d.hi[1]; ++j)
                for (int k = d.lo[2]; k < d.hi[2]; ++k) {
                    Vec x = f.cell_center(i, j, k);
                    bool in = i >= 0 && i < f.resolution() && j >= 0 && j < f.resolution() &&
                              k >= 0 && k < f.resolution();
                    double v = f.value(x + h) - (in ? f.at(i, j, k) : 0.0);
                    m = std::max(m, std::fabs(v));
                }
    }
    return m;
}
}  // namespace

double difference_norm(const FunctionField& f, const Vec& h, double p) {
    if (std::isinf(p)) return difference_sup(f, h);
    return std::pow(difference_norm_pow(f, h, p), 1.0 / p);
}

GradientField gradient(const FunctionField& f) {
    int R = f.resolution();
    double inv2 = 1.0 / (2.0 * f.dx()), inv1 = 1.0 / f.dx();
    GradientField g;
    std::size_t total = f.size();
    for (int c = 0; c < f.dim(); ++c) {
        std::vector<double> comp(total, 0.0);
        auto idx2 = [&](int i, int j) { return std::size_t(i) * R + j; };
        auto idx3 = [&](int i, int j, int k) { return (std::size_t(i) * R + j) * R + k; };
        if (f.dim() == 2) {
            for (int i = 0; i < R; ++i)
                for (int j = 0; j < R; ++j) {
                    int v = c == 0 ? i : j;
                    double d;
                    if (v == 0)
                        d = (c == 0 ? f.at(i + 1, j) - f.at(i, j) : f.at(i, j + 1) - f.at(i, j)) *
                            inv1;
                    else if (v == R - 1)
                        d = (c == 0 ? f.at(i, j) - f.at(i - 1, j) : f.at(i, j) - f.at(i, j - 1)) *
                            inv1;
                    else
                        d = (c == 0 ? f.at(i + 1, j) - f.at(i - 1, j)
                                    : f.at(i, j + 1) - f.at(i, j - 1)) *
                            inv2;
                    comp[idx2(i, j)] = d;
                }
        } else {
            for (int i = 0; i < R; ++i)
                for (int j = 0; j < R; ++j)
                    for (int k = 0; k < R; ++k) {
                        int v = c == 0 ? i : (c == 1 ? j : k);
                        auto S = [&](int di, int dj, int dk) {
                            return f.at(i + di, j + dj, k + dk);
                        };
                        int di = c == 0, dj = c == 1, dk = c == 2;
                        double d;
                        if (v == 0)
                            d = (S(di, dj, dk) - S(0, 0, 0)) * inv1;
                        else if (v == R - 1)
                            d = (S(0, 0, 0) - S(-di, -dj, -dk)) * inv1;
                        else
                            d = (S(di, dj, dk) - S(-di, -dj, -dk)) * inv2;
                        comp[idx3(i, j, k)] = d;
                    }
        }
        g.comp.emplace_back(f.dim(), f.box(), R, std::move(comp));
    }
    return g;
}

FunctionField GradientField::magnitude() const {
    const FunctionField& g0 = comp.at(0);
    std::vector<double> m(g0.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        double s = 0.0;
        for (const auto& c : comp) s += c.samples()[i] * c.samples()[i];
        m[i] = std::sqrt(s);
    }
    return FunctionField(g0.dim(), g0.box(), g0.resolution(), std::move(m));
}

double directional_derivative_norm(const GradientField& g, const Vec& xi, double p) {
    const auto& c0 = g.comp.at(0).samples();
    std::vector<double> proj(c0.size());
    for (std::size_t i = 0; i < proj.size(); ++i) {
        double s = 0.0;
        for (int c = 0; c < g.dim(); ++c) s += xi[c] * g.comp[c].samples()[i];
        proj[i] = s;
    }
    if (std::isinf(p)) return kernels::ops().max_abs(proj.data(), proj.size());
    double acc = kernels::ops().sum_abs_pow(proj.data(), proj.size(), p);
    return std::pow(acc * g.comp[0].cell_volume(), 1.0 / p);
}

double directional_derivative_norm(const FunctionField& f, const Vec& xi, double p) {
    return directional_derivative_norm(gradient(f), xi, p);
}

double support_measure(const FunctionField& f, double threshold) {
    std::size_t count = 0;
    for (double v : f.samples())
        if (std::fabs(v) > threshold) ++count;
    return static_cast<double>(count) * f.cell_volume();
}

Box support_bbox(const FunctionField& f) {
    int R = f.resolution();
    int lo[3] = {R, R, R}, hi[3] = {-1, -1, -1};
    auto update = [&](int i, int j, int k) {
        lo[0] = std::min(lo[0], i);
        hi[0] = std::max(hi[0], i);
        lo[1] = std::min(lo[1], j);
        hi[1] = std::max(hi[1], j);
        lo[2] = std::min(lo[2], k);
        hi[2] = std::max(hi[2], k);
    };
    if (f.dim() == 2) {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j)
                if (f.at(i, j) != 0.0) update(i, j, 0);
    } else {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j)
                for (int k = 0; k < R; ++k)
                    if (f.at(i, j, k) != 0.0) update(i, j, k);
    }
    if (hi[0] < 0) throw std::invalid_argument("support_bbox: zero field");
    Box b;
    for (int c = 0; c < f.dim(); ++c) {
        b.lo[c] = f.box().lo[c] + lo[c] * f.dx();
        b.hi[c] = f.box().lo[c] + (hi[c] + 1) * f.dx();
    }
    return b;
}

void support_ball(const FunctionField& f, Vec& center, double& radius) {
    Box b = support_bbox(f);
    double r2 = 0.0;
    for (int c = 0; c < f.dim(); ++c) {
        center[c] = 0.5 * (b.lo[c] + b.hi[c]);
        r2 += 0.25 * b.side(c) * b.side(c);
    }
    radius = std::sqrt(r2);
}

FunctionField pullback(const FunctionField& f, const Mat& phi) {
    if (phi.det() == 0.0) throw std::invalid_argument("pullback: singular matrix");
    int R = f.resolution();
    std::vector<double> s(f.size());
    if (f.dim() == 2) {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j)
                s[std::size_t(i) * R + j] = f.value(phi.apply(f.cell_center(i, j)));
    } else {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j)
                for (int k = 0; k < R; ++k)
                    s[(std::size_t(i) * R + j) * R + k] =
                        f.value(phi.apply(f.cell_center(i, j, k)));
    }
    FunctionField out(f.dim(), f.box(), R, std::move(s));
    // transformed support must keep the margin
    Box sb = support_bbox(out);
    for (int c = 0; c < f.dim(); ++c)
        if (sb.lo[c] < f.box().lo[c] + 1.5 * f.dx() || sb.hi[c] > f.box().hi[c] - 1.5 * f.dx())
            throw SupportOverflow("pullback: transformed support violates the box margin");
    return out;
}

double mt_functional(const FunctionField& f, double denom, double exponent) {
    if (denom <= 0.0) throw std::invalid_argument("mt_functional: denom > 0");
    if (exponent <= 1.0) throw std::invalid_argument("mt_functional: exponent > 1");
    double supp = support_measure(f);
    if (supp <= 0.0) throw std::invalid_argument("mt_functional: zero support");
    double acc = 0.0;
    for (double v : f.samples()) {
        if (v == 0.0) continue;
        double a = std::pow(std::fabs(v) / denom, exponent);
        if (a > 700.0) return std::numeric_limits<double>::infinity();
        acc += std::expm1(a);
    }
    return acc * f.cell_volume() / supp;
}

}  // namespace bpp
