#include "bpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bpp {

StarBody::StarBody(std::shared_ptr<const DirectionGrid> grid, std::vector<double> radial,
                   BodyProvenance provenance)
    : grid_(std::move(grid)), radial_(std::move(radial)), provenance_(provenance) {
    if (!grid_) throw std::invalid_argument("StarBody: null grid");
    if (radial_.size() != grid_->dirs.size())
        throw std::invalid_argument("StarBody: radial size mismatch");
    for (double r : radial_)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("StarBody: radial function must be positive and finite");
    if (dim() == 3) build_raster();
}

StarBody StarBody::ball(std::shared_ptr<const DirectionGrid> grid, double radius) {
    std::vector<double> r(grid->dirs.size(), radius);
    return StarBody(std::move(grid), std::move(r), BodyProvenance::analytic);
}

StarBody StarBody::ellipsoid(std::shared_ptr<const DirectionGrid> grid, const Vec& semiaxes) {
    std::vector<double> r(grid->dirs.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Vec& d = grid->dirs[i];
        double s = 0.0;
        for (int c = 0; c < grid->dim; ++c) s += (d[c] / semiaxes[c]) * (d[c] / semiaxes[c]);
        r[i] = 1.0 / std::sqrt(s);
    }
    return StarBody(std::move(grid), std::move(r), BodyProvenance::analytic);
}

StarBody StarBody::lq_ball(std::shared_ptr<const DirectionGrid> grid, double q, double radius) {
    std::vector<double> r(grid->dirs.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Vec& d = grid->dirs[i];
        double s = 0.0;
        for (int c = 0; c < grid->dim; ++c) s += std::pow(std::fabs(d[c]), q);
        r[i] = radius / std::pow(s, 1.0 / q);
    }
    return StarBody(std::move(grid), std::move(r), BodyProvenance::analytic);
}

void StarBody::build_raster() {
    raster_nt_ = 96;   // polar angle
    raster_np_ = 192;  // azimuth
    raster_.assign(std::size_t(raster_nt_) * raster_np_, 0.0);
    const auto& dirs = grid_->dirs;
    for (int a = 0; a < raster_nt_; ++a) {
        double th = (a + 0.5) * kPi / raster_nt_;
        for (int b = 0; b < raster_np_; ++b) {
            double ph = (b + 0.5) * 2.0 * kPi / raster_np_;
            Vec u{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
            // nearest three nodes, inverse-distance blend
            int best[3] = {-1, -1, -1};
            double bd[3] = {1e300, 1e300, 1e300};
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                Vec d = dirs[i] - u;
                double dist = d.dot(d);
                if (dist < bd[0]) {
                    bd[2] = bd[1]; best[2] = best[1];
                    bd[1] = bd[0]; best[1] = best[0];
                    bd[0] = dist; best[0] = static_cast<int>(i);
                } else if (dist < bd[1]) {
                    bd[2] = bd[1]; best[2] = best[1];
                    bd[1] = dist; best[1] = static_cast<int>(i);
                } else if (dist < bd[2]) {
                    bd[2] = dist; best[2] = static_cast<int>(i);
                }
            }
            double wsum = 0.0, acc = 0.0;
            for (int k = 0; k < 3; ++k) {
                double w = 1.0 / (std::sqrt(bd[k]) + 1e-12);
                wsum += w;
                acc += w * radial_[best[k]];
            }
            raster_[std::size_t(a) * raster_np_ + b] = acc / wsum;
        }
    }
}

double StarBody::radial_interp(const Vec& dir) const {
    double n2 = dir.dot(dir);
    if (n2 == 0.0) throw std::invalid_argument("radial_interp: zero direction");
    if (dim() == 2) {
        double a = std::atan2(dir[1], dir[0]);
        if (a < 0) a += 2.0 * kPi;
        int N = grid_->size();
        double u = a * N / (2.0 * kPi) - 0.5;
        double fl = std::floor(u);
        int i0 = static_cast<int>(fl);
        double fr = u - fl;
        int a0 = ((i0 % N) + N) % N;
        int a1 = (a0 + 1) % N;
        return (1.0 - fr) * radial_[a0] + fr * radial_[a1];
    }
    double inv = 1.0 / std::sqrt(n2);
    double z = dir[2] * inv;
    z = std::clamp(z, -1.0, 1.0);
    double th = std::acos(z);
    double ph = std::atan2(dir[1], dir[0]);
    if (ph < 0) ph += 2.0 * kPi;
    double ua = th * raster_nt_ / kPi - 0.5;
    double ub = ph * raster_np_ / (2.0 * kPi) - 0.5;
    double fa = std::floor(ua), fb = std::floor(ub);
    int a0 = static_cast<int>(fa), b0 = static_cast<int>(fb);
    double ra = ua - fa, rb = ub - fb;
    auto look = [&](int a, int b) {
        a = std::clamp(a, 0, raster_nt_ - 1);  // clamp at poles
        b = ((b % raster_np_) + raster_np_) % raster_np_;
        return raster_[std::size_t(a) * raster_np_ + b];
    };
    return (1 - ra) * ((1 - rb) * look(a0, b0) + rb * look(a0, b0 + 1)) +
           ra * ((1 - rb) * look(a0 + 1, b0) + rb * look(a0 + 1, b0 + 1));
}

double StarBody::gauge(const Vec& x) const {
    double n = x.norm();
    if (n == 0.0) return 0.0;
    return n / radial_interp(x);
}

std::shared_ptr<const DirectionGrid> default_direction_grid(int dim, int count) {
    if (count == 0) count = dim == 2 ? 512 : 2048;
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const DirectionGrid>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, count);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<DirectionGrid>(DirectionGrid::make(dim, count));
    cache[key] = g;
    return g;
}

double volume(const StarBody& K) {
    int n = K.dim();
    const auto& g = K.grid();
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i) acc += g.weights[i] * std::pow(K.radial_at(i), n);
    return acc / n;
}

double dual_mixed_volume(const StarBody& K, const StarBody& L, double alpha) {
    if (K.grid_ptr() != L.grid_ptr() && K.grid().size() != L.grid().size())
        throw std::invalid_argument("dual_mixed_volume: direction grids do not match");
    int n = K.dim();
    if (alpha == 0.0 || alpha == double(n))
        throw std::invalid_argument("dual_mixed_volume: alpha must avoid {0, n}");
    const auto& g = K.grid();
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i)
        acc += g.weights[i] * std::pow(K.radial_at(i), n - alpha) * std::pow(L.radial_at(i), alpha);
    return acc / n;
}

StarBody schwarz_symmetral(const StarBody& K) {
    int n = K.dim();
    double on = n == 2 ? kPi : 4.0 * kPi / 3.0;
    double r = std::pow(volume(K) / on, 1.0 / n);
    return StarBody::ball(K.grid_ptr(), r);
}

StarBody linear_image(const StarBody& K, const Mat& phi) {
    Mat inv = phi.inverse();
    const auto& g = K.grid();
    std::vector<double> r(g.size());
    for (int i = 0; i < g.size(); ++i) {
        double gv = K.gauge(inv.apply(g.dirs[i]));
        if (!(gv > 0.0)) throw std::invalid_argument("linear_image: degenerate direction");
        r[i] = 1.0 / gv;
    }
    return StarBody(K.grid_ptr(), std::move(r), BodyProvenance::image);
}

double moment_body_gauge(const StarBody& K, double p, const Vec& x) {
    int n = K.dim();
    const auto& g = K.grid();
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i)
        acc += g.weights[i] * std::pow(std::fabs(x.dot(g.dirs[i])), p) *
               std::pow(K.radial_at(i), n + p);
    return std::pow(0.5 * acc, 1.0 / p);
}

double radial_asymmetry(const StarBody& K) {
    const auto& g = K.grid();
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        Vec neg = g.dirs[i] * -1.0;
        double r1 = K.radial_at(i), r2 = K.radial_interp(neg);
        worst = std::max(worst, std::fabs(r1 - r2) / std::max(r1, r2));
    }
    return worst;
}

}  // namespace bpp
