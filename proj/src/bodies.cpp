#include "bpp/bodies.hpp"

#include <cmath>

#include "bpp/parallel.hpp"

namespace bpp {

double classic_gauge(const GradientField& g, double p, const Vec& xi) {
    return directional_derivative_norm(g, xi, p);
}

double classic_gauge(const FunctionField& f, double p, const Vec& xi) {
    return directional_derivative_norm(f, xi, p);
}

NormResult besov_gauge(const FunctionField& f, double s, double p, double q, const Vec& xi,
                       const RadialQuadrature& quad) {
    NormResult r = directional_sq_integral(f, xi, s, p, q, quad, 0.0);
    r.value = std::pow(r.value, 1.0 / (s * q));
    return r;
}

int default_body_directions(int dim) { return dim == 2 ? 128 : 512; }

ProjectionBody build_body(const FunctionField& f, BodyKind kind, double s, double p, double q,
                          std::shared_ptr<const DirectionGrid> grid,
                          const RadialQuadrature& quad) {
    if (!grid) grid = default_direction_grid(f.dim(), default_body_directions(f.dim()));
    std::vector<double> radial(grid->size());
    std::vector<double> diag(grid->size(), 0.0);
    std::optional<GradientField> gf;
    if (kind == BodyKind::classic_p) gf = gradient(f);
    std::vector<std::string> failures;
    parallel_for(grid->size(), [&](std::size_t i) {
        double gauge;
        if (kind == BodyKind::classic_p) {
            gauge = classic_gauge(*gf, p, grid->dirs[i]);
        } else {
            NormResult r = besov_gauge(f, s, p, q, grid->dirs[i], quad);
            gauge = r.value;
            diag[i] = r.head_exponent;
            if (r.diverged) gauge = 0.0;  // flagged below, never silently zero
        }
        radial[i] = gauge > 0.0 ? 1.0 / gauge : -1.0;
    });
    for (int i = 0; i < grid->size(); ++i)
        if (radial[i] <= 0.0)
            throw GaugeDivergence("build_body: divergent or vanishing gauge at direction " +
                                  std::to_string(i));
    ProjectionBody pb{StarBody(grid, std::move(radial), BodyProvenance::from_function), kind, s,
                      p, q, std::move(diag)};
    return pb;
}

double g_r(const FunctionField& f, double r, std::shared_ptr<const DirectionGrid> grid,
           const RadialQuadrature& quad) {
    int n = f.dim();
    if (!(r > n)) throw std::invalid_argument("g_r: r > n required");
    double s = double(n) / r;
    ProjectionBody pb = build_body(f, BodyKind::besov_spq, s, r, double(n), grid, quad);
    double vol = volume(pb.body);
    return std::pow(1.0 - double(n) / r, 1.0 / n) * std::pow(vol, -1.0 / r);
}

namespace {
// splitmix64: stable across platforms
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return double(splitmix64(state) >> 11) * 0x1.0p-53;
}
}  // namespace

Mat random_sl(int dim, std::uint64_t seed) {
    std::uint64_t st = seed * 0x9E3779B97F4A7C15ULL + 1;
    if (dim == 2) {
        double a = (unit_double(st) - 0.5) * 1.2;
        double b = (unit_double(st) - 0.5) * 1.2;
        double th = unit_double(st) * 2.0 * kPi;
        Mat s1 = Mat::identity(2), s2 = Mat::identity(2);
        s1.a[0][1] = a;
        s2.a[1][0] = b;
        Mat m = s1.times(Mat::rotation2(th)).times(s2);
        double d = m.det();
        double c = 1.0 / std::sqrt(std::fabs(d));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.a[i][j] *= c;
        return m;
    }
    // 3-D: compose shears on two coordinate pairs and a rotation about z
    Mat s1 = Mat::identity(3), s2 = Mat::identity(3), rot = Mat::identity(3);
    s1.a[0][1] = (unit_double(st) - 0.5) * 0.8;
    s1.a[1][2] = (unit_double(st) - 0.5) * 0.8;
    s2.a[2][0] = (unit_double(st) - 0.5) * 0.8;
    double th = unit_double(st) * 2.0 * kPi;
    rot.a[0][0] = std::cos(th);
    rot.a[0][1] = -std::sin(th);
    rot.a[1][0] = std::sin(th);
    rot.a[1][1] = std::cos(th);
    Mat m = s1.times(rot).times(s2);
    double d = m.det();
    double c = std::cbrt(1.0 / d);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.a[i][j] *= c;
    return m;
}

}  // namespace bpp
