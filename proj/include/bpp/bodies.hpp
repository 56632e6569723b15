#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpp/field.hpp"
#include "bpp/geometry.hpp"
#include "bpp/smoothness.hpp"

namespace bpp {

enum class BodyKind { classic_p, besov_spq };

// Star body built from a function field via gauge integrals, with
// per-direction quadrature diagnostics kept alongside.
struct ProjectionBody {
    StarBody body;
    BodyKind kind = BodyKind::classic_p;
    double s = 0.0, p = 2.0, q = 2.0;
    std::vector<double> gauge_error;  // per-direction head-exponent diagnostics
};

struct GaugeDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// || grad f . xi ||_{L^p}; the gauge of the classical polar body
double classic_gauge(const GradientField& g, double p, const Vec& xi);
double classic_gauge(const FunctionField& f, double p, const Vec& xi);

// gauge of the Besov polar projection body:
//   ( int_0^inf t^{-sq} ||Delta_{t xi} f||_p^q dt/t )^{1/(sq)}
// xi need not be unit (the gauge is 1-homogeneous).
NormResult besov_gauge(const FunctionField& f, double s, double p, double q, const Vec& xi,
                       const RadialQuadrature& quad = {});

// number of body directions used by default (n = 2)
int default_body_directions(int dim);

ProjectionBody build_body(const FunctionField& f, BodyKind kind, double s, double p, double q,
                          std::shared_ptr<const DirectionGrid> grid = nullptr,
                          const RadialQuadrature& quad = {});

// affine invariant (1 - n/r)^{1/n} |Pi^{*,n/r}_{r,n} f|^{-1/r}, r > n
double g_r(const FunctionField& f, double r,
           std::shared_ptr<const DirectionGrid> grid = nullptr,
           const RadialQuadrature& quad = {});

// seeded random SL(n) transform: shear * rotation * shear, det renormalized
Mat random_sl(int dim, std::uint64_t seed);

}  // namespace bpp
