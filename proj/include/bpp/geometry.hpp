#pragma once

#include <memory>
#include <vector>

#include "bpp/grid.hpp"
#include "bpp/sphere.hpp"

namespace bpp {

enum class BodyProvenance { analytic, from_function, image };

// Star body given by its radial function on a shared direction grid.
// Radial interpolation between nodes: piecewise-linear in angle (n=2),
// nearest-3 inverse-distance blend cached on a lat-long raster (n=3).
class StarBody {
  public:
    StarBody(std::shared_ptr<const DirectionGrid> grid, std::vector<double> radial,
             BodyProvenance provenance);

    static StarBody ball(std::shared_ptr<const DirectionGrid> grid, double radius);
    static StarBody ellipsoid(std::shared_ptr<const DirectionGrid> grid, const Vec& semiaxes);
    static StarBody lq_ball(std::shared_ptr<const DirectionGrid> grid, double q, double radius);

    int dim() const { return grid_->dim; }
    const DirectionGrid& grid() const { return *grid_; }
    std::shared_ptr<const DirectionGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& radial() const { return radial_; }
    double radial_at(int i) const { return radial_[i]; }
    BodyProvenance provenance() const { return provenance_; }

    // radial function along an arbitrary direction (need not be unit)
    double radial_interp(const Vec& dir) const;

    // gauge ||x||_K = |x| / rho(x/|x|); gauge(0) = 0 by convention
    double gauge(const Vec& x) const;

  private:
    std::shared_ptr<const DirectionGrid> grid_;
    std::vector<double> radial_;
    BodyProvenance provenance_;
    // n=3 interpolation raster (built lazily at construction)
    int raster_nt_ = 0, raster_np_ = 0;
    std::vector<double> raster_;
    void build_raster();
};

std::shared_ptr<const DirectionGrid> default_direction_grid(int dim, int count = 0);

// |K| = (1/n) * integral of rho^n over the sphere
double volume(const StarBody& K);

// dual mixed volume V~_alpha(K, L) = (1/n) int rho_K^{n-alpha} rho_L^alpha
double dual_mixed_volume(const StarBody& K, const StarBody& L, double alpha);

// centered ball of equal volume
StarBody schwarz_symmetral(const StarBody& K);

// phi K, radial resampled on the grid
StarBody linear_image(const StarBody& K, const Mat& phi);

// gauge of the polar L^p moment body Z*_p K at x:
// ||x||^p = ((n+p)/2) int_K |x.y|^p dy = (1/2) sum_i w_i |x.xi_i|^p rho_i^{n+p}
double moment_body_gauge(const StarBody& K, double p, const Vec& x);

// max_i |rho(xi_i) - rho(-xi_i)| / rho, a cheap asymmetry measure
double radial_asymmetry(const StarBody& K);

}  // namespace bpp
