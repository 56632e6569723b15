#include "bpp/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace bpp {

DirectionGrid DirectionGrid::make(int dim, int count) {
    if (count < 4) throw std::invalid_argument("DirectionGrid: need at least 4 directions");
    DirectionGrid g;
    g.dim = dim;
    g.dirs.reserve(count);
    g.weights.assign(count, 0.0);
    if (dim == 2) {
        double w = 2.0 * kPi / count;
        for (int k = 0; k < count; ++k) {
            double th = (k + 0.5) * 2.0 * kPi / count;
            g.dirs.push_back({std::cos(th), std::sin(th)});
            g.weights[k] = w;
        }
    } else if (dim == 3) {
        // golden-section spiral, offset half-steps in z to avoid the poles
        double dz = 2.0 / count;
        double z = -1.0 + 0.5 * dz;
        double dtheta = kPi * (std::sqrt(5.0) + 1.0);
        double theta = 0.0;
        double w = 4.0 * kPi / count;
        for (int k = 0; k < count; ++k) {
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            g.dirs.push_back({r * std::cos(theta), r * std::sin(theta), z});
            g.weights[k] = w;
            z += dz;
            theta += dtheta;
        }
    } else {
        throw std::invalid_argument("DirectionGrid: dim must be 2 or 3");
    }
    return g;
}

double DirectionGrid::angle(int i) const {
    if (dim != 2) throw std::logic_error("DirectionGrid::angle: 2-D grids only");
    double a = std::atan2(dirs[i][1], dirs[i][0]);
    if (a < 0) a += 2.0 * kPi;
    return a;
}

Quadrature1D gauss_legendre_01(int n) {
    // Newton iteration on P_n over [-1,1], then map to [0,1].
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        q.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        q.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
    return q;
}

}  // namespace bpp
