#pragma once

#include <vector>

#include "bpp/grid.hpp"

namespace bpp {

// Direction grid on S^{n-1} with quadrature weights summing to |S^{n-1}|.
// n=2: midpoint rule on equal angles (spectrally accurate for smooth periodic
// integrands). n=3: Fibonacci spiral lattice with equal weights.
struct DirectionGrid {
    int dim = 2;
    std::vector<Vec> dirs;
    std::vector<double> weights;

    static DirectionGrid make(int dim, int count);

    int size() const { return static_cast<int>(dirs.size()); }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (int i = 0; i < size(); ++i) acc += weights[i] * f(dirs[i], i);
        return acc;
    }

    // angle of node i (n=2 only), in [0, 2pi)
    double angle(int i) const;
};

// Gauss-Legendre nodes/weights on [0,1].
struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature1D gauss_legendre_01(int n);

}  // namespace bpp
