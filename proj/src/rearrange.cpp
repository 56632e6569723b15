#include "bpp/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bpp {

FunctionField schwarz_rearrange(const FunctionField& f) {
    int R = f.resolution();
    std::size_t N = f.size();
    // order cells by squared distance from the box center, then by index.
    // distances are expressed in half-cell integer units so ties are exact.
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int64_t> d2(N);
    if (f.dim() == 2) {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j) {
                int64_t a = 2 * i + 1 - R, b = 2 * j + 1 - R;
                d2[std::size_t(i) * R + j] = a * a + b * b;
            }
    } else {
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j)
                for (int k = 0; k < R; ++k) {
                    int64_t a = 2 * i + 1 - R, b = 2 * j + 1 - R, c = 2 * k + 1 - R;
                    d2[(std::size_t(i) * R + j) * R + k] = a * a + b * b + c * c;
                }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (d2[a] != d2[b]) return d2[a] < d2[b];
        return a < b;
    });
    std::vector<double> sorted(N);
    for (std::size_t i = 0; i < N; ++i) sorted[i] = std::fabs(f.samples()[i]);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    std::vector<double> out(N);
    for (std::size_t r = 0; r < N; ++r) out[order[r]] = sorted[r];
    return FunctionField(f.dim(), f.box(), R, std::move(out));
}

DecreasingRearrangement decreasing_rearrangement(const FunctionField& g) {
    DecreasingRearrangement dr;
    dr.values.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dr.values[i] = std::fabs(g.samples()[i]);
    std::sort(dr.values.begin(), dr.values.end(), std::greater<double>());
    dr.cell_measure = g.cell_volume();
    return dr;
}

double DecreasingRearrangement::head_integral(double u1, double e) const {
    if (u1 <= 0.0) return 0.0;
    double acc = 0.0, u = 0.0;
    for (double v : values) {
        if (u + cell_measure <= u1) {
            acc += std::pow(v, e) * cell_measure;
            u += cell_measure;
        } else {
            acc += std::pow(v, e) * (u1 - u);
            return acc;
        }
        if (u >= u1) return acc;
    }
    return acc;
}

double DecreasingRearrangement::tail_integral(double u1, double e) const {
    double acc = 0.0, u = 0.0;
    for (double v : values) {
        double lo = std::max(u, u1), hi = u + cell_measure;
        if (hi > lo) acc += std::pow(v, e) * (hi - lo);
        u = hi;
    }
    return acc;
}

double gradient_k_functional(const DecreasingRearrangement& dr, int dim, double t, double r,
                             double p) {
    double un = std::pow(t, dim);
    double head = std::pow(dr.head_integral(un, r), 1.0 / r);
    double tail = std::pow(dr.tail_integral(un, p), 1.0 / p);
    return head + t * tail;
}

double gradient_k_functional(const FunctionField& f, double t, double r, double p) {
    if (!(r >= 1.0 && r < p)) throw std::invalid_argument("gradient_k_functional: 1 <= r < p");
    DecreasingRearrangement dr = decreasing_rearrangement(gradient(f).magnitude());
    return gradient_k_functional(dr, f.dim(), t, r, p);
}

}  // namespace bpp
