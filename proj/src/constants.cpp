#include "bpp/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "bpp/sphere.hpp"

namespace bpp {

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n >= 1");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {
double alpha_on_grid(int n, double p, const Vec& pole, int count) {
    DirectionGrid g = DirectionGrid::make(n, count);
    return g.integrate([&](const Vec& xi, int) { return std::pow(std::fabs(pole.dot(xi)), p); });
}
}  // namespace

ConstantValue alpha_with_pole(int n, double p, const Vec& pole, int directions) {
    if (n < 2) throw std::invalid_argument("alpha: n >= 2");
    if (p < 1.0) throw std::invalid_argument("alpha: p >= 1");
    if (directions == 0) directions = n == 2 ? 512 : 2048;
    double full = alpha_on_grid(n, p, pole, directions);
    double half = alpha_on_grid(n, p, pole, directions / 2);
    ConstantValue c;
    c.name = "alpha";
    c.value = full;
    c.method = ConstantMethod::quadrature;
    c.error_estimate = std::fabs(full - half);
    return c;
}

ConstantValue alpha(int n, double p, int directions) {
    Vec pole = n == 2 ? Vec{1.0, 0.0} : Vec{0.0, 0.0, 1.0};
    return alpha_with_pole(n, p, pole, directions);
}

double poincare_cp(double p) {
    if (p < 1.0) throw std::invalid_argument("poincare_cp: p >= 1");
    if (p == 1.0) return 2.0;
    return (2.0 / p) * (kPi - kPi / p) / std::sin(kPi / p) * std::pow(p - 1.0, 1.0 / p - 1.0);
}

ConstantValue gamma_nr(int n, double r, int directions) {
    ConstantValue a = alpha(n, r, directions);
    ConstantValue c;
    c.name = "gamma";
    c.method = ConstantMethod::quadrature;
    double denom = (n + r) * unit_ball_volume(n);
    c.value = std::pow(a.value / denom, 1.0 / r);
    // first-order propagation of the alpha error through the 1/r power
    c.error_estimate = c.value / r * a.error_estimate / std::max(a.value, 1e-300);
    return c;
}

double sigma_shape(double s, int n, double p) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("sigma_shape: s in (0,1)");
    if (!(n - s * p > 0.0)) throw std::invalid_argument("sigma_shape: need p < n/s");
    return (1.0 - s) / std::pow(n - s * p, p - 1.0);
}

}  // namespace bpp
