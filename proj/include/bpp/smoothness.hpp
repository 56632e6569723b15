#pragma once

#include <functional>
#include <vector>

#include "bpp/field.hpp"
#include "bpp/geometry.hpp"

namespace bpp {

// Log-uniform quadrature for integrals of the form
//   int_0^inf t^{-s q} V(t)^q dt/t .
// Nodes cover [t_min, t_max]; below t_min the integrand is extrapolated with
// a model fitted to the smallest resolved scales; above t_max (and beyond the
// support diameter, where ||Delta_h f|| saturates exactly) with the plateau
// form of the integrand.
struct RadialQuadrature {
    double t_min = 0.0;  // 0 -> grid step
    double t_max = 0.0;  // 0 -> box diameter (auto-extended to the plateau onset)
    int nodes_per_decade = 16;
    enum class Tail { analytic_tail, truncate };
    enum class Head {
        auto_model,  // intercept model when V ~ t at small t, power law otherwise
        intercept,
        power_law,
        truncate
    };
    Tail tail = Tail::analytic_tail;
    Head head = Head::auto_model;
};

// Nodes and weights covering the gauge ball {||h||_K < t} for t = 1:
// a fixed unit node set rescaled through the radial function of K.
// Weights sum to |K| (as computed on K's direction grid), so that
// integrals over {||h||_K < t} are t^n * sum w_i F(t * node_i).
struct BallQuadrature {
    int dim = 2;
    double body_volume = 0.0;
    double max_node_norm = 0.0;
    std::vector<Vec> nodes;
    std::vector<double> weights;

    static BallQuadrature make(const StarBody& K, int node_count = 0);
};

struct NormResult {
    double value = 0.0;
    bool diverged = false;            // non-integrable head detected
    bool resolution_limited = false;  // t^{-s} V not decreasing at the smallest scales
    double head_exponent = 1.0;       // fitted small-t growth exponent of V

    operator double() const { return value; }
};

// ---- moduli of smoothness -------------------------------------------------

// omega_K(f,t)_p; p = infinity takes the sup over ball nodes of ||Delta_h f||_inf
double modulus(const FunctionField& f, const StarBody& K, double t, double p);
double modulus(const FunctionField& f, const BallQuadrature& bq, double t, double p);

// L^q-average variant g_q(t); q = infinity gives sup_modulus
double modulus_q_average(const FunctionField& f, const StarBody& K, double t, double p, double q);
double modulus_q_average(const FunctionField& f, const BallQuadrature& bq, double t, double p,
                         double q);

// sup over ball nodes of ||Delta_h f||_p
double sup_modulus(const FunctionField& f, const StarBody& K, double t, double p);

// ---- Besov / Gagliardo norms ----------------------------------------------

// ( int_0^inf t^{-sq} omega_K(f,t)_p^q dt/t )^{1/q}; q = infinity gives
// sup_t t^{-s} omega_K(f,t)_p.
NormResult besov_norm(const FunctionField& f, double s, double p, double q, const StarBody& K,
                      const RadialQuadrature& quad = {});

// ( int int |f(x)-f(y)|^p / ||x-y||_K^{sp+n} )^{1/p} by the all-pairs sum with
// a polar closed form on the diagonal cell and analytic out-of-box tails.
double gagliardo_norm(const FunctionField& f, double s, double p, const StarBody& K);

// ((1/|K|) int ||Delta_h f||_p^q / ||h||_K^{sq+n} dh)^{1/q}, polar in h over
// K's direction grid.
NormResult besov_difference_norm(const FunctionField& f, double s, double p, double q,
                                 const StarBody& K, const RadialQuadrature& quad = {});

// omega_K(f,t)_p / t on a t-grid
std::vector<double> hardy_littlewood_ratio(const FunctionField& f, const StarBody& K, double p,
                                           const std::vector<double>& t_grid);

// the exact t->0 constant ((2/((n+p)|K|)) int ||grad f||^p_{Z*_p K} dx)^{1/p}
double hl_limit_constant(const FunctionField& f, const StarBody& K, double p);

// ---- directional radial integrals (shared by bodies / verify / limits) -----

// int_{t in (0, upper)} t^{-sq} ||Delta_{t xi} f||_p^q dt/t with model head;
// upper <= 0 means (0, infinity) with the exact plateau tail.
NormResult directional_sq_integral(const FunctionField& f, const Vec& xi, double s, double p,
                                   double q, const RadialQuadrature& quad = {},
                                   double upper = 0.0);

// ---- generic engine ---------------------------------------------------------

struct TailModel {
    enum class Kind { truncate, const_plateau, ball_plateau };
    Kind kind = Kind::truncate;
    double onset = 0.0;       // plateau onset (gauge support diameter)
    double vinf_q = 0.0;      // limit of V^q
    double vinf_p_pow = 0.0;  // limit of V^p (ball model)
    double A = 0.0;           // ball model: V(t)^p = vinf_p_pow - A / t^n
    double p = 2.0;
    int n = 2;
};

NormResult integrate_radial_q(const std::function<double(double)>& V, double s, double q,
                              const RadialQuadrature& quad, double dx, double default_t_max,
                              const TailModel& tail);

}  // namespace bpp
