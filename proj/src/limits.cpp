#include "bpp/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bpp/bodies.hpp"
#include "bpp/constants.hpp"
#include "bpp/io.hpp"
#include "bpp/parallel.hpp"

namespace bpp {

namespace {

const double kSSeq[] = {0.8, 0.9, 0.95, 0.98};
const double kDr[] = {0.5, 0.25, 0.1, 0.05};

AnalyticGenerator limit_generator() {
    return AnalyticGenerator::sum_of_bumps({{0.3, -0.1}, {-0.45, 0.3}}, {0.9, 0.6},
                                           {1.0, -0.55});
}

Box default_box() { return Box::centered(2, 2.0); }

FunctionField limit_field(int res) {
    return FunctionField::from_generator(limit_generator(), default_box(), res);
}

// targets are gradient-based and cheap, so they get the finest grid the
// sweep can reach; the sweep errors then decrease monotonically down to the
// genuine convergence gap instead of bottoming out at the target's own floor
int target_resolution(const VerifyContext& ctx) {
    return std::min(1024, std::max(4 * ctx.resolution, 512));
}

void finalize(LimitReport& r) {
    // converged: final error within tolerance and the last three errors
    // strictly decreasing. Once a sweep sits more than 20x below tolerance it
    // has hit the quadrature floor, where strict monotonicity carries no
    // information; such points count as decreasing.
    std::size_t n = r.errors.size();
    r.converged = n >= 3 && r.errors[n - 1] <= r.tolerance;
    double floor_level = r.tolerance / 20.0;
    for (std::size_t i = n >= 3 ? n - 3 : 0; i + 1 < n && r.converged; ++i)
        r.converged = r.errors[i + 1] < r.errors[i] ||
                      (r.errors[i + 1] <= floor_level && r.errors[i] <= floor_level);
}

}  // namespace

int auto_resolution(int base, double s) {
    double f = std::sqrt(0.2 / std::max(1e-9, 1.0 - s));
    int res = int(std::min(1024.0, std::max(double(base), base * f)));
    return res & ~1;
}

double weighted_limit_utility(const std::function<double(double, double)>& g, double eps,
                              double p, int nodes) {
    // substitute u = t^eps so the concentrating weight becomes uniform
    double acc = 0.0;
    for (int k = 0; k < nodes; ++k) {
        double u = (k + 0.5) / nodes;
        double t = std::pow(u, 1.0 / eps);
        double v = g(t, eps) / t;
        acc += std::pow(v, p);
    }
    return std::pow(acc / nodes, 1.0 / p);
}

LimitReport bbm_classic(const VerifyContext& ctx, double p) {
    LimitReport rep;
    rep.limit_id = "limit:bbm_classic";
    rep.tolerance = 0.05;
    const int n = 2;
    auto K = StarBody::ball(default_direction_grid(2, ctx.body_directions), 1.0);
    double kvol = volume(K);
    {
        auto ft = limit_field(target_resolution(ctx));
        rep.target = alpha(n, p).value *
                     std::pow(lp_norm(gradient(ft).magnitude(), p), p);
    }
    for (double s : kSSeq) {
        auto f = limit_field(auto_resolution(ctx.resolution, s));
        // h-space (difference-based) route to the Gagliardo energy
        double bdn = besov_difference_norm(f, s, p, p, K, ctx.quad).value;
        double wp = kvol * std::pow(bdn, p);
        double v = p * (1.0 - s) * wp;
        rep.params.push_back(s);
        rep.values.push_back(v);
        rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
    }
    finalize(rep);
    return rep;
}

std::vector<LimitReport> bbm_direction(const VerifyContext& ctx) {
    std::vector<LimitReport> out;
    struct Cfg {
        double p, q;
        const char* tag;
    };
    const Cfg cfgs[] = {{2.0, 2.0, "p2q2"}, {3.0, 2.0, "p3q2"}, {2.0, 3.0, "p2q3"}};
    Vec xi{std::cos(0.6), std::sin(0.6)};
    for (const Cfg& c : cfgs) {
        LimitReport rep;
        rep.limit_id = std::string("limit:bbm_direction:") + c.tag;
        rep.tolerance = 0.05;
        {
            auto ft = limit_field(target_resolution(ctx));
            rep.target = classic_gauge(ft, c.p, xi);
        }
        for (double s : kSSeq) {
            auto f = limit_field(auto_resolution(ctx.resolution, s));
            double gauge = besov_gauge(f, s, c.p, c.q, xi, ctx.quad).value;
            double v = std::pow(c.q * (1.0 - s), 1.0 / c.q) * gauge;
            rep.params.push_back(s);
            rep.values.push_back(v);
            rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
        }
        finalize(rep);
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<LimitReport> bbm_body_volume(const VerifyContext& ctx) {
    std::vector<LimitReport> out;
    const int n = 2;
    auto bgrid = default_direction_grid(2, ctx.body_directions);
    for (double p : {1.5, 2.0}) {
        LimitReport rep;
        std::ostringstream id;
        id << "limit:bbm_body_volume:p" << p;
        rep.limit_id = id.str();
        rep.tolerance = 0.07;
        {
            auto ft = limit_field(target_resolution(ctx));
            auto classic = build_body(ft, BodyKind::classic_p, 0.0, p, p, bgrid);
            rep.target = std::pow(volume(classic.body), -p / double(n));
        }
        for (double s : kSSeq) {
            auto f = limit_field(auto_resolution(ctx.resolution, s));
            auto pb = build_body(f, BodyKind::besov_spq, s, p, p, bgrid, ctx.quad);
            double v = p * (1.0 - s) * std::pow(volume(pb.body), -p * s / double(n));
            rep.params.push_back(s);
            rep.values.push_back(v);
            rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
        }
        finalize(rep);
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<LimitReport> critical_direction(const VerifyContext& ctx) {
    std::vector<LimitReport> out;
    const int n = 2;
    const double angles[] = {0.25, 1.35, 2.6};
    for (double ang : angles) {
        Vec xi{std::cos(ang), std::sin(ang)};
        LimitReport rep;
        std::ostringstream id;
        id << "limit:critical_direction:a" << ang;
        rep.limit_id = id.str();
        rep.tolerance = 0.05;
        {
            auto ft = limit_field(target_resolution(ctx));
            rep.target = std::pow(classic_gauge(ft, double(n), xi), double(n)) / n;
        }
        for (double dr : kDr) {
            double p = n + dr;
            double s = double(n) / p;
            auto f = limit_field(auto_resolution(ctx.resolution, s));
            double I = directional_sq_integral(f, xi, s, p, double(n), ctx.quad).value;
            double v = std::pow((1.0 - double(n) / p) * I, p / double(n));
            rep.params.push_back(p);
            rep.values.push_back(v);
            rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
        }
        finalize(rep);
        out.push_back(std::move(rep));
    }
    return out;
}

LimitReport g_r_limit(const VerifyContext& ctx) {
    const int n = 2;
    auto bgrid = default_direction_grid(2, ctx.body_directions);
    LimitReport rep;
    rep.limit_id = "limit:g_r";
    rep.tolerance = 0.07;
    double pin;
    {
        auto ft = limit_field(target_resolution(ctx));
        auto classic = build_body(ft, BodyKind::classic_p, 0.0, double(n), double(n), bgrid);
        pin = std::pow(volume(classic.body), -1.0 / n);
        rep.target = std::pow(double(n), -1.0 / n) * pin;
    }
    bool d2_ok = true;
    double d2_cap = 0.0;
    auto it = ctx.manifest.find("clyz_cn");
    if (it != ctx.manifest.end()) d2_cap = ctx.empirical_slack * it->second.estimate * pin;
    for (double dr : kDr) {
        double r = n + dr;
        double s = double(n) / r;
        auto f = limit_field(auto_resolution(ctx.resolution, s));
        double v = g_r(f, r, bgrid, ctx.quad);
        rep.params.push_back(r);
        rep.values.push_back(v);
        rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
        if (d2_cap > 0.0 && v > d2_cap) d2_ok = false;
    }
    finalize(rep);
    // the uniform comparison with the classical polar body must hold along
    // the whole sequence
    rep.converged = rep.converged && d2_ok;
    return rep;
}

LimitReport besov_gradient_limit(const VerifyContext& ctx) {
    const int n = 2;
    auto K = StarBody::ball(default_direction_grid(2), 1.0);
    LimitReport rep;
    rep.limit_id = "limit:besov_gradient";
    rep.tolerance = 0.05;
    {
        auto ft = limit_field(target_resolution(ctx));
        double gamma_n = gamma_nr(n, double(n)).value;
        rep.target = gamma_n * std::pow(double(n), -1.0 / n) *
                     lp_norm(gradient(ft).magnitude(), double(n));
    }
    for (double dr : kDr) {
        double r = n + dr;
        double s = double(n) / r;
        auto f = limit_field(auto_resolution(ctx.resolution, s));
        double bn = besov_norm(f, s, r, double(n), K, ctx.quad).value;
        double v = std::pow(1.0 - double(n) / r, 1.0 / n) * bn;
        rep.params.push_back(r);
        rep.values.push_back(v);
        rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
    }
    finalize(rep);
    return rep;
}

std::vector<LimitReport> modulus_ratio_limit(const VerifyContext& ctx) {
    const int n = 2;
    const double rs[] = {2.0, 2.5, 4.0};
    const double ts[] = {0.4, 0.2, 0.1, 0.05};
    auto K = StarBody::ball(default_direction_grid(2), 1.0);
    BallQuadrature bq = BallQuadrature::make(K);
    auto f = limit_field(target_resolution(ctx));
    auto gmag = gradient(f).magnitude();

    // Lipschitz constant of the gradient, for the quadratic-remainder slope
    auto hess = gradient(gmag);
    double L = 0.0;
    for (std::size_t i = 0; i < hess.comp[0].size(); ++i)
        L = std::max(L, std::hypot(hess.comp[0].samples()[i], hess.comp[1].samples()[i]));
    Vec c;
    double R;
    support_ball(f, c, R);
    double ball2R = unit_ball_volume(n) * std::pow(2.0 * R, n);

    LimitReport rep;
    rep.limit_id = "limit:modulus_ratio";
    rep.tolerance = 0.05;
    rep.target = 0.0;
    bool slope_ok = true;
    for (double t : ts) {
        double envelope = 0.0;
        for (double r : rs) {
            double tgt = gamma_nr(n, r).value * lp_norm(gmag, r);
            double v = modulus(f, bq, t, r) / t;
            envelope = std::max(envelope, std::fabs(v - tgt) / tgt);
            double slope = 0.5 * L * std::pow(n * ball2R / (2.0 * r + n), 1.0 / r);
            if (std::fabs(v - tgt) > slope * t * 1.5 + 1e-12) slope_ok = false;
        }
        rep.params.push_back(t);
        rep.values.push_back(envelope);
        rep.errors.push_back(envelope);
    }
    finalize(rep);
    rep.converged = rep.converged && slope_ok;
    return {rep};
}

LimitReport morrey_limit(const VerifyContext& ctx) {
    const int n = 2;
    const double p = 4.0;
    auto bgrid = default_direction_grid(2, ctx.body_directions);
    LimitReport rep;
    rep.limit_id = "limit:morrey";
    rep.tolerance = 0.07;
    {
        auto ft = limit_field(target_resolution(ctx));
        auto classic = build_body(ft, BodyKind::classic_p, 0.0, p, p, bgrid);
        rep.target = std::pow(p, -1.0 / p) *
                     std::pow(support_measure(ft), 1.0 / n - 1.0 / p) *
                     std::pow(volume(classic.body), -1.0 / n);
    }
    for (double s : kSSeq) {
        auto f = limit_field(auto_resolution(ctx.resolution, s));
        auto pb = build_body(f, BodyKind::besov_spq, s, p, p, bgrid, ctx.quad);
        double v = std::pow(1.0 - s, 1.0 / p) *
                   std::pow(support_measure(f), s / double(n) - 1.0 / p) *
                   std::pow(volume(pb.body), -s / double(n));
        rep.params.push_back(s);
        rep.values.push_back(v);
        rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
    }
    finalize(rep);
    return rep;
}

LimitReport poincare_width_limit(const VerifyContext& ctx) {
    const double p = 2.0, q = 2.0;
    Vec xi{1.0, 0.0};
    LimitReport rep;
    rep.limit_id = "limit:poincare_width";
    rep.tolerance = 0.05;
    double w;
    {
        auto ft = limit_field(target_resolution(ctx));
        Vec c;
        double R;
        support_ball(ft, c, R);
        w = 2.0 * R;
        rep.target = std::pow(q, -1.0 / q) * w * directional_derivative_norm(ft, xi, p);
    }
    for (double s : kSSeq) {
        auto f = limit_field(auto_resolution(ctx.resolution, s));
        double I = directional_sq_integral(f, xi, s, p, q, ctx.quad).value;
        double v = std::pow(w, s) * std::pow(1.0 - s, 1.0 / q) * std::pow(I, 1.0 / q);
        rep.params.push_back(s);
        rep.values.push_back(v);
        rep.errors.push_back(std::fabs(v - rep.target) / rep.target);
    }
    finalize(rep);
    return rep;
}

// ---- registry ---------------------------------------------------------------

const std::vector<LimitDef>& limit_registry() {
    static const std::vector<LimitDef> registry = {
        {"limit:bbm_classic",
         "renormalized Gagliardo energy converges to the alpha-weighted gradient energy",
         [](const VerifyContext& c) { return std::vector<LimitReport>{bbm_classic(c, 2.0)}; }},
        {"limit:bbm_direction",
         "renormalized directional gauges converge to the gradient gauge",
         [](const VerifyContext& c) { return bbm_direction(c); }},
        {"limit:bbm_body_volume",
         "renormalized fractional body volumes converge to the classical ones",
         [](const VerifyContext& c) { return bbm_body_volume(c); }},
        {"limit:critical_direction",
         "critical-index directional gauges converge with the (1-n/p)^{p/n} normalization",
         [](const VerifyContext& c) { return critical_direction(c); }},
        {"limit:g_r", "the affine invariant converges to the classical polar body value",
         [](const VerifyContext& c) { return std::vector<LimitReport>{g_r_limit(c)}; }},
        {"limit:besov_gradient",
         "renormalized critical Besov norms converge to the gamma-weighted gradient norm",
         [](const VerifyContext& c) {
             return std::vector<LimitReport>{besov_gradient_limit(c)};
         }},
        {"limit:modulus_ratio",
         "small-scale modulus ratios converge to gamma_{n,r} gradient norms, uniformly in r",
         [](const VerifyContext& c) { return modulus_ratio_limit(c); }},
        {"limit:morrey",
         "renormalized fractional Morrey quantities converge to the classical ones",
         [](const VerifyContext& c) { return std::vector<LimitReport>{morrey_limit(c)}; }},
        {"limit:poincare_width",
         "width-weighted directional integrals converge to the directional gradient norm",
         [](const VerifyContext& c) {
             return std::vector<LimitReport>{poincare_width_limit(c)};
         }},
    };
    return registry;
}

std::vector<std::pair<std::string, std::string>> list_limits() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& l : limit_registry()) out.emplace_back(l.id, l.reference);
    return out;
}

std::vector<LimitReport> run_limits(const VerifyContext& ctx,
                                    const std::vector<std::string>& selections) {
    const auto& reg = limit_registry();
    std::vector<int> chosen;
    for (int i = 0; i < int(reg.size()); ++i) {
        bool match = false;
        for (const auto& sel : selections)
            match = match || selection_matches(sel, reg[i].id, "limits");
        if (match) chosen.push_back(i);
    }
    std::vector<std::vector<LimitReport>> partial(chosen.size());
    parallel_for(chosen.size(), [&](std::size_t k) {
        try {
            partial[k] = reg[chosen[k]].run(ctx);
        } catch (const std::exception& e) {
            LimitReport r;
            r.limit_id = reg[chosen[k]].id + std::string(":error:") + e.what();
            r.converged = false;
            partial[k] = {r};
        }
    });
    std::vector<LimitReport> out;
    for (auto& rows : partial)
        for (auto& r : rows) out.push_back(std::move(r));
    return out;
}

std::vector<std::string> limit_report_header() {
    return {"limit_id", "param", "value", "target", "error"};
}

std::vector<std::vector<std::string>> limit_report_rows(const LimitReport& r) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < r.params.size(); ++i)
        rows.push_back({r.limit_id, format_double(r.params[i]), format_double(r.values[i]),
                        format_double(r.target), format_double(r.errors[i])});
    rows.push_back({r.limit_id, "summary", r.converged ? "converged" : "not_converged",
                    format_double(r.tolerance),
                    format_double(r.errors.empty() ? 0.0 : r.errors.back())});
    return rows;
}

std::string limit_reports_to_json(const std::vector<LimitReport>& rs) {
    std::ostringstream os;
    os << "[\n";
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const auto& r = rs[k];
        os << "  {\"limit_id\": \"" << r.limit_id << "\", \"target\": "
           << format_double(r.target) << ", \"tolerance\": " << format_double(r.tolerance)
           << ", \"converged\": " << (r.converged ? "true" : "false") << ", \"points\": [";
        for (std::size_t i = 0; i < r.params.size(); ++i)
            os << (i ? ", " : "") << "{\"param\": " << format_double(r.params[i])
               << ", \"value\": " << format_double(r.values[i])
               << ", \"error\": " << format_double(r.errors[i]) << "}";
        os << "]}" << (k + 1 < rs.size() ? "," : "") << "\n";
    }
    os << "]\n";
    return os.str();
}

}  // namespace bpp
