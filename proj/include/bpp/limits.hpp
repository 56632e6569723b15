#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bpp/verify.hpp"

namespace bpp {

// One renormalized-limit sweep: parameters marching toward the limit point,
// computed values, a target computed along an independent (gradient-based)
// code path, and a convergence verdict.
struct LimitReport {
    std::string limit_id;
    std::vector<double> params;
    std::vector<double> values;
    std::vector<double> errors;  // |value - target| / |target|
    double target = 0.0;
    double tolerance = 0.05;
    bool converged = false;      // errors strictly decreasing over the last 3 points
                                 // and the final error within tolerance; points more
                                 // than 20x below tolerance sit at the quadrature
                                 // floor and count as decreasing
};

// resolution schedule: base * sqrt(0.2 / (1 - s)), even, capped at 1024
int auto_resolution(int base, double s);

LimitReport bbm_classic(const VerifyContext& ctx, double p);
std::vector<LimitReport> bbm_direction(const VerifyContext& ctx);
std::vector<LimitReport> bbm_body_volume(const VerifyContext& ctx);
std::vector<LimitReport> critical_direction(const VerifyContext& ctx);
LimitReport g_r_limit(const VerifyContext& ctx);
LimitReport besov_gradient_limit(const VerifyContext& ctx);
std::vector<LimitReport> modulus_ratio_limit(const VerifyContext& ctx);
LimitReport morrey_limit(const VerifyContext& ctx);
LimitReport poincare_width_limit(const VerifyContext& ctx);

// (int_0^1 (g(t,eps)/t)^p rho_eps(t) dt)^{1/p} with rho_eps(t) = eps t^{eps-1}
double weighted_limit_utility(const std::function<double(double, double)>& g, double eps,
                              double p, int nodes = 4000);

struct LimitDef {
    std::string id;
    std::string reference;
    std::function<std::vector<LimitReport>(const VerifyContext&)> run;
};

const std::vector<LimitDef>& limit_registry();
std::vector<std::pair<std::string, std::string>> list_limits();
std::vector<LimitReport> run_limits(const VerifyContext& ctx,
                                    const std::vector<std::string>& selections);

std::vector<std::string> limit_report_header();
std::vector<std::vector<std::string>> limit_report_rows(const LimitReport& r);
std::string limit_reports_to_json(const std::vector<LimitReport>& rs);

}  // namespace bpp
