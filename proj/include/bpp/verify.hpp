#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bpp/field.hpp"
#include "bpp/smoothness.hpp"

namespace bpp {

// One verification result row.
struct CheckReport {
    std::string check_id;
    std::string params;         // "k=v;k=v" record
    double lhs = 0.0;
    double rhs = 0.0;
    std::string constant_used;  // formula tag, "empirical:<name>", or "vacuous"
    double ratio = 0.0;         // lhs / rhs
    bool passed = false;
    double quad_error = 0.0;
    long runtime_ms = 0;
};

// Absolute constants the theorems leave unspecified; estimated once per
// (family, seed) as the max observed ratio, cached in the manifest.
struct EmpiricalConstant {
    std::string name;
    double estimate = 0.0;
    std::string family_hash;
    std::uint64_t seed = 0;
};

struct VerifyContext {
    int dim = 2;
    int resolution = 256;
    int body_directions = 128;
    std::uint64_t seed = 1;
    double tol_identity = 0.03;    // relative, identity checks
    double tol_inequality = 0.01;  // slack on inequality checks
    double empirical_slack = 1.3;  // margin applied to manifest constants
    int audit_resolution = 96;     // reduced resolution for the automatic audits
    bool run_audits = true;
    RadialQuadrature quad;
    std::map<std::string, EmpiricalConstant> manifest;
};

// report constructors implementing the pass semantics:
//   identity:   |lhs - rhs| <= tol * max(|lhs|, |rhs|, floor)
//   inequality: lhs <= rhs (1 + tol); lhs = rhs = 0 short-circuits to a
//               vacuous pass
CheckReport identity_report(const std::string& id, const std::string& params, double lhs,
                            double rhs, double tol, const std::string& constant);
CheckReport inequality_report(const std::string& id, const std::string& params, double lhs,
                              double rhs, double tol, const std::string& constant);

// ---- seeded function family -------------------------------------------------

// deterministic bump-sum family member (C-infinity, margin-safe)
AnalyticGenerator family_generator(std::uint64_t seed, int index);
FunctionField family_field(const VerifyContext& ctx, int index, int resolution = 0);
std::string family_hash(std::uint64_t seed, int count);

// ---- empirical constants ------------------------------------------------------

// fills ctx.manifest deterministically from (seed, family); see the README
// for the constant inventory
void estimate_empirical_constants(VerifyContext& ctx);

std::string manifest_to_json(const VerifyContext& ctx);
bool manifest_from_json(const std::string& json_text, VerifyContext& ctx);

// ---- registry -----------------------------------------------------------------

struct CheckDef {
    std::string id;
    std::string group;      // "symmetrization" | "identities" | "inequalities"
    std::string reference;  // one-line statement of what is being checked
    std::function<std::vector<CheckReport>(const VerifyContext&)> run;
};

const std::vector<CheckDef>& check_registry();

// ids (with references) for `list`
std::vector<std::pair<std::string, std::string>> list_checks();

// Deterministic execution of the selected subset (glob or group names).
// Order of the report list follows registry order.
std::vector<CheckReport> run_suite(const VerifyContext& ctx,
                                   const std::vector<std::string>& selections);

bool selection_matches(const std::string& pattern, const std::string& id,
                       const std::string& group);

// CSV/JSON serialization with the fixed column order
std::vector<std::string> check_report_header();
std::vector<std::string> check_report_row(const CheckReport& r);
std::string check_reports_to_json(const std::vector<CheckReport>& rs);

}  // namespace bpp
