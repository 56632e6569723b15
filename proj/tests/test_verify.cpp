#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bpp/bodies.hpp"
#include "bpp/config.hpp"
#include "bpp/io.hpp"
#include "bpp/limits.hpp"
#include "bpp/parallel.hpp"
#include "bpp/verify.hpp"
#include "oracles.hpp"

using namespace bpp;

namespace {
VerifyContext small_ctx() {
    VerifyContext ctx;
    ctx.resolution = 128;
    ctx.audit_resolution = 64;
    ctx.seed = 1;
    set_parallelism(2);
    return ctx;
}
}  // namespace

TEST_CASE("selection matching") {
    CHECK(selection_matches("limit:*", "limit:bbm_classic", "limits"));
    CHECK(selection_matches("identities", "identity_347", "identities"));
    CHECK(selection_matches("ps_*", "ps_modulus", "symmetrization"));
    CHECK(!selection_matches("limit:*", "ps_modulus", "symmetrization"));
    CHECK(selection_matches("all", "anything", "whatever"));
    CHECK(selection_matches("identity_3?7", "identity_347", ""));
}

TEST_CASE("registry contents") {
    auto ids = list_checks();
    auto has = [&](const char* id) {
        for (const auto& [i, r] : ids)
            if (i == id) return true;
        return false;
    };
    CHECK(has("ps_modulus"));
    CHECK(has("identity_347"));
    CHECK(has("mt_chain"));
    int nlim = 0;
    for (const auto& [i, r] : list_limits()) {
        CHECK(i.rfind("limit:", 0) == 0);
        ++nlim;
    }
    CHECK(nlim == 9);
}

TEST_CASE("empty and unmatched selections give empty report lists") {
    VerifyContext ctx = small_ctx();
    CHECK(run_suite(ctx, {}).empty());
    CHECK(run_suite(ctx, {"no_such_check"}).empty());
    CHECK(run_limits(ctx, {}).empty());
}

TEST_CASE("family determinism and hash") {
    VerifyContext ctx = small_ctx();
    auto f1 = family_field(ctx, 5);
    auto f2 = family_field(ctx, 5);
    CHECK(f1.samples() == f2.samples());
    CHECK(family_hash(1, 4) == family_hash(1, 4));
    CHECK(family_hash(1, 4) != family_hash(2, 4));
}

TEST_CASE("manifest round trip") {
    VerifyContext ctx = small_ctx();
    for (const char* name : {"alpha_c", "beta_c"}) {
        EmpiricalConstant c;
        c.name = name;
        c.estimate = name[0] == 'a' ? 0.731234567890123 : 12.5;
        c.seed = ctx.seed;
        c.family_hash = family_hash(ctx.seed, 4);
        ctx.manifest[name] = c;
    }
    std::string js = manifest_to_json(ctx);
    VerifyContext back;
    CHECK(manifest_from_json(js, back));
    CHECK(back.manifest.size() == ctx.manifest.size());
    for (const auto& [k, c] : ctx.manifest) {
        CHECK(back.manifest.count(k) == 1);
        CHECK(back.manifest[k].estimate == doctest::Approx(c.estimate).epsilon(1e-15));
        CHECK(back.manifest[k].family_hash == c.family_hash);
    }
}

TEST_CASE("ps_modulus suite passes and reports sane rows") {
    VerifyContext ctx = small_ctx();
    auto rows = run_suite(ctx, {"ps_modulus"});
    CHECK(rows.size() >= 21);
    for (const auto& r : rows) {
        CHECK(r.passed);
        CHECK(r.check_id.rfind("ps_modulus", 0) == 0);
    }
}

TEST_CASE("degenerate inputs short-circuit to a vacuous pass") {
    auto r = inequality_report("x", "zero", 0.0, 0.0, 0.01, "1");
    CHECK(r.passed);
    CHECK(r.constant_used == "vacuous");
    CHECK(r.ratio == 1.0);
    auto bad = inequality_report("x", "", 2.0, 1.0, 0.01, "1");
    CHECK(!bad.passed);
    auto id_ok = identity_report("x", "", 1.0, 1.005, 0.01, "1");
    CHECK(id_ok.passed);
    auto id_bad = identity_report("x", "", 1.0, 1.05, 0.01, "1");
    CHECK(!id_bad.passed);
}

TEST_CASE("csv formatting is stable") {
    CheckReport r;
    r.check_id = "x";
    r.params = "a=1";
    r.lhs = 1.0 / 3.0;
    r.rhs = 2.0;
    r.constant_used = "c";
    r.ratio = r.lhs / r.rhs;
    r.passed = true;
    r.quad_error = 0.5;
    r.runtime_ms = 12;
    auto row = check_report_row(r);
    CHECK(row.size() == check_report_header().size());
    CHECK(row[2] == "0.33333333333333331");
    CHECK(row[6] == "1");
}

TEST_CASE("field snapshot round trip") {
    auto f = FunctionField::from_generator(AnalyticGenerator::bump({0.2, -0.3}, 1.0),
                                           Box::centered(2, 2.0), 64);
    std::string path = "snapshot_test.field";
    write_field_snapshot(f, path);
    auto g = read_field_snapshot(path);
    CHECK(g.resolution() == f.resolution());
    CHECK(g.samples() == f.samples());
    std::remove(path.c_str());
}

TEST_CASE("config round trip and validation") {
    RunConfig c;
    c.resolution = 128;
    c.select = {"identities", "limit:*"};
    c.seed = 42;
    std::string js = config_to_json(c);
    RunConfig back = config_from_json(js);
    CHECK(back.resolution == 128);
    CHECK(back.seed == 42);
    CHECK(back.select == c.select);
    CHECK_THROWS(config_from_json("{\"no_such_key\": 1}"));
    RunConfig bad;
    bad.resolution = 100;  // not a power of two
    CHECK_THROWS(make_context(bad));
}

TEST_CASE("weighted limit utility") {
    auto g_id = [](double t, double) { return t; };
    for (double eps : {0.5, 0.1, 0.02})
        CHECK(weighted_limit_utility(g_id, eps, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
    auto g_c = [](double t, double) { return 3.7 * t; };
    CHECK(weighted_limit_utility(g_c, 0.1, 1.5) == doctest::Approx(3.7).epsilon(1e-6));
    auto g_tt = [](double t, double) { return t * (1.0 + t); };
    double prev = 1e9;
    for (double eps : {0.4, 0.1, 0.02}) {
        double v = weighted_limit_utility(g_tt, eps, 2.0);
        // 1-D quadrature oracle: adaptive Simpson after u = t^eps, where the
        // integrand (1 + u^{1/eps})^2 is smooth
        double want = std::sqrt(oracle::integrate(
            [eps](double u) {
                double g = 1.0 + std::pow(u, 1.0 / eps);
                return g * g;
            },
            0.0, 1.0, 1e-10));
        CHECK(v == doctest::Approx(want).epsilon(1e-4));
        CHECK(std::fabs(v - 1.0) < prev);
        prev = std::fabs(v - 1.0);
    }
    CHECK(prev < 0.03);
}

TEST_CASE("auto resolution schedule") {
    CHECK(auto_resolution(256, 0.8) == 256);
    CHECK(auto_resolution(256, 0.98) >= 700);
    CHECK(auto_resolution(256, 0.98) <= 1024);
    CHECK(auto_resolution(512, 0.999) == 1024);
    CHECK(auto_resolution(256, 0.9) % 2 == 0);
}

TEST_CASE("limit reports: zero field and rotation invariance of bbm_classic pieces") {
    // both sides vanish on the zero field
    auto z = FunctionField::from_generator(AnalyticGenerator::bump({0, 0}, 1.0, 0.0),
                                           Box::centered(2, 2.0), 64);
    CHECK(lp_norm(gradient(z).magnitude(), 2.0) == 0.0);
    auto K = StarBody::ball(default_direction_grid(2, 64), 1.0);
    CHECK(besov_difference_norm(z, 0.9, 2.0, 2.0, K).value == 0.0);

    // rotating the field leaves both sweep value and target unchanged
    auto f = FunctionField::from_generator(AnalyticGenerator::bump({0.3, 0.0}, 0.9),
                                           Box::centered(2, 2.0), 128);
    auto fr = pullback(f, Mat::rotation2(kPi / 2.0));
    double s = 0.9, p = 2.0;
    double v1 = besov_difference_norm(f, s, p, p, K).value;
    double v2 = besov_difference_norm(fr, s, p, p, K).value;
    CHECK(v2 == doctest::Approx(v1).epsilon(1e-6));
    CHECK(lp_norm(gradient(fr).magnitude(), p) ==
          doctest::Approx(lp_norm(gradient(f).magnitude(), p)).epsilon(1e-9));
}

TEST_CASE("limit report convergence flag semantics") {
    LimitReport r;
    r.tolerance = 0.05;
    r.errors = {0.5, 0.2, 0.1, 0.04};
    r.params = r.values = {1, 2, 3, 4};
    // finalize is internal; emulate through run: use the public invariant instead
    bool conv = r.errors[3] <= r.tolerance && r.errors[3] < r.errors[2] &&
                r.errors[2] < r.errors[1];
    CHECK(conv);
}
