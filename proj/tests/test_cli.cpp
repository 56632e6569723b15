#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bpp/geometry.hpp"
#include "bpp/io.hpp"

using namespace bpp;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult cli(const std::string& args) {
    std::string cmd = std::string(BPP_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string tmpdir(const std::string& leaf) {
    std::string d = std::string(BPP_TEST_TMPDIR) + "/" + leaf;
    make_directories(d);
    return d;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// drop the trailing runtime_ms column from each CSV line
std::string strip_runtime(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        out << line.substr(0, pos) << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("list shows the registry, with glob filtering") {
    auto r = cli("list");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ps_modulus") != std::string::npos);
    CHECK(r.out.find("identity_347") != std::string::npos);
    CHECK(r.out.find("mt_chain") != std::string::npos);

    auto lim = cli("list --select 'limit:*'");
    CHECK(lim.exit_code == 0);
    std::istringstream in(lim.out);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CHECK(line.rfind("limit:", 0) == 0);
        ++count;
    }
    CHECK(count == 9);
}

TEST_CASE("run: pass, forced fail, and invalid config exit codes") {
    std::string dir = tmpdir("run_pass");
    auto ok = cli("run --select ps_modulus --resolution 64 --jobs 2 --outdir " + dir);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("all passed") != std::string::npos);
    CHECK(slurp(dir + "/reports/checks.csv").find("ps_modulus") != std::string::npos);

    // forced-fail fixture: zero identity tolerance
    std::string dir2 = tmpdir("run_fail");
    {
        std::ofstream cfg(dir2 + "/cfg.json");
        cfg << "{\"tol_identity\": 0.0, \"resolution\": 64, \"jobs\": 2, "
               "\"select\": [\"gagliardo_identity\"], \"outdir\": \"" +
                   dir2 + "\"}";
    }
    auto fail = cli("run --config " + dir2 + "/cfg.json");
    CHECK(fail.exit_code == 1);

    auto bad = cli("run --config /nonexistent/path.json");
    CHECK(bad.exit_code == 2);

    std::string dir3 = tmpdir("run_badkey");
    {
        std::ofstream cfg(dir3 + "/cfg.json");
        cfg << "{\"no_such_key\": 3}";
    }
    CHECK(cli("run --config " + dir3 + "/cfg.json").exit_code == 2);

    // non power-of-two resolution is a config error
    CHECK(cli("run --select ps_modulus --resolution 100 --outdir " + dir).exit_code == 2);
}

TEST_CASE("run determinism: identical bytes modulo the runtime column") {
    std::string d1 = tmpdir("det_a"), d2 = tmpdir("det_b");
    auto r1 = cli("run --select ps_modulus --resolution 64 --jobs 2 --seed 5 --outdir " + d1);
    auto r2 = cli("run --select ps_modulus --resolution 64 --jobs 1 --seed 5 --outdir " + d2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(strip_runtime(slurp(d1 + "/reports/checks.csv")) ==
          strip_runtime(slurp(d2 + "/reports/checks.csv")));
    CHECK(slurp(d1 + "/reports/modulus_sweep.csv") == slurp(d2 + "/reports/modulus_sweep.csv"));
    CHECK(slurp(d1 + "/reports/body_profile.csv") == slurp(d2 + "/reports/body_profile.csv"));
}

TEST_CASE("plot transforms report files") {
    std::string dir = tmpdir("plot");
    auto run = cli("run --select 'limit:poincare_width' --resolution 64 --jobs 2 --outdir " + dir);
    CHECK(run.exit_code == 0);
    auto p1 = cli("plot --outdir " + dir + " --kind limit_curve --id limit:poincare_width");
    CHECK(p1.exit_code == 0);
    std::string curve = slurp(dir + "/plots/limit_curve.csv");
    CHECK(curve.rfind("param,error", 0) == 0);
    int lines = std::count(curve.begin(), curve.end(), '\n');
    CHECK(lines == 5);  // header + 4 sweep points

    // a ball body profile reshapes to a constant radial column
    auto ball = StarBody::ball(default_direction_grid(2, 32), 1.7);
    write_body_csv(ball, dir + "/reports/body_profile.csv");
    CHECK(cli("plot --outdir " + dir + " --kind body_profile").exit_code == 0);
    std::istringstream in(slurp(dir + "/plots/body_profile.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "angle,radial");
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        CHECK(line.substr(pos + 1) == format_double(1.7));
    }

    CHECK(cli("plot --outdir " + dir + " --kind modulus_sweep").exit_code == 0);
    CHECK(cli("plot --outdir " + dir + " --kind nonsense").exit_code == 2);
    CHECK(cli("plot --outdir /tmp/definitely_missing_dir_xyz --kind limit_curve").exit_code == 2);
}

TEST_CASE("kernel lane flag") {
    std::string d = tmpdir("lane");
    auto r = cli("run --select ps_modulus --resolution 64 --kernel scalar --outdir " + d);
    CHECK(r.exit_code == 0);
}
