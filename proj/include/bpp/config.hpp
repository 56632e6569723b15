#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpp/verify.hpp"

namespace bpp {

// A run is a pure function of this record (runtime_ms columns aside).
struct RunConfig {
    int dimension = 2;
    int resolution = 256;
    int directions = 128;        // body direction count
    int nodes_per_decade = 16;   // radial quadrature density
    std::uint64_t seed = 1;
    std::vector<std::string> select{"all"};  // glob patterns / group names
    double tol_identity = 0.03;
    double tol_inequality = 0.01;
    double empirical_slack = 1.3;
    std::string outdir = "out";
    std::string format = "both";  // csv | json | both
    int jobs = 2;
    std::string kernel = "auto";  // auto | scalar | avx2
    bool audits = true;
};

// JSON round trip; unknown keys are rejected so typos fail loudly
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& c);

VerifyContext make_context(const RunConfig& c);

}  // namespace bpp
