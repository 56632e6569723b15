#include "bpp/config.hpp"

#include <json.hpp>
#include <stdexcept>

namespace bpp {

using nlohmann::json;

RunConfig config_from_json(const std::string& text) {
    RunConfig c;
    json j = json::parse(text);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "dimension")
            c.dimension = it.value().get<int>();
        else if (k == "resolution")
            c.resolution = it.value().get<int>();
        else if (k == "directions")
            c.directions = it.value().get<int>();
        else if (k == "nodes_per_decade")
            c.nodes_per_decade = it.value().get<int>();
        else if (k == "seed")
            c.seed = it.value().get<std::uint64_t>();
        else if (k == "select")
            c.select = it.value().get<std::vector<std::string>>();
        else if (k == "tol_identity")
            c.tol_identity = it.value().get<double>();
        else if (k == "tol_inequality")
            c.tol_inequality = it.value().get<double>();
        else if (k == "empirical_slack")
            c.empirical_slack = it.value().get<double>();
        else if (k == "outdir")
            c.outdir = it.value().get<std::string>();
        else if (k == "format")
            c.format = it.value().get<std::string>();
        else if (k == "jobs")
            c.jobs = it.value().get<int>();
        else if (k == "kernel")
            c.kernel = it.value().get<std::string>();
        else if (k == "audits")
            c.audits = it.value().get<bool>();
        else
            throw std::invalid_argument("unknown config key: " + k);
    }
    return c;
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["dimension"] = c.dimension;
    j["resolution"] = c.resolution;
    j["directions"] = c.directions;
    j["nodes_per_decade"] = c.nodes_per_decade;
    j["seed"] = c.seed;
    j["select"] = c.select;
    j["tol_identity"] = c.tol_identity;
    j["tol_inequality"] = c.tol_inequality;
    j["empirical_slack"] = c.empirical_slack;
    j["outdir"] = c.outdir;
    j["format"] = c.format;
    j["jobs"] = c.jobs;
    j["kernel"] = c.kernel;
    j["audits"] = c.audits;
    return j.dump(2) + "\n";
}

VerifyContext make_context(const RunConfig& c) {
    if (c.dimension != 2) throw std::invalid_argument("run: only dimension 2 suites are wired");
    if (c.resolution < 16 || (c.resolution & (c.resolution - 1)) != 0)
        throw std::invalid_argument("run: resolution must be a power of two >= 16");
    if (c.format != "csv" && c.format != "json" && c.format != "both")
        throw std::invalid_argument("run: format must be csv, json, or both");
    VerifyContext ctx;
    ctx.dim = c.dimension;
    ctx.resolution = c.resolution;
    ctx.body_directions = c.directions;
    ctx.seed = c.seed;
    ctx.tol_identity = c.tol_identity;
    ctx.tol_inequality = c.tol_inequality;
    ctx.empirical_slack = c.empirical_slack;
    ctx.run_audits = c.audits;
    ctx.quad.nodes_per_decade = c.nodes_per_decade;
    return ctx;
}

}  // namespace bpp
