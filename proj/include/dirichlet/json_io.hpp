#pragma once

// JSON configuration parsing (set specs, domains, solve configs) and report
// serialization.  Schema violations raise ConfigError carrying a JSON pointer
// path.

#include <cstdint>
#include <string>

#include "json.hpp"

#include "dirichlet/cone_set.hpp"
#include "dirichlet/convexity.hpp"
#include "dirichlet/domain.hpp"
#include "dirichlet/free_dim.hpp"
#include "dirichlet/solve.hpp"

namespace dirichlet {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& pointer, const std::string& message)
        : std::runtime_error(message + " (at " + pointer + ")"), pointer_path(pointer) {}
    std::string pointer_path;
};

// {"name": ..., "n": ..., "params": {...}, "ops": [{"op": "dual"}, ...]}
// Names: P, Ptilde, harm, halfspace, branch_q, PG, PqG, LAG, ISO, SL,
// garding, sigma_k, extend.  Ops: dual, translate, conjugate, intersect,
// union, extend.
ConeSet parse_cone_spec(const Json& spec, const std::string& pointer = "");

// {"kind": "ball"|"ellipsoid"|"expr", ...}
Domain parse_domain_spec(const Json& spec, const std::string& pointer = "");

// Solve configuration; `seed_override` (e.g. from the SEED environment
// variable) wins over the config's "seed".
SolveConfig parse_solve_config(const Json& cfg, std::optional<uint64_t> seed_override,
                               const std::string& pointer = "");

Json solve_report_json(const SolveReport& rep);
Json free_dim_report_json(const FreeDimReport& rep);
Json convexity_report_json(const ConvexityReport& rep);
Json defining_report_json(const DefiningFunctionReport& rep);

// FNV-1a 64 of the canonical dump; stable across runs.
uint64_t config_hash(const Json& config);

// {"config_hash": ..., "seed": ..., "version": ..., "timestamp": ..., "outputs": [...]}
Json run_manifest(const Json& config, uint64_t seed, const std::vector<std::string>& outputs);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace dirichlet
