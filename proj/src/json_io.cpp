#include "dirichlet/json_io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "dirichlet/catalog.hpp"

namespace dirichlet {

namespace {

const Json& need(const Json& j, const std::string& key, const std::string& pointer) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(pointer + "/" + key, "missing field");
    return j.at(key);
}

double need_number(const Json& j, const std::string& key, const std::string& pointer) {
    const Json& v = need(j, key, pointer);
    if (!v.is_number()) throw ConfigError(pointer + "/" + key, "expected a number");
    return v.get<double>();
}

int need_int(const Json& j, const std::string& key, const std::string& pointer) {
    const Json& v = need(j, key, pointer);
    if (!v.is_number_integer()) throw ConfigError(pointer + "/" + key, "expected an integer");
    return v.get<int>();
}

std::string need_string(const Json& j, const std::string& key, const std::string& pointer) {
    const Json& v = need(j, key, pointer);
    if (!v.is_string()) throw ConfigError(pointer + "/" + key, "expected a string");
    return v.get<std::string>();
}

catalog::Field parse_field(const Json& params, const std::string& pointer) {
    std::string f = params.contains("field") ? params.at("field").get<std::string>() : "real";
    if (f == "real" || f == "R") return catalog::Field::real;
    if (f == "complex" || f == "C") return catalog::Field::complex;
    if (f == "quaternionic" || f == "H") return catalog::Field::quaternionic;
    throw ConfigError(pointer + "/params/field", "unknown field '" + f + "'");
}

SymMatrix parse_matrix(const Json& j, const std::string& pointer) {
    if (!j.is_array() || j.empty()) throw ConfigError(pointer, "expected a matrix (array of rows)");
    std::vector<std::vector<double>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ConfigError(pointer, "expected a matrix row");
        rows.push_back(r.get<std::vector<double>>());
    }
    return SymMatrix::from_rows(rows);
}

Matrix parse_dense(const Json& j, const std::string& pointer) {
    if (!j.is_array() || j.empty()) throw ConfigError(pointer, "expected a matrix (array of rows)");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.at(0).size());
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto row = j.at(i).get<std::vector<double>>();
        if (static_cast<int>(row.size()) != cols) throw ConfigError(pointer, "ragged matrix");
        for (int c = 0; c < cols; ++c) m(i, c) = row[c];
    }
    return m;
}

ConeSet base_set(const std::string& name, int n, const Json& params, const std::string& pointer) {
    using namespace catalog;
    if (name == "P") return P(n);
    if (name == "Ptilde") return Ptilde(n);
    if (name == "harm") return harm(n);
    if (name == "halfspace")
        return halfspace(parse_matrix(need(params, "A0", pointer + "/params"), pointer + "/params/A0"),
                         params.contains("c") ? params.at("c").get<double>() : 0.0);
    if (name == "branch_q") return branch_q(need_int(params, "q", pointer + "/params"), parse_field(params, pointer), n);
    if (name == "PG") return PG(need_int(params, "p", pointer + "/params"), parse_field(params, pointer), n);
    if (name == "PqG")
        return Pq_G(need_int(params, "p", pointer + "/params"), need_int(params, "q", pointer + "/params"),
                    parse_field(params, pointer), n);
    if (name == "LAG") return LAG(n);
    if (name == "ISO") return ISO(need_int(params, "p", pointer + "/params"), n);
    if (name == "SL") return SL(need_number(params, "c", pointer + "/params"), n);
    if (name == "garding") {
        const std::string m = params.contains("M") ? params.at("M").get<std::string>() : "det";
        if (m == "det") return garding_det(n);
        throw ConfigError(pointer + "/params/M", "unknown MA-polynomial '" + m + "' (supported: det)");
    }
    if (name == "sigma_k") return sigma_k(need_int(params, "k", pointer + "/params"), n);
    throw ConfigError(pointer + "/name", "unknown set '" + name + "'");
}

} // namespace

ConeSet parse_cone_spec(const Json& spec, const std::string& pointer) {
    if (!spec.is_object()) throw ConfigError(pointer, "set spec must be an object");
    const std::string name = need_string(spec, "name", pointer);
    const Json params = spec.contains("params") ? spec.at("params") : Json::object();

    ConeSet result;
    if (name == "intersect" || name == "union") {
        const Json& members = need(spec, "members", pointer);
        if (!members.is_array() || members.empty())
            throw ConfigError(pointer + "/members", "expected a nonempty array of set specs");
        std::vector<ConeSet> sets;
        for (size_t i = 0; i < members.size(); ++i)
            sets.push_back(parse_cone_spec(members.at(i), pointer + "/members/" + std::to_string(i)));
        result = name == "intersect" ? intersect(sets) : set_union(sets);
    } else if (name == "extend") {
        const ConeSet inner = parse_cone_spec(need(spec, "base", pointer), pointer + "/base");
        const int ambient = need_int(spec, "n", pointer);
        if (spec.contains("axes"))
            result = product_extend(inner, ambient, spec.at("axes").get<std::vector<int>>());
        else
            result = product_extend(inner, ambient);
    } else {
        const int n = need_int(spec, "n", pointer);
        result = base_set(name, n, params, pointer);
    }

    if (spec.contains("ops")) {
        const Json& ops = spec.at("ops");
        if (!ops.is_array()) throw ConfigError(pointer + "/ops", "expected an array");
        for (size_t i = 0; i < ops.size(); ++i) {
            const std::string opp = pointer + "/ops/" + std::to_string(i);
            const Json& op = ops.at(i);
            const std::string kind = op.is_string() ? op.get<std::string>() : need_string(op, "op", opp);
            if (kind == "dual") {
                result = dual(result);
            } else if (kind == "translate") {
                result = translate(result, parse_matrix(need(op, "A0", opp), opp + "/A0"));
            } else if (kind == "conjugate") {
                result = conjugate(result, parse_dense(need(op, "g", opp), opp + "/g"));
            } else if (kind == "intersect" || kind == "union") {
                std::vector<ConeSet> sets{result,
                                          parse_cone_spec(need(op, "with", opp), opp + "/with")};
                result = kind == "intersect" ? intersect(sets) : set_union(sets);
            } else if (kind == "extend") {
                const int ambient = need_int(op, "n", opp);
                result = op.contains("axes")
                             ? product_extend(result, ambient, op.at("axes").get<std::vector<int>>())
                             : product_extend(result, ambient);
            } else {
                throw ConfigError(opp, "unknown op '" + kind + "'");
            }
        }
    }
    return result;
}

Domain parse_domain_spec(const Json& spec, const std::string& pointer) {
    if (!spec.is_object()) throw ConfigError(pointer, "domain spec must be an object");
    const std::string kind = need_string(spec, "kind", pointer);
    if (kind == "ball") {
        const Json params = spec.contains("params") ? spec.at("params") : Json::object();
        const int n = need_int(spec, "n", pointer);
        const double radius = params.contains("radius") ? params.at("radius").get<double>() : 1.0;
        std::vector<double> center =
            params.contains("center") ? params.at("center").get<std::vector<double>>() : std::vector<double>();
        return Domain::ball(n, radius, std::move(center));
    }
    if (kind == "ellipsoid") {
        const Json params = spec.contains("params") ? spec.at("params") : Json::object();
        return Domain::ellipsoid(need(params, "semiaxes", pointer + "/params").get<std::vector<double>>());
    }
    if (kind == "expr") {
        const int n = need_int(spec, "n", pointer);
        Expr rho;
        try {
            rho = parse_expr(need_string(spec, "expr", pointer));
        } catch (const ParseError& e) {
            throw ConfigError(pointer + "/expr", e.what());
        }
        const Json& boxj = need(spec, "box", pointer);
        Box box;
        box.lo = boxj.at(0).get<std::vector<double>>();
        box.hi = boxj.at(1).get<std::vector<double>>();
        std::vector<double> witness = need(spec, "interior_point", pointer).get<std::vector<double>>();
        try {
            return Domain::from_expression(rho, n, std::move(box), std::move(witness));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(pointer, e.what());
        }
    }
    throw ConfigError(pointer + "/kind", "unknown domain kind '" + kind + "'");
}

SolveConfig parse_solve_config(const Json& cfg, std::optional<uint64_t> seed_override,
                               const std::string& pointer) {
    if (!cfg.is_object()) throw ConfigError(pointer, "solve config must be an object");
    SolveConfig out;
    out.set = parse_cone_spec(need(cfg, "set", pointer), pointer + "/set");

    const Json& boxj = need(cfg, "box", pointer);
    if (!boxj.is_array() || boxj.size() != 2) throw ConfigError(pointer + "/box", "expected [lo, hi]");
    out.box.lo = boxj.at(0).get<std::vector<double>>();
    out.box.hi = boxj.at(1).get<std::vector<double>>();
    if (out.box.dim() != out.set.dim())
        throw ConfigError(pointer + "/box", "box dimension does not match the set dimension");

    out.h = need_number(cfg, "h", pointer);
    if (!(out.h > 0.0)) throw ConfigError(pointer + "/h", "h must be positive");

    try {
        out.phi = parse_expr(need_string(cfg, "phi", pointer));
    } catch (const ParseError& e) {
        throw ConfigError(pointer + "/phi", e.what());
    }

    if (cfg.contains("init")) {
        const std::string s = cfg.at("init").get<std::string>();
        if (s == "affine_interp") out.init = InitStrategy::affine_interp;
        else if (s == "boundary_min") out.init = InitStrategy::boundary_min;
        else if (s == "harmonic") out.init = InitStrategy::harmonic;
        else throw ConfigError(pointer + "/init", "unknown init '" + s + "'");
    }
    if (cfg.contains("sweep")) {
        const std::string s = cfg.at("sweep").get<std::string>();
        if (s == "lexicographic") out.sweep = SweepOrder::lexicographic;
        else if (s == "red_black") out.sweep = SweepOrder::red_black;
        else throw ConfigError(pointer + "/sweep", "unknown sweep '" + s + "'");
    }
    if (cfg.contains("damping")) {
        out.damping = cfg.at("damping").get<double>();
        if (!(out.damping > 0.0 && out.damping <= 1.0))
            throw ConfigError(pointer + "/damping", "damping must lie in (0, 1]");
    }
    if (cfg.contains("max_iters")) out.max_iters = cfg.at("max_iters").get<long>();
    if (cfg.contains("tol_update")) {
        out.tol_update = cfg.at("tol_update").get<double>();
        if (!(out.tol_update > 0.0)) throw ConfigError(pointer + "/tol_update", "tol_update must be positive");
    }
    if (cfg.contains("tol_residual")) out.tol_residual = cfg.at("tol_residual").get<double>();
    if (cfg.contains("seed")) out.seed = cfg.at("seed").get<uint64_t>();
    if (seed_override) out.seed = *seed_override;
    return out;
}

Json solve_report_json(const SolveReport& rep) {
    Json j;
    j["iterations"] = rep.iterations;
    j["final_max_update"] = rep.final_max_update;
    j["residual_sup"] = rep.residual_sup;
    j["dual_residual"] = rep.dual_residual;
    j["wall_time"] = rep.wall_time;
    j["converged"] = rep.converged;
    j["tol_update"] = rep.tol_update;
    j["tol_residual"] = rep.tol_residual;
    return j;
}

Json free_dim_report_json(const FreeDimReport& rep) {
    Json j;
    j["free_dim"] = rep.free_dim;
    j["witness_free_subspace"] = rep.witness_free_subspace;
    j["witness_strict_normal"] = rep.witness_strict_normal;
    j["samples_used"] = rep.samples_used;
    return j;
}

Json convexity_report_json(const ConvexityReport& rep) {
    Json j;
    j["point"] = rep.point;
    j["margin"] = rep.margin;
    j["t_star"] = rep.t_star;
    j["verdict"] = rep.strict() ? "strict" : "fail";
    return j;
}

Json defining_report_json(const DefiningFunctionReport& rep) {
    Json j;
    j["repair_c"] = rep.repair_c;
    j["collar_r"] = rep.collar_r;
    j["delta"] = rep.delta;
    j["blend_eps"] = rep.blend_eps;
    j["boundary_margin"] = rep.boundary_margin;
    j["interior_margin"] = rep.interior_margin;
    j["display_epsilon"] = rep.display_epsilon;
    j["display_scale"] = rep.display_scale;
    j["samples"] = rep.samples;
    return j;
}

uint64_t config_hash(const Json& config) {
    const std::string dump = config.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Json run_manifest(const Json& config, uint64_t seed, const std::vector<std::string>& outputs) {
    Json j;
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config_hash(config)));
    j["config_hash"] = std::string(hex);
    j["seed"] = seed;
    j["version"] = kToolVersion;
    const auto now = std::chrono::system_clock::now();
    j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    j["outputs"] = outputs;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("/", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("/", std::string("malformed JSON in ") + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

} // namespace dirichlet
