// Command-line front end: solve, verify-cones, check-boundary, build-defining,
// analyze, freedim, suite.  Exit codes: 0 pass, 1 check failure, 2 usage or
// config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dirichlet/catalog.hpp"
#include "dirichlet/cone_checks.hpp"
#include "dirichlet/convexity.hpp"
#include "dirichlet/free_dim.hpp"
#include "dirichlet/grid_analysis.hpp"
#include "dirichlet/json_io.hpp"
#include "dirichlet/suite.hpp"

namespace {

using namespace dirichlet;

std::optional<uint64_t> env_seed() {
    if (const char* s = std::getenv("SEED")) return std::strtoull(s, nullptr, 10);
    return std::nullopt;
}

uint64_t effective_seed(std::optional<uint64_t> cli_seed) {
    if (auto env = env_seed()) return *env;
    if (cli_seed) return *cli_seed;
    return kDefaultSeed;
}

int cmd_solve(const std::string& config_path, const std::string& out_prefix,
              std::optional<uint64_t> cli_seed) {
    const Json cfg_json = load_json_file(config_path);
    std::optional<uint64_t> seed = env_seed();
    if (!seed) seed = cli_seed;
    const SolveConfig cfg = parse_solve_config(cfg_json, seed);

    const SolveResult r = solve_dirichlet(cfg);

    Json provenance;
    provenance["tool"] = "dirichlet";
    provenance["version"] = kToolVersion;
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config_hash(cfg_json)));
    provenance["config_hash"] = std::string(hex);
    provenance["seed"] = cfg.seed;

    const std::string grid_path = out_prefix + ".csv";
    const std::string report_path = out_prefix + ".report.json";
    save_csv(r.u, grid_path, provenance.dump());
    write_json_file(report_path, solve_report_json(r.report));
    write_json_file(out_prefix + ".manifest.json",
                    run_manifest(cfg_json, cfg.seed, {grid_path, report_path}));

    std::cout << "wrote " << grid_path << " and " << report_path << "\n"
              << "iterations " << r.report.iterations << ", residual_sup " << r.report.residual_sup
              << ", converged " << (r.report.converged ? "yes" : "no") << "\n";
    return r.report.converged ? 0 : 1;
}

int cmd_verify_cones(const std::string& set_filter, int samples, std::optional<uint64_t> cli_seed) {
    std::vector<CheckResult> results;
    const int failures = run_cone_battery(samples, effective_seed(cli_seed), results);
    int shown_failures = 0;
    for (const auto& r : results) {
        if (!set_filter.empty() && r.name.find(set_filter) == std::string::npos) continue;
        std::cout << (r.pass() ? "ok   " : "FAIL ") << r.name << "  samples=" << r.samples
                  << " violations=" << r.violations << " worst=" << r.worst << "\n";
        if (!r.pass()) ++shown_failures;
    }
    if (set_filter.empty()) {
        std::cout << (failures == 0 ? "all cone checks passed\n" : "cone checks FAILED\n");
        return failures == 0 ? 0 : 1;
    }
    return shown_failures == 0 ? 0 : 1;
}

int cmd_check_boundary(const std::string& domain_path, const std::string& set_path,
                       const std::string& out_csv, int samples) {
    const Domain d = parse_domain_spec(load_json_file(domain_path));
    const ConeSet f = parse_cone_spec(load_json_file(set_path));
    std::ofstream out(out_csv);
    if (!out) throw std::runtime_error("cannot open " + out_csv);
    for (int i = 0; i < d.dim(); ++i) out << "x" << (i + 1) << ",";
    out << "margin,t_star,verdict\n";
    int fails = 0;
    char buf[48];
    for (const auto& x : boundary_sample(d, samples)) {
        const ConvexityReport rep = strict_convexity_at(d, f, x);
        for (double v : x) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.17g", rep.margin);
        out << buf << ",";
        std::snprintf(buf, sizeof buf, "%.17g", rep.t_star);
        out << buf << "," << (rep.strict() ? "strict" : "fail") << "\n";
        if (!rep.strict()) ++fails;
    }
    std::cout << "wrote " << out_csv << "; " << fails << " of " << samples << " samples fail\n";
    return fails == 0 ? 0 : 1;
}

int cmd_build_defining(const std::string& domain_path, const std::string& set_path,
                       const std::string& out_prefix, int boundary_samples, int per_axis) {
    const Domain d = parse_domain_spec(load_json_file(domain_path));
    const ConeSet f = parse_cone_spec(load_json_file(set_path));
    try {
        const DefiningFunctionReport rep =
            construct_global_defining(d, f, f, boundary_samples, per_axis);
        // Sample the constructed field over the bounding box.
        const Box& box = d.bounding_box();
        const double h = (box.hi[0] - box.lo[0]) / 64.0;
        Box aligned = box;
        for (int i = 0; i < d.dim(); ++i)
            aligned.hi[i] = aligned.lo[i] + std::ceil((box.hi[i] - box.lo[i]) / h) * h;
        const GridField sampled = GridField::sampled(aligned, h, [&](std::span<const double> x) {
            return rep.field->value(x);
        });
        save_csv(sampled, out_prefix + ".csv");
        write_json_file(out_prefix + ".json", defining_report_json(rep));
        std::cout << "construction succeeded; interior margin " << rep.interior_margin << "\n";
        return 0;
    } catch (const ConstructionError& e) {
        Json j;
        j["error"] = e.what();
        j["stage"] = e.stage_name;
        j["worst_point"] = e.point;
        write_json_file(out_prefix + ".json", j);
        std::cout << e.what() << "\n";
        return 1;
    }
}

int cmd_analyze(const std::string& grid_path, const std::string& set_spec, bool subaffine,
                bool type, double supconv_eps, std::optional<uint64_t> cli_seed) {
    const GridField u = load_csv(grid_path);
    SampleRng rng(effective_seed(cli_seed));
    int rc = 0;
    if (subaffine) {
        const SubaffineReport rep = subaffine_report(u, 1e-7, rng);
        const AnalysisReport comb = rep.combined();
        std::cout << (comb.pass ? "ok   " : "FAIL ") << comb.property << " worst_margin "
                  << comb.worst_margin << " tol " << comb.tolerance << "\n";
        if (!comb.pass) rc = 1;
    }
    if (type) {
        if (set_spec.empty()) throw ConfigError("/set", "analyze --type needs --set");
        const ConeSet f = parse_cone_spec(Json::parse(set_spec));
        const TypeReport rep = type_report(u, f, 1e-7, rng);
        std::cout << (rep.pass() ? "ok   " : "FAIL ") << rep.pointwise.property << " worst_margin "
                  << rep.pointwise.worst_margin << "\n";
        if (!rep.pass()) rc = 1;
    }
    if (supconv_eps > 0.0) {
        const double bound = u.max_abs() + 1e-12;
        const GridField v = sup_convolution(u, supconv_eps, bound);
        save_csv(v, grid_path + ".supconv.csv");
        std::cout << "wrote " << grid_path << ".supconv.csv; quasiconvex modulus "
                  << quasiconvex_modulus(v) << " (1/eps = " << 1.0 / supconv_eps << ")\n";
    }
    return rc;
}

int cmd_freedim(const std::string& set_path, const std::string& out_json,
                std::optional<uint64_t> cli_seed) {
    const ConeSet f = parse_cone_spec(load_json_file(set_path));
    const FreeDimReport rep = free_dim(f, effective_seed(cli_seed));
    const Json j = free_dim_report_json(rep);
    if (!out_json.empty()) write_json_file(out_json, j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet-set potential theory toolkit"};
    app.require_subcommand(1);

    std::optional<uint64_t> cli_seed;
    app.add_option("--seed", cli_seed, "sampler seed (SEED env var wins)");

    std::string config_path, out_prefix = "solution";
    auto* solve = app.add_subcommand("solve", "solve the F-Dirichlet problem from a JSON config");
    solve->add_option("config", config_path, "solve config JSON")->required();
    solve->add_option("-o,--out", out_prefix, "output prefix");

    std::string filter;
    int samples = 10000;
    auto* verify = app.add_subcommand("verify-cones", "run the cone-algebra property battery");
    verify->add_option("--set", filter, "only show checks whose name contains this");
    verify->add_option("--samples", samples, "total sample budget");

    std::string domain_path, set_path, out_csv = "convexity.csv";
    int boundary_count = 512;
    auto* check = app.add_subcommand("check-boundary", "boundary convexity sweep");
    check->add_option("domain", domain_path, "domain JSON")->required();
    check->add_option("set", set_path, "set JSON")->required();
    check->add_option("-o,--out", out_csv, "report CSV path");
    check->add_option("--samples", boundary_count, "boundary sample count");

    std::string bd_domain, bd_set, bd_out = "defining";
    int bd_samples = 128, bd_axis = 33;
    auto* build = app.add_subcommand("build-defining", "construct a strict global defining function");
    build->add_option("domain", bd_domain, "domain JSON")->required();
    build->add_option("set", bd_set, "set JSON")->required();
    build->add_option("-o,--out", bd_out, "output prefix");
    build->add_option("--boundary-samples", bd_samples, "boundary sample count");
    build->add_option("--interior-per-axis", bd_axis, "interior lattice per axis");

    std::string grid_path, analyze_set;
    bool a_subaffine = false, a_type = false;
    double a_supconv = 0.0;
    auto* analyze = app.add_subcommand("analyze", "grid-field reports");
    analyze->add_option("grid", grid_path, "grid CSV")->required();
    analyze->add_option("--set", analyze_set, "set spec JSON (inline)");
    analyze->add_flag("--subaffine", a_subaffine, "subaffinity report");
    analyze->add_flag("--type", a_type, "type-F report (needs --set)");
    analyze->add_option("--supconv", a_supconv, "sup-convolution with this eps");

    std::string fd_set, fd_out;
    auto* freedim_cmd = app.add_subcommand("freedim", "free-dimension report");
    freedim_cmd->add_option("set", fd_set, "set JSON")->required();
    freedim_cmd->add_option("-o,--out", fd_out, "report JSON path");

    auto* suite = app.add_subcommand("suite", "run the full acceptance battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(config_path, out_prefix, cli_seed);
        if (verify->parsed()) return cmd_verify_cones(filter, samples, cli_seed);
        if (check->parsed()) return cmd_check_boundary(domain_path, set_path, out_csv, boundary_count);
        if (build->parsed()) return cmd_build_defining(bd_domain, bd_set, bd_out, bd_samples, bd_axis);
        if (analyze->parsed())
            return cmd_analyze(grid_path, analyze_set, a_subaffine, a_type, a_supconv, cli_seed);
        if (freedim_cmd->parsed()) return cmd_freedim(fd_set, fd_out, cli_seed);
        if (suite->parsed()) {
            const int failures = run_acceptance_suite(std::cout, effective_seed(cli_seed));
            return failures == 0 ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
