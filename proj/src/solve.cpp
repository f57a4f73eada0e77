#include "dirichlet/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace dirichlet {

namespace {

double phi_scale(const GridField& u) { return std::max(1.0, u.max_abs()); }

void apply_boundary(GridField& u, const Expr& phi) {
    u.for_each_boundary([&](const std::vector<int>& idx) {
        const double v = phi.eval(u.point(idx));
        if (!std::isfinite(v)) throw std::invalid_argument("boundary data is not finite");
        u.at(idx) = v;
    });
}

void init_interior(GridField& u, const Expr& phi, InitStrategy strategy) {
    const int n = u.dim();
    switch (strategy) {
    case InitStrategy::boundary_min: {
        double m = std::numeric_limits<double>::infinity();
        u.for_each_boundary([&](const std::vector<int>& idx) { m = std::min(m, u.at(idx)); });
        u.for_each_interior([&](const std::vector<int>& idx) { u.at(idx) = m; });
        return;
    }
    case InitStrategy::affine_interp: {
        // Average of the per-axis linear interpolations between the two
        // boundary values on the axis line through the point.
        u.for_each_interior([&](const std::vector<int>& idx) {
            double acc = 0.0;
            std::vector<int> p(idx);
            for (int i = 0; i < n; ++i) {
                const int m = u.counts()[i];
                p[i] = 0;
                const double a = u.at(p);
                p[i] = m - 1;
                const double b = u.at(p);
                p[i] = idx[i];
                const double t = static_cast<double>(idx[i]) / (m - 1);
                acc += (1.0 - t) * a + t * b;
            }
            u.at(idx) = acc / n;
        });
        return;
    }
    case InitStrategy::harmonic: {
        // Plain Gauss-Seidel on the 2n-point Laplace stencil; a cheap start,
        // not a solve to tolerance.
        init_interior(u, phi, InitStrategy::affine_interp);
        const long sweeps = 4 * static_cast<long>(*std::max_element(u.counts().begin(), u.counts().end()));
        for (long s = 0; s < sweeps; ++s) {
            u.for_each_interior([&](const std::vector<int>& idx) {
                double acc = 0.0;
                std::vector<int> p(idx);
                for (int i = 0; i < n; ++i) {
                    p[i] = idx[i] + 1;
                    acc += u.at(p);
                    p[i] = idx[i] - 1;
                    acc += u.at(p);
                    p[i] = idx[i];
                }
                u.at(idx) = acc / (2.0 * n);
            });
        }
        return;
    }
    }
}

} // namespace

SolveResult solve_dirichlet(const SolveConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!cfg.set.valid()) throw std::invalid_argument("solve_dirichlet: no set configured");
    if (!cfg.phi.valid()) throw std::invalid_argument("solve_dirichlet: no boundary data");

    GridField u(cfg.box, cfg.h);
    apply_boundary(u, cfg.phi);
    init_interior(u, cfg.phi, cfg.init);
    if (cfg.init_noise != 0) {
        SampleRng rng(cfg.seed + static_cast<uint64_t>(cfg.init_noise));
        const double amp = 0.25 * phi_scale(u);
        u.for_each_interior([&](const std::vector<int>& idx) { u.at(idx) += amp * rng.uniform(-1.0, 1.0); });
    }

    const double theta = cfg.damping > 0.0 ? cfg.damping : (cfg.set.diagonal_only() ? 1.0 : 0.8);
    const double tol_update = cfg.tol_update > 0.0 ? cfg.tol_update : 1e-9 * phi_scale(u);
    const double tol_residual = cfg.tol_residual > 0.0 ? cfg.tol_residual : 1e-6 / (cfg.h * cfg.h);
    const double half_h2 = 0.5 * cfg.h * cfg.h;

    // Interior update order, multi-indices precomputed.
    std::vector<std::vector<int>> order;
    u.for_each_interior([&](const std::vector<int>& idx) { order.push_back(idx); });
    if (cfg.sweep == SweepOrder::red_black) {
        std::stable_sort(order.begin(), order.end(),
                         [&](const std::vector<int>& a, const std::vector<int>& b) {
                             auto parity = [](const std::vector<int>& v) {
                                 int s = 0;
                                 for (int x : v) s += x;
                                 return s % 2;
                             };
                             return parity(a) < parity(b);
                         });
    }
    std::vector<long> flat_order(order.size());
    for (size_t i = 0; i < order.size(); ++i) flat_order[i] = u.flat(order[i]);

    SolveReport rep;
    rep.tol_update = tol_update;
    rep.tol_residual = tol_residual;

    double prev_update = std::numeric_limits<double>::infinity();
    double rho_est = 0.0;
    long it = 0;
    for (; it < cfg.max_iters; ++it) {
        double max_update = 0.0;
        for (size_t oi = 0; oi < order.size(); ++oi) {
            const long k = flat_order[oi];
            const SymMatrix h0 = discrete_hessian_with_center(u, order[oi], 0.0);
            const double v_star = -half_h2 * cfg.set.edge_threshold(h0);
            const double v_new = (1.0 - theta) * u.flat_at(k) + theta * v_star;
            max_update = std::max(max_update, std::fabs(v_new - u.flat_at(k)));
            u.flat_at(k) = v_new;
        }
        rep.final_max_update = max_update;
        if (std::isfinite(prev_update) && prev_update > 0.0)
            rho_est = std::min(0.999999, std::max(rho_est * 0.5, max_update / prev_update));
        prev_update = max_update;
        if (max_update <= tol_update) {
            // Linear-convergence remainder estimate keeps restart agreement
            // within a few update tolerances of the fixed point.
            const double remaining = rho_est < 1.0 ? max_update * rho_est / (1.0 - rho_est)
                                                   : std::numeric_limits<double>::infinity();
            if (remaining <= 0.5 * tol_update || max_update == 0.0) {
                rep.converged = true;
                ++it;
                break;
            }
        }
    }
    rep.iterations = it;

    rep.residual_sup = 0.0;
    rep.dual_residual = 0.0;
    const ConeSet dual_set = dual(cfg.set);
    u.for_each_interior([&](const std::vector<int>& idx) {
        const SymMatrix h = discrete_hessian(u, idx);
        rep.residual_sup = std::max(rep.residual_sup, std::fabs(cfg.set.defect(h)));
        rep.dual_residual = std::max(rep.dual_residual, std::fabs(dual_set.defect(-1.0 * h)));
    });
    if (rep.converged && rep.residual_sup > tol_residual) rep.converged = false;

    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return {std::move(u), rep};
}

PairCheckReport nesting_check(const SolveConfig& cfg1, const SolveConfig& cfg2,
                              int inclusion_samples) {
    PairCheckReport rep;
    rep.name = "nesting[" + cfg1.set.name() + " in " + cfg2.set.name() + "]";
    if (cfg1.set.dim() != cfg2.set.dim())
        throw DimensionMismatch("nesting_check: set dimensions differ");

    // Certified defect dominance on samples: defect1 >= 0 => defect2 >= 0.
    SampleRng rng(cfg1.seed);
    for (int i = 0; i < inclusion_samples; ++i) {
        SymMatrix a = rng.sym(cfg1.set.dim());
        // Pull the sample toward the F1 boundary so the implication is
        // exercised where it can fail.
        if (i % 2 == 0) a = a.shifted(cfg1.set.edge_threshold(a) + std::fabs(rng.uniform(0.0, 0.5)));
        if (cfg1.set.defect(a) >= 0.0 && cfg2.set.defect(a) < -1e-12 * (1.0 + a.max_abs()))
            throw std::invalid_argument("nesting_check: sampled inclusion " + cfg1.set.name() +
                                        " in " + cfg2.set.name() + " fails; refusing to run");
    }

    const SolveResult r1 = solve_dirichlet(cfg1);
    const SolveResult r2 = solve_dirichlet(cfg2);
    rep.first = r1.report;
    rep.second = r2.report;
    rep.tolerance = 2.0 * r1.report.tol_residual * cfg1.h * cfg1.h;
    rep.worst = std::numeric_limits<double>::infinity();
    r1.u.for_each_index([&](const std::vector<int>& idx) {
        rep.worst = std::min(rep.worst, r2.u.at(idx) + rep.tolerance - r1.u.at(idx));
    });
    rep.pass = rep.worst >= 0.0 && r1.report.converged && r2.report.converged;
    return rep;
}

PairCheckReport duality_reflection_check(const SolveConfig& cfg) {
    PairCheckReport rep;
    rep.name = "duality_reflection[" + cfg.set.name() + "]";

    SolveConfig reflected = cfg;
    reflected.set = dual(cfg.set);
    {
        ExprNode neg;
        neg.op = ExprOp::neg;
        neg.args = {cfg.phi.root_ptr()};
        reflected.phi = Expr(std::make_shared<const ExprNode>(std::move(neg)));
    }

    const SolveResult a = solve_dirichlet(cfg);
    const SolveResult b = solve_dirichlet(reflected);
    rep.first = a.report;
    rep.second = b.report;
    rep.tolerance = 2.0 * a.report.tol_update + 10.0 * a.report.tol_residual * cfg.h * cfg.h;
    double worst = 0.0;
    a.u.for_each_index([&](const std::vector<int>& idx) {
        worst = std::max(worst, std::fabs(a.u.at(idx) + b.u.at(idx)));
    });
    rep.worst = worst;
    rep.pass = worst <= rep.tolerance && a.report.converged && b.report.converged;
    return rep;
}

UniquenessReport uniqueness_probe(const SolveConfig& cfg, int restarts) {
    UniquenessReport rep;
    rep.name = "uniqueness[" + cfg.set.name() + "]";
    rep.restarts = restarts;

    std::vector<SolveConfig> variants;
    for (int k = 0; k < restarts; ++k) {
        SolveConfig c = cfg;
        switch (k % 5) {
        case 0: c.init = InitStrategy::affine_interp; break;
        case 1: c.init = InitStrategy::boundary_min; break;
        case 2: c.init = InitStrategy::harmonic; break;
        case 3:
            c.init = InitStrategy::affine_interp;
            c.init_noise = 1 + k;
            break;
        default:
            c.init = InitStrategy::harmonic;
            c.init_noise = 11 + k;
            break;
        }
        variants.push_back(std::move(c));
    }

    std::vector<SolveResult> runs;
    for (const auto& c : variants) runs.push_back(solve_dirichlet(c));

    double tol_update = runs.front().report.tol_update;
    rep.tolerance = 5.0 * tol_update;
    rep.max_pair_distance = 0.0;
    bool all_converged = true;
    for (const auto& r : runs) all_converged = all_converged && r.report.converged;
    for (size_t a = 0; a < runs.size(); ++a) {
        for (size_t b = a + 1; b < runs.size(); ++b) {
            double d = 0.0;
            runs[a].u.for_each_index([&](const std::vector<int>& idx) {
                d = std::max(d, std::fabs(runs[a].u.at(idx) - runs[b].u.at(idx)));
            });
            if (d > rep.max_pair_distance) {
                rep.max_pair_distance = d;
                rep.worst_pair = "init#" + std::to_string(a) + " vs init#" + std::to_string(b);
            }
        }
    }
    rep.pass = all_converged && rep.max_pair_distance <= rep.tolerance;
    return rep;
}

} // namespace dirichlet
