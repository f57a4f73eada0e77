#include "dirichlet/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "dirichlet/catalog.hpp"
#include "dirichlet/cone_checks.hpp"
#include "dirichlet/convexity.hpp"
#include "dirichlet/free_dim.hpp"
#include "dirichlet/grid_analysis.hpp"
#include "dirichlet/solve.hpp"

namespace dirichlet {

namespace {

using catalog::Field;

struct Criterion {
    std::ostream& out;
    int failures = 0;

    void report(const std::string& name, bool pass, const std::string& detail) {
        out << (pass ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        if (!pass) ++failures;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

SolveConfig base_config(ConeSet set, const std::string& phi, double lo, double hi,
                        double h = 1.0 / 32.0) {
    SolveConfig cfg;
    cfg.set = std::move(set);
    cfg.box.lo = {lo, lo};
    cfg.box.hi = {hi, hi};
    cfg.h = h;
    cfg.phi = parse_expr(phi);
    return cfg;
}

double sup_diff(const GridField& a, const std::function<double(std::span<const double>)>& exact) {
    double worst = 0.0;
    a.for_each_index([&](const std::vector<int>& idx) {
        worst = std::max(worst, std::fabs(a.at(idx) - exact(a.point(idx))));
    });
    return worst;
}

// Piecewise-linear ridge along one axis keeps every lattice kink axis-aligned,
// so the cross stencil of the maximum picks up no spurious terms.
struct AxisRidge {
    int axis = 0;
    std::vector<double> offsets, slopes;
    double operator()(std::span<const double> x) const {
        double best = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < offsets.size(); ++k)
            best = std::max(best, offsets[k] + slopes[k] * x[axis]);
        return best;
    }
};

struct TestField {
    SymMatrix quad;
    std::vector<double> lin;
    AxisRidge ridge;
    double eval(std::span<const double> x) const {
        double v = 0.5 * quad.quad_form(x) + ridge(x);
        for (size_t i = 0; i < lin.size(); ++i) v += lin[i] * x[i];
        return v;
    }
};

// Random type-F field: diagonal quadratic shifted into F by the edge
// threshold plus a margin, plus an axis ridge (adds a nonnegative diagonal
// distribution, which no catalog defect can decrease).
TestField random_type_field(const ConeSet& f, SampleRng& rng, double margin, double curvature_cap) {
    const int n = f.dim();
    TestField tf;
    std::vector<double> d(n);
    for (double& v : d) v = rng.uniform(-curvature_cap, curvature_cap);
    SymMatrix q = SymMatrix::diagonal(d);
    const double t = f.edge_threshold(q);
    tf.quad = q.shifted(t + margin + rng.uniform(0.0, 0.25));
    tf.lin.resize(n);
    for (double& v : tf.lin) v = rng.uniform(-0.5, 0.5);
    tf.ridge.axis = rng.uniform_int(0, n - 1);
    const int pieces = rng.uniform_int(2, 3);
    for (int k = 0; k < pieces; ++k) {
        tf.ridge.offsets.push_back(rng.uniform(-0.3, 0.3));
        tf.ridge.slopes.push_back(rng.uniform(-1.5, 1.5));
    }
    return tf;
}

void criterion_slice_linear(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveConfig cfg = base_config(product_extend(catalog::P(1), 2),
                                  "(1-x1)*x2^2 + x1*(1+x2)", 0.0, 1.0);
    const SolveResult r = solve_dirichlet(cfg);
    const double err = sup_diff(r.u, [](std::span<const double> x) {
        return (1.0 - x[0]) * x[1] * x[1] + x[0] * (1.0 + x[1]);
    });
    const double secs = seconds_since(t0);
    c.report("1-slice-linear-exactness",
             r.report.converged && err <= 1e-7 && secs < 10.0,
             "sup error " + fmt(err) + " <= 1e-7, " + fmt(secs) + "s < 10s");
}

void criterion_harmonic(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveConfig cfg = base_config(catalog::harm(2), "x1^2 - x2^2", -1.0, 1.0);
    const SolveResult r = solve_dirichlet(cfg);
    const double err =
        sup_diff(r.u, [](std::span<const double> x) { return x[0] * x[0] - x[1] * x[1]; });
    const double secs = seconds_since(t0);
    c.report("2-harmonic-branch", r.report.converged && err <= 1e-6 && secs < 30.0,
             "sup error " + fmt(err) + " <= 1e-6, " + fmt(secs) + "s < 30s");
}

void criterion_nesting(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string phi = "sin(pi*x1)*(exp(x2)+exp(-x2))/2";
    auto solve_for = [&](ConeSet f) {
        SolveConfig cfg = base_config(std::move(f), phi, -1.0, 1.0);
        return solve_dirichlet(cfg);
    };
    const SolveResult u_p = solve_for(catalog::P(2));
    const SolveResult u_h = solve_for(catalog::harm(2));
    const SolveResult u_pt = solve_for(catalog::Ptilde(2));
    const SolveResult u_b0 = solve_for(catalog::branch_q(0, Field::real, 2));
    const SolveResult u_b1 = solve_for(catalog::branch_q(1, Field::real, 2));

    auto worst_violation = [](const GridField& lo, const GridField& hi) {
        double worst = 0.0;
        lo.for_each_index([&](const std::vector<int>& idx) {
            worst = std::max(worst, lo.at(idx) - hi.at(idx));
        });
        return worst;
    };
    double v = 0.0;
    v = std::max(v, worst_violation(u_p.u, u_h.u));
    v = std::max(v, worst_violation(u_h.u, u_pt.u));
    v = std::max(v, worst_violation(u_b0.u, u_b1.u));
    const bool conv = u_p.report.converged && u_h.report.converged && u_pt.report.converged &&
                      u_b0.report.converged && u_b1.report.converged;
    const double secs = seconds_since(t0);
    c.report("3-branch-nesting", conv && v <= 1e-6 && secs < 120.0,
             "worst chain violation " + fmt(v) + " <= 1e-6, " + fmt(secs) + "s < 2min");
}

void criterion_duality_reflection(Criterion& c) {
    const std::string phi = "sin(pi*x1)*(exp(x2)+exp(-x2))/2";
    double worst = 0.0;
    bool all = true;
    std::vector<ConeSet> sets;
    sets.push_back(catalog::P(2));
    sets.push_back(catalog::SL(0.6, 2));
    sets.push_back(catalog::branch_q(0, Field::real, 2));
    for (const auto& f : sets) {
        SolveConfig cfg = base_config(f, phi, -1.0, 1.0);
        const PairCheckReport rep = duality_reflection_check(cfg);
        worst = std::max(worst, rep.worst);
        all = all && rep.first.converged && rep.second.converged;
    }
    c.report("4-duality-reflection", all && worst <= 1e-5,
             "sup |u_F + u_dual| " + fmt(worst) + " <= 1e-5 over {P, SL(0.6), branch_q(0)}");
}

void criterion_sl_degeneracy(Criterion& c) {
    SolveConfig sl = base_config(catalog::SL(0.0, 2), "x1^2 - x2^2", -1.0, 1.0);
    SolveConfig hm = base_config(catalog::harm(2), "x1^2 - x2^2", -1.0, 1.0);
    const SolveResult a = solve_dirichlet(sl);
    const SolveResult b = solve_dirichlet(hm);
    double worst = 0.0;
    a.u.for_each_index([&](const std::vector<int>& idx) {
        worst = std::max(worst, std::fabs(a.u.at(idx) - b.u.at(idx)));
    });
    c.report("5-sl-2d-degeneracy", a.report.converged && b.report.converged && worst <= 1e-5,
             "sup |u_SL(0) - u_harm| " + fmt(worst) + " <= 1e-5");
}

void criterion_cone_battery(Criterion& c, uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    SampleRng rng(seed + 6);
    const int per_identity = 10000;
    bool ok = true;
    std::string detail;

    // Involution, exact, spread over representative sets.
    {
        long bad = 0;
        std::vector<ConeSet> sets{catalog::P(3), catalog::SL(0.6, 3), catalog::LAG(4),
                                  catalog::branch_q(1, Field::complex, 4)};
        for (int i = 0; i < per_identity; ++i) {
            const ConeSet& f = sets[i % sets.size()];
            const SymMatrix a = rng.sym(f.dim());
            if (dual(dual(f)).defect(a) != f.defect(a)) ++bad;
        }
        ok = ok && bad == 0;
        if (bad) detail += " involution:" + std::to_string(bad);
    }
    // Positivity across the catalog.
    {
        long bad = 0;
        const auto sets = catalog::battery();
        for (int i = 0; i < per_identity; ++i) {
            const ConeSet& f = sets[i % sets.size()];
            const SymMatrix a = rng.sym(f.dim());
            const SymMatrix p = rng.psd(f.dim());
            if (f.defect(a + p) < f.defect(a) - 1e-9) ++bad;
        }
        ok = ok && bad == 0;
        if (bad) detail += " positivity:" + std::to_string(bad);
    }
    // Branch duality over R, C.
    {
        long bad = 0;
        for (int i = 0; i < per_identity; ++i) {
            if (i % 2 == 0) {
                const int n = 3 + (i / 2) % 2;
                const int q = (i / 4) % n;
                const SymMatrix a = rng.sym(n);
                const double lhs = dual(catalog::branch_q(q, Field::real, n)).defect(a);
                const double rhs = catalog::branch_q(n - q - 1, Field::real, n).defect(a);
                if (std::fabs(lhs - rhs) > 1e-9) ++bad;
            } else {
                const int q = (i / 2) % 2;
                const SymMatrix a = rng.sym(4);
                const double lhs = dual(catalog::branch_q(q, Field::complex, 4)).defect(a);
                const double rhs = catalog::branch_q(2 - q - 1, Field::complex, 4).defect(a);
                if (std::fabs(lhs - rhs) > 1e-9) ++bad;
            }
        }
        ok = ok && bad == 0;
        if (bad) detail += " branch_duality:" + std::to_string(bad);
    }
    // Next-tier duality.
    {
        long bad = 0;
        const int n = 4;
        for (int i = 0; i < per_identity; ++i) {
            const int p = 1 + i % 2;
            const int q = (i / 2) % (n - p + 1);
            const SymMatrix a = rng.sym(n);
            const double lhs = dual(catalog::Pq_G(p, q, Field::real, n)).defect(a);
            const double rhs = catalog::Pq_G(p, n - q - p, Field::real, n).defect(a);
            if (std::fabs(lhs - rhs) > 1e-9) ++bad;
        }
        ok = ok && bad == 0;
        if (bad) detail += " next_tier:" + std::to_string(bad);
    }
    // garding(det) defect = lambda_1.
    {
        long bad = 0;
        const ConeSet fm = catalog::garding_det(3);
        for (int i = 0; i < per_identity; ++i) {
            const SymMatrix a = rng.sym(3);
            if (std::fabs(fm.defect(a) - a.eig_sorted().front()) > 1e-8) ++bad;
        }
        ok = ok && bad == 0;
        if (bad) detail += " garding:" + std::to_string(bad);
    }
    // Half-space self-duality, exact.
    {
        long bad = 0;
        const ConeSet h = catalog::halfspace(SymMatrix::diagonal({1.0, 0.5, 2.0}), 0.0);
        const ConeSet hd = dual(h);
        for (int i = 0; i < per_identity; ++i) {
            const SymMatrix a = rng.sym(3);
            if (hd.defect(a) != h.defect(a)) ++bad;
        }
        ok = ok && bad == 0;
        if (bad) detail += " halfspace:" + std::to_string(bad);
    }
    // Lemma 4.3 probe.
    {
        long bad = 0;
        std::vector<ConeSet> sets{catalog::P(3), catalog::branch_q(1, Field::real, 3),
                                  catalog::LAG(4), catalog::SL(0.4, 3)};
        for (int i = 0; i < per_identity; ++i) {
            const ConeSet& f = sets[i % sets.size()];
            const SymMatrix a = sample_member(f, rng);
            const SymMatrix b = sample_member(dual(f), rng);
            if ((a + b).max_eigenvalue() < -1e-8) ++bad;
        }
        ok = ok && bad == 0;
        if (bad) detail += " lemma43:" + std::to_string(bad);
    }

    const double secs = seconds_since(t0);
    ok = ok && secs < 60.0;
    c.report("6-cone-algebra-battery", ok,
             detail.empty() ? "7 identities x 10^4 samples, 0 violations, " + fmt(secs) + "s < 60s"
                            : "violations:" + detail);
}

void criterion_sup_convolution(Criterion& c, uint64_t seed) {
    SampleRng rng(seed + 7);
    Box box;
    box.lo = {-1.0, -1.0};
    box.hi = {1.0, 1.0};
    const double h = 1.0 / 16.0;
    const double eps1 = 0.05, eps2 = 0.1;

    bool mono_ok = true, modulus_ok = true, type_ok = true;
    std::vector<ConeSet> sets{catalog::harm(2), product_extend(catalog::P(1), 2), catalog::P(2),
                              catalog::Ptilde(2)};
    for (int trial = 0; trial < 10; ++trial) {
        const ConeSet& f = sets[trial % sets.size()];
        const TestField tf = random_type_field(f, rng, 0.05, 4.0);
        GridField u = GridField::sampled(box, h, [&](std::span<const double> x) {
            return tf.eval(x);
        });
        // Normalize so the delta = sqrt(2 eps N) window keeps an interior;
        // the sets here are cones, so type membership survives the scaling.
        const double norm = std::max(1.0, u.max_abs());
        u.for_each_index([&](const std::vector<int>& idx) { u.at(idx) /= norm; });
        const double bound = u.max_abs() + 1e-9;
        const GridField u1 = sup_convolution(u, eps1, bound);
        const GridField u2 = sup_convolution(u, eps2, bound);

        // u <= u^eps1 <= u^eps2, exactly at common lattice points.
        u2.for_each_index([&](const std::vector<int>& idx) {
            const auto x = u2.point(idx);
            std::vector<int> i1(u2.dim()), i0(u2.dim());
            for (int i = 0; i < u2.dim(); ++i) {
                i1[i] = static_cast<int>(std::lround((x[i] - u1.box().lo[i]) / h));
                i0[i] = static_cast<int>(std::lround((x[i] - u.box().lo[i]) / h));
            }
            if (u.at(i0) > u1.at(i1) || u1.at(i1) > u2.at(idx)) mono_ok = false;
        });

        if (quasiconvex_modulus(u1) > 1.0 / eps1 + 10.0 * h) modulus_ok = false;
        if (quasiconvex_modulus(u2) > 1.0 / eps2 + 10.0 * h) modulus_ok = false;

        const TypeReport tr = type_report(u1, f, 1e-5, rng, 2);
        if (!tr.pass()) type_ok = false;
    }
    c.report("7-sup-convolution-suite", mono_ok && modulus_ok && type_ok,
             std::string("10 fields: monotone ") + (mono_ok ? "exact" : "VIOLATED") +
                 ", modulus <= 1/eps + 10h " + (modulus_ok ? "ok" : "VIOLATED") +
                 ", type preserved at 1e-5 " + (type_ok ? "ok" : "VIOLATED"));
}

void criterion_free_dimension(Criterion& c, uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const int fd_pg = free_dim(catalog::PG(1, Field::complex, 4), seed).free_dim;
    const int fd_lag = free_dim(catalog::LAG(4), seed).free_dim;
    const int fd_p = free_dim(catalog::P(4), seed).free_dim;
    const int fd_pt = free_dim(catalog::Ptilde(4), seed).free_dim;
    const double secs = seconds_since(t0);
    const bool ok = fd_pg == 2 && fd_lag == 2 && fd_p == 0 && fd_pt == 3 && secs < 60.0;
    c.report("8-free-dimension", ok,
             "PG(1,C)=" + std::to_string(fd_pg) + " LAG=" + std::to_string(fd_lag) +
                 " P=" + std::to_string(fd_p) + " Ptilde=" + std::to_string(fd_pt) + ", " +
                 fmt(secs) + "s < 60s");
}

void criterion_boundary_convexity(Criterion& c) {
    bool ball_ok = true;
    {
        std::vector<ConeSet> sets2{catalog::P(2),
                                   catalog::Ptilde(2),
                                   catalog::harm(2),
                                   catalog::branch_q(1, Field::real, 2),
                                   catalog::PG(2, Field::real, 2),
                                   catalog::SL(0.0, 2)};
        std::vector<ConeSet> sets3{catalog::P(3),
                                   catalog::harm(3),
                                   catalog::branch_q(1, Field::real, 3),
                                   catalog::Pq_G(2, 1, Field::real, 3),
                                   catalog::garding_det(3),
                                   catalog::sigma_k(2, 3)};
        for (int n : {2, 3}) {
            const Domain ball = Domain::ball(n, 1.0);
            const auto samples = boundary_sample(ball, 512);
            for (const auto& f : (n == 2 ? sets2 : sets3)) {
                for (const auto& x : samples) {
                    const ConvexityReport rep = strict_convexity_at(ball, f, x);
                    if (!rep.strict() || rep.margin <= 0.0) {
                        ball_ok = false;
                        break;
                    }
                }
                if (!ball_ok) break;
            }
            if (!ball_ok) break;
        }
    }

    bool dumbbell_ok = true;
    {
        Box box;
        box.lo = {-1.6, -1.2};
        box.hi = {1.6, 1.2};
        const Domain dumbbell = Domain::from_expression(
            parse_expr("x2^2 + (x1^2 - 1)^2 - 1.2"), 2, box, {1.0, 0.0});
        const ConeSet f = product_extend(catalog::P(1), 2);
        const double bad_x2 = std::sqrt(0.2);
        int near_fail = 0, near_total = 0;
        for (const auto& x : boundary_sample(dumbbell, 512)) {
            const ConvexityReport rep = strict_convexity_at(dumbbell, f, x);
            const bool near_bad = std::hypot(x[0], std::fabs(x[1]) - bad_x2) < 0.05;
            if (near_bad) {
                ++near_total;
                if (!rep.strict()) ++near_fail;
            } else if (std::fabs(x[0]) >= 0.2 && !rep.strict()) {
                dumbbell_ok = false;
            }
        }
        // Both pinch points must be sampled and must fail.
        if (near_total == 0 || near_fail != near_total) dumbbell_ok = false;
    }

    bool construct_ok = true;
    std::string construct_detail = "corrupted ellipse: interior margin ";
    {
        Box box;
        box.lo = {-2.5, -1.5};
        box.hi = {2.5, 1.5};
        const Domain corrupted = Domain::from_expression(
            parse_expr("(x1^2/4 + x2^2 - 1)*(2 + x1)"), 2, box, {0.0, 0.0});
        try {
            const DefiningFunctionReport rep =
                construct_global_defining(corrupted, catalog::P(2), catalog::P(2), 64, 33);
            construct_ok = rep.interior_margin > 0.0;
            construct_detail += fmt(rep.interior_margin);
        } catch (const ConstructionError& e) {
            construct_ok = false;
            construct_detail = e.what();
        }
    }
    bool dumbbell_stage_i = false;
    {
        Box box;
        box.lo = {-1.6, -1.2};
        box.hi = {1.6, 1.2};
        const Domain dumbbell = Domain::from_expression(
            parse_expr("x2^2 + (x1^2 - 1)^2 - 1.2"), 2, box, {1.0, 0.0});
        const ConeSet f = product_extend(catalog::P(1), 2);
        try {
            construct_global_defining(dumbbell, f, f, 64, 17);
        } catch (const ConstructionError& e) {
            dumbbell_stage_i = e.stage_name == "boundary-repair";
        }
    }

    c.report("9-boundary-convexity", ball_ok && dumbbell_ok && construct_ok && dumbbell_stage_i,
             std::string("ball strict ") + (ball_ok ? "ok" : "VIOLATED") + "; dumbbell pinch fails " +
                 (dumbbell_ok ? "ok" : "VIOLATED") + "; " + construct_detail + "; dumbbell stage-(i) " +
                 (dumbbell_stage_i ? "error as required" : "MISSING"));
}

void criterion_subaffine_probe(Criterion& c, uint64_t seed) {
    SampleRng rng(seed + 10);
    Box box;
    box.lo = {-1.0, -1.0};
    box.hi = {1.0, 1.0};
    const double h = 1.0 / 16.0;
    std::vector<ConeSet> sets{catalog::P(2), catalog::harm(2), catalog::Ptilde(2),
                              catalog::SL(0.3, 2)};
    int violations = 0;
    for (int pair = 0; pair < 50; ++pair) {
        const ConeSet& f = sets[pair % sets.size()];
        const ConeSet fd = dual(f);
        const TestField uf = random_type_field(f, rng, 0.05, 3.0);
        const TestField vf = random_type_field(fd, rng, 0.05, 3.0);
        const GridField sum = GridField::sampled(box, h, [&](std::span<const double> x) {
            return uf.eval(x) + vf.eval(x);
        });
        const SubaffineReport rep = subaffine_report(sum, 1e-7, rng, 60);
        if (!rep.pass()) ++violations;
    }
    c.report("10-subaffine-theorem-probe", violations == 0,
             "50 pairs across 4 sets, " + std::to_string(violations) + " violations at tol 1e-7");
}

void criterion_uniqueness(Criterion& c) {
    const std::string phi = "sin(pi*x1)*(exp(x2)+exp(-x2))/2";
    bool ok = true;
    double worst_ratio = 0.0;
    for (const ConeSet& f : {catalog::harm(2), catalog::P(2), catalog::SL(0.6, 2)}) {
        SolveConfig cfg = base_config(f, phi, -1.0, 1.0);
        const UniquenessReport rep = uniqueness_probe(cfg, 5);
        ok = ok && rep.pass;
        if (rep.tolerance > 0.0) worst_ratio = std::max(worst_ratio, rep.max_pair_distance / rep.tolerance);
    }
    c.report("11-uniqueness-restarts", ok,
             "5 inits x 3 sets, worst pair distance at " + fmt(worst_ratio * 100.0) +
                 "% of 5*tol_update");
}

} // namespace

int run_acceptance_suite(std::ostream& out, uint64_t seed) {
    Criterion c{out};
    criterion_slice_linear(c);
    criterion_harmonic(c);
    criterion_nesting(c);
    criterion_duality_reflection(c);
    criterion_sl_degeneracy(c);
    criterion_cone_battery(c, seed);
    criterion_sup_convolution(c, seed);
    criterion_free_dimension(c, seed);
    criterion_boundary_convexity(c);
    criterion_subaffine_probe(c, seed);
    criterion_uniqueness(c);
    out << (c.failures == 0 ? "SUITE PASS" : "SUITE FAIL") << " (" << (11 - c.failures) << "/11)\n";
    return c.failures;
}

} // namespace dirichlet
