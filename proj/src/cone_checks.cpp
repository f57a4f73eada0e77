#include "dirichlet/cone_checks.hpp"

#include <algorithm>
#include <cmath>

#include "dirichlet/catalog.hpp"

namespace dirichlet {

namespace {

void record(CheckResult& r, double margin) {
    ++r.samples;
    if (margin < -r.tolerance) ++r.violations;
    r.worst = std::min(r.worst, margin);
}

} // namespace

CheckResult positivity_check(const ConeSet& f, int samples, SampleRng& rng, double tol) {
    CheckResult r{"positivity[" + f.name() + "]"};
    r.tolerance = tol;
    for (int i = 0; i < samples; ++i) {
        const SymMatrix a = rng.sym(f.dim());
        const SymMatrix p = rng.psd(f.dim());
        record(r, f.defect(a + p) - f.defect(a));
    }
    return r;
}

CheckResult involution_check(const ConeSet& f, int samples, SampleRng& rng) {
    CheckResult r{"involution[" + f.name() + "]"};
    r.tolerance = 0.0;
    const ConeSet dd = dual(dual(f));
    for (int i = 0; i < samples; ++i) {
        const SymMatrix a = rng.sym(f.dim());
        record(r, -std::fabs(dd.defect(a) - f.defect(a)));
    }
    return r;
}

CheckResult monotone_in_I_check(const ConeSet& f, int samples, SampleRng& rng) {
    CheckResult r{"monotone_in_I[" + f.name() + "]"};
    r.tolerance = 0.0;
    for (int i = 0; i < samples; ++i) {
        const SymMatrix a = rng.sym(f.dim());
        const double t1 = rng.uniform(-2.0, 2.0);
        const double dt = rng.uniform(1e-3, 2.0);
        record(r, f.defect(a.shifted(t1 + dt)) - f.defect(a.shifted(t1)));
    }
    return r;
}

CheckResult edge_consistency_check(const ConeSet& f, int samples, SampleRng& rng, double tol) {
    CheckResult r{"edge_consistency[" + f.name() + "]"};
    r.tolerance = tol;
    for (int i = 0; i < samples; ++i) {
        const SymMatrix b = rng.sym(f.dim());
        const double t = f.edge_threshold(b);
        record(r, -std::fabs(f.defect(b.shifted(t))));
    }
    return r;
}

CheckResult cone_scaling_check(const ConeSet& f, int samples, SampleRng& rng, bool homogeneous,
                               double tol) {
    CheckResult r{"cone_scaling[" + f.name() + "]"};
    r.tolerance = tol;
    if (!f.is_cone()) return r;
    for (int i = 0; i < samples; ++i) {
        const SymMatrix a = rng.sym(f.dim());
        const double s = std::exp(rng.uniform(-2.0, 2.0));
        const double da = f.defect(a);
        const double ds = f.defect(s * a);
        if (homogeneous) {
            record(r, -std::fabs(ds - s * da) / (1.0 + std::fabs(s * da)));
        } else {
            // Away from the boundary the sign must be scale invariant.
            if (std::fabs(da) < 1e-6) {
                ++r.samples;
                continue;
            }
            record(r, (da > 0.0) == (ds >= 0.0) ? 0.0 : -1.0);
        }
    }
    return r;
}

CheckResult mp_flag_check(const ConeSet& f) {
    CheckResult r{"mp_flag[" + f.name() + "]"};
    r.tolerance = 0.0;
    const double d0 = f.defect(SymMatrix(f.dim()));
    record(r, f.mp_satisfying() == (d0 <= 1e-12) ? 0.0 : -1.0);
    return r;
}

SymMatrix sample_member(const ConeSet& f, SampleRng& rng, double margin) {
    SymMatrix a = rng.sym(f.dim());
    if (f.defect(a) >= margin) return a;
    // I-line shift: B + tI enters F for t past the edge threshold.
    const double t = f.edge_threshold(a);
    SymMatrix shifted = a.shifted(t + std::fabs(rng.uniform(0.0, 1.0)));
    if (f.defect(shifted) < margin) {
        double extra = 1.0;
        while (f.defect(shifted) < margin && extra < 1e6) {
            shifted = shifted.shifted(extra);
            extra *= 2.0;
        }
    }
    return shifted;
}

CheckResult quadratic_duality_check(const ConeSet& f, int samples, SampleRng& rng, double tol) {
    CheckResult r{"quadratic_duality[" + f.name() + "]"};
    r.tolerance = tol;
    const ConeSet fd = dual(f);
    for (int i = 0; i < samples; ++i) {
        const SymMatrix a = sample_member(f, rng);
        const SymMatrix b = sample_member(fd, rng);
        record(r, (a + b).max_eigenvalue());
    }
    return r;
}

CheckResult maximum_principle_witness_check(const ConeSet& f, int samples, SampleRng& rng,
                                            double tol) {
    CheckResult r{"lemma_6_6_witness[" + f.name() + "]"};
    r.tolerance = tol;
    const double lambda = std::max(0.0, dual(f).edge_threshold(SymMatrix(f.dim())));
    for (int i = 0; i < samples; ++i) {
        const SymMatrix a = sample_member(f, rng);
        record(r, a.shifted(lambda).max_eigenvalue());
    }
    return r;
}

int run_cone_battery(int samples, uint64_t seed, std::vector<CheckResult>& out) {
    SampleRng rng(seed);
    const auto sets = catalog::battery();
    const int per_set = std::max(1, samples / static_cast<int>(sets.size()));

    for (const auto& f : sets) {
        out.push_back(positivity_check(f, per_set, rng));
        out.push_back(involution_check(f, per_set, rng));
        out.push_back(monotone_in_I_check(f, std::max(1, per_set / 4), rng));
        out.push_back(edge_consistency_check(f, std::max(1, per_set / 4), rng));
        const bool homogeneous = f.name().rfind("SL", 0) != 0;
        out.push_back(cone_scaling_check(f, std::max(1, per_set / 4), rng, homogeneous));
        out.push_back(mp_flag_check(f));
        out.push_back(quadratic_duality_check(f, std::max(1, per_set / 4), rng));
        out.push_back(maximum_principle_witness_check(f, std::max(1, per_set / 10), rng));
    }

    // Branch duality: dual(P_q) = P_{n-q-1}, pointwise.
    {
        CheckResult r{"branch_duality"};
        r.tolerance = 1e-9;
        for (int n : {3, 4}) {
            for (int q = 0; q < n; ++q) {
                const ConeSet lhs = dual(catalog::branch_q(q, catalog::Field::real, n));
                const ConeSet rhs = catalog::branch_q(n - q - 1, catalog::Field::real, n);
                for (int i = 0; i < samples / (2 * n); ++i) {
                    const SymMatrix a = rng.sym(n);
                    ++r.samples;
                    const double err = std::fabs(lhs.defect(a) - rhs.defect(a));
                    if (err > r.tolerance) ++r.violations;
                    r.worst = std::min(r.worst, -err);
                }
            }
        }
        out.push_back(r);
    }

    // Next-tier duality (Cor 10.2 pattern): dual(P_q(G(p))) = P_{n-q-p}(G(p)).
    {
        CheckResult r{"next_tier_duality"};
        r.tolerance = 1e-9;
        const int n = 4;
        for (int p = 1; p <= 2; ++p) {
            for (int q = 0; q + p <= n; ++q) {
                const ConeSet lhs = dual(catalog::Pq_G(p, q, catalog::Field::real, n));
                const ConeSet rhs = catalog::Pq_G(p, n - q - p, catalog::Field::real, n);
                for (int i = 0; i < samples / 8; ++i) {
                    const SymMatrix a = rng.sym(n);
                    ++r.samples;
                    const double err = std::fabs(lhs.defect(a) - rhs.defect(a));
                    if (err > r.tolerance) ++r.violations;
                    r.worst = std::min(r.worst, -err);
                }
            }
        }
        out.push_back(r);
    }

    // garding(det) defect equals lambda_1.
    {
        CheckResult r{"garding_det_vs_lambda1"};
        r.tolerance = 1e-8;
        const ConeSet fm = catalog::garding_det(3);
        for (int i = 0; i < samples; ++i) {
            const SymMatrix a = rng.sym(3);
            ++r.samples;
            const double err = std::fabs(fm.defect(a) - a.eig_sorted().front());
            if (err > r.tolerance) ++r.violations;
            r.worst = std::min(r.worst, -err);
        }
        out.push_back(r);
    }

    // Half-space self-duality through the origin.
    {
        CheckResult r{"halfspace_self_dual"};
        r.tolerance = 0.0;
        const SymMatrix a0 = SymMatrix::diagonal({1.0, 0.5, 2.0});
        const ConeSet h = catalog::halfspace(a0, 0.0);
        const ConeSet hd = dual(h);
        for (int i = 0; i < samples; ++i) {
            const SymMatrix a = rng.sym(3);
            ++r.samples;
            if (hd.defect(a) != h.defect(a)) ++r.violations;
        }
        out.push_back(r);
    }

    // SL duality: dual(SL(c)) = SL(-c).
    {
        CheckResult r{"sl_duality"};
        r.tolerance = 1e-10;
        const double c = 0.8;
        const ConeSet lhs = dual(catalog::SL(c, 3));
        const ConeSet rhs = catalog::SL(-c, 3);
        for (int i = 0; i < samples / 4; ++i) {
            const SymMatrix a = rng.sym(3);
            ++r.samples;
            const double err = std::fabs(lhs.defect(a) - rhs.defect(a));
            if (err > r.tolerance) ++r.violations;
            r.worst = std::min(r.worst, -err);
        }
        out.push_back(r);
    }

    int failures = 0;
    for (const auto& r : out)
        if (!r.pass()) ++failures;
    return failures;
}

} // namespace dirichlet
