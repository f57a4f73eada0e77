#include "dirichlet/grid_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dirichlet/cone_checks.hpp"

namespace dirichlet {

AnalysisReport SubaffineReport::combined() const {
    AnalysisReport r;
    r.property = "subaffine";
    if (pointwise.pass != probe.pass) r.property += " [pointwise/probe disagree at kinks]";
    r.pass = pointwise.pass && probe.pass;
    r.tolerance = pointwise.tolerance;
    if (pointwise.worst_margin <= probe.worst_margin) {
        r.worst_margin = pointwise.worst_margin;
        r.worst_point = pointwise.worst_point;
    } else {
        r.worst_margin = probe.worst_margin;
        r.worst_point = probe.worst_point;
    }
    return r;
}

SubaffineReport subaffine_report(const GridField& u, double tol, SampleRng& rng, int probes) {
    SubaffineReport rep;
    rep.pointwise.property = "subaffine-pointwise";
    rep.pointwise.tolerance = tol;
    rep.pointwise.worst_margin = std::numeric_limits<double>::infinity();
    u.for_each_interior([&](const std::vector<int>& idx) {
        const double lmax = discrete_hessian(u, idx).eig_sorted().back();
        if (lmax < rep.pointwise.worst_margin) {
            rep.pointwise.worst_margin = lmax;
            rep.pointwise.worst_point = idx;
        }
    });
    rep.pointwise.pass = rep.pointwise.worst_margin >= -tol;

    rep.probe.property = "subaffine-probe";
    rep.probe.tolerance = tol;
    rep.probe.worst_margin = std::numeric_limits<double>::infinity();
    const int n = u.dim();
    for (int trial = 0; trial < probes; ++trial) {
        // Random sub-box with at least one interior point.
        std::vector<int> lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            const int m = u.counts()[i];
            const int a = rng.uniform_int(0, m - 3);
            const int b = rng.uniform_int(a + 2, m - 1);
            lo[i] = a;
            hi[i] = b;
        }
        // Touching affine majorant on the sub-box boundary: a(x) = g.x + c
        // with c = max over boundary of (u - g.x).
        std::vector<double> g(n);
        for (double& v : g) v = rng.uniform(-2.0, 2.0);
        double c = -std::numeric_limits<double>::infinity();
        double max_abs_a = 0.0;
        std::vector<int> idx(lo);
        bool done = false;
        auto affine = [&](const std::vector<double>& x) {
            double s = c;
            for (int i = 0; i < n; ++i) s += g[i] * x[i];
            return s;
        };
        while (!done) {
            bool on_sub_boundary = false;
            for (int i = 0; i < n; ++i)
                if (idx[i] == lo[i] || idx[i] == hi[i]) on_sub_boundary = true;
            if (on_sub_boundary) {
                const auto x = u.point(idx);
                double gx = 0.0;
                for (int i = 0; i < n; ++i) gx += g[i] * x[i];
                c = std::max(c, u.at(idx) - gx);
            }
            int k = n - 1;
            while (k >= 0 && ++idx[k] > hi[k]) idx[k--] = lo[k];
            done = k < 0;
        }
        // Now u <= a on the discrete boundary; need u <= a + tol * scale inside.
        idx = lo;
        done = false;
        while (!done) {
            const auto x = u.point(idx);
            max_abs_a = std::max(max_abs_a, std::fabs(affine(x)));
            int k = n - 1;
            while (k >= 0 && ++idx[k] > hi[k]) idx[k--] = lo[k];
            done = k < 0;
        }
        const double scale = 1.0 + max_abs_a;
        idx = lo;
        done = false;
        while (!done) {
            const auto x = u.point(idx);
            const double margin = (affine(x) - u.at(idx)) / scale;
            if (margin < rep.probe.worst_margin) {
                rep.probe.worst_margin = margin;
                rep.probe.worst_point = idx;
            }
            int k = n - 1;
            while (k >= 0 && ++idx[k] > hi[k]) idx[k--] = lo[k];
            done = k < 0;
        }
    }
    rep.probe.pass = rep.probe.worst_margin >= -tol;
    return rep;
}

bool TypeReport::pass() const {
    if (!pointwise.pass) return false;
    for (const auto& p : dual_probes)
        if (!p.pass()) return false;
    return true;
}

TypeReport type_report(const GridField& u, const ConeSet& f, double tol, SampleRng& rng,
                       int dual_probe_count) {
    TypeReport rep;
    rep.pointwise.property = "type[" + f.name() + "]";
    rep.pointwise.tolerance = tol;
    rep.pointwise.worst_margin = std::numeric_limits<double>::infinity();
    u.for_each_interior([&](const std::vector<int>& idx) {
        const double d = f.defect(discrete_hessian(u, idx));
        if (d < rep.pointwise.worst_margin) {
            rep.pointwise.worst_margin = d;
            rep.pointwise.worst_point = idx;
        }
    });
    rep.pointwise.pass = rep.pointwise.worst_margin >= -tol;

    const ConeSet fd = dual(f);
    for (int k = 0; k < dual_probe_count; ++k) {
        const SymMatrix b = sample_member(fd, rng, 0.0);
        GridField sum = u;
        sum.for_each_index([&](const std::vector<int>& idx) {
            const auto x = sum.point(idx);
            sum.at(idx) = u.at(idx) + 0.5 * b.quad_form(x);
        });
        // The added quadratic scales the natural comparison tolerance.
        const double qtol = tol * (1.0 + b.max_abs());
        rep.dual_probes.push_back(subaffine_report(sum, qtol, rng, 20));
    }
    return rep;
}

GridField sup_convolution(const GridField& u, double eps, double bound_n) {
    if (!(eps > 0.0)) throw std::invalid_argument("sup_convolution: eps must be positive");
    if (u.max_abs() > bound_n)
        throw std::invalid_argument("sup_convolution: |u| exceeds the declared bound N");
    const double h = u.spacing();
    const double delta = std::sqrt(2.0 * eps * bound_n);
    const int margin = static_cast<int>(std::ceil((delta + h) / h));
    const int n = u.dim();

    Box shrunk;
    for (int i = 0; i < n; ++i) {
        shrunk.lo.push_back(u.box().lo[i] + margin * h);
        shrunk.hi.push_back(u.box().hi[i] - margin * h);
        if (!(shrunk.lo.back() < shrunk.hi.back() - 0.5 * h))
            throw std::invalid_argument("sup_convolution: delta window leaves no interior");
    }
    GridField out(shrunk, h);

    // Precompute the lattice offsets |z| <= delta + h.  Offsets beyond delta
    // can never attain the maximum (u(y) - u(x) <= 2N = delta^2/eps) but make
    // the -2/eps diagonal bound hold without window clipping.
    std::vector<std::vector<int>> offsets;
    std::vector<double> penalty;
    std::vector<int> z(n, -margin);
    bool done = false;
    while (!done) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) r2 += (z[i] * h) * (z[i] * h);
        if (r2 <= (delta + h) * (delta + h)) {
            offsets.push_back(z);
            penalty.push_back(r2 / eps);
        }
        int k = n - 1;
        while (k >= 0 && ++z[k] > margin) z[k--] = -margin;
        done = k < 0;
    }

    out.for_each_index([&](const std::vector<int>& idx) {
        std::vector<int> src(n);
        double best = -std::numeric_limits<double>::infinity();
        for (size_t t = 0; t < offsets.size(); ++t) {
            for (int i = 0; i < n; ++i) src[i] = idx[i] + margin - offsets[t][i];
            best = std::max(best, u.at(src) - penalty[t]);
        }
        out.at(idx) = best;
    });
    return out;
}

double quasiconvex_modulus(const GridField& u) {
    double min_lambda = std::numeric_limits<double>::infinity();
    u.for_each_interior([&](const std::vector<int>& idx) {
        min_lambda = std::min(min_lambda, discrete_hessian(u, idx).eig_sorted().front());
    });
    return std::max(0.0, -min_lambda);
}

double largest_eigenvalue_K(const GridField& v, const std::vector<int>& idx, int directions) {
    const int n = v.dim();
    const double h = v.spacing();
    const auto x = v.point(idx);

    // Centered gradient plus one-sided derivative consistency.
    std::vector<double> grad(n);
    double grad_norm = 0.0;
    double onesided_gap = 0.0;
    {
        std::vector<int> p(idx);
        for (int i = 0; i < n; ++i) {
            p[i] = idx[i] + 1;
            const double up = v.at(p);
            p[i] = idx[i] - 1;
            const double um = v.at(p);
            p[i] = idx[i];
            grad[i] = (up - um) / (2.0 * h);
            const double dplus = (up - v.at(idx)) / h;
            const double dminus = (v.at(idx) - um) / h;
            onesided_gap = std::max(onesided_gap, std::fabs(dplus - dminus));
            grad_norm += grad[i] * grad[i];
        }
        grad_norm = std::sqrt(grad_norm);
    }
    if (onesided_gap > 0.5 * (1.0 + grad_norm))
        return std::numeric_limits<double>::infinity();

    const std::vector<double> ladder = {4.0 * h, 8.0 * h, 16.0 * h};
    std::vector<double> estimates;
    for (double eps : ladder) {
        for (int i = 0; i < n; ++i) {
            if (x[i] - eps < v.box().lo[i] || x[i] + eps > v.box().hi[i])
                throw std::invalid_argument("largest_eigenvalue_K: ladder leaves the grid");
        }
        double sup = -std::numeric_limits<double>::infinity();
        if (n == 2) {
            for (int k = 0; k < directions; ++k) {
                const double th = 2.0 * std::numbers::pi * k / directions;
                const std::vector<double> y = {std::cos(th), std::sin(th)};
                std::vector<double> q(n);
                double gy = 0.0;
                for (int i = 0; i < n; ++i) {
                    q[i] = x[i] + eps * y[i];
                    gy += grad[i] * y[i];
                }
                sup = std::max(sup, v.interpolate(q) - v.at(idx) - eps * gy);
            }
        } else {
            const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
            const int count = 2 * directions;
            for (int k = 0; k < count; ++k) {
                const double zz = 1.0 - 2.0 * (k + 0.5) / count;
                const double r = std::sqrt(std::max(0.0, 1.0 - zz * zz));
                const double th = golden * k;
                const std::vector<double> y = {r * std::cos(th), r * std::sin(th), zz};
                std::vector<double> q(n);
                double gy = 0.0;
                for (int i = 0; i < n; ++i) {
                    q[i] = x[i] + eps * y[i];
                    gy += grad[i] * y[i];
                }
                sup = std::max(sup, v.interpolate(q) - v.at(idx) - eps * gy);
            }
        }
        estimates.push_back(2.0 / (eps * eps) * sup);
    }
    // 1/eps growth across the halving ladder marks non-differentiability.
    const double base = 1.0 + std::fabs(estimates[2]);
    if (estimates[0] > 1.6 * std::fabs(estimates[1]) + 0.1 * base &&
        estimates[1] > 1.6 * std::fabs(estimates[2]) + 0.1 * base && estimates[0] > base)
        return std::numeric_limits<double>::infinity();
    return *std::max_element(estimates.begin(), estimates.end());
}

AnalysisReport comparison_check(const GridField& u, const GridField& v, const ConeSet& f, double tol,
                                SampleRng& rng) {
    AnalysisReport rep;
    rep.property = "comparison[" + f.name() + "]";
    rep.tolerance = tol;
    if (u.dim() != v.dim() || u.size() != v.size())
        throw DimensionMismatch("comparison_check: grids do not match");

    const TypeReport tu = type_report(u, f, tol, rng, 2);
    GridField neg_v = v;
    neg_v.for_each_index([&](const std::vector<int>& idx) { neg_v.at(idx) = -v.at(idx); });
    const TypeReport tv = type_report(neg_v, dual(f), tol, rng, 2);
    if (!tu.pass() || !tv.pass()) {
        rep.property += " [precondition failed: " +
                        std::string(!tu.pass() ? "u not of type F" : "-v not of type dual(F)") + "]";
        rep.pass = false;
        rep.worst_margin = std::min(tu.pointwise.worst_margin, tv.pointwise.worst_margin);
        return rep;
    }

    bool boundary_ordered = true;
    u.for_each_boundary([&](const std::vector<int>& idx) {
        if (u.at(idx) > v.at(idx) + 1e-12 * (1.0 + v.max_abs())) boundary_ordered = false;
    });
    if (!boundary_ordered) {
        rep.property += " [boundary not ordered; nothing to check]";
        rep.pass = true;
        rep.worst_margin = 0.0;
        return rep;
    }

    rep.worst_margin = std::numeric_limits<double>::infinity();
    u.for_each_index([&](const std::vector<int>& idx) {
        const double margin = v.at(idx) + tol - u.at(idx);
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_point = idx;
        }
    });
    rep.pass = rep.worst_margin >= 0.0;
    return rep;
}

} // namespace dirichlet
