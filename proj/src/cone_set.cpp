#include "dirichlet/cone_set.hpp"

#include <algorithm>
#include <cmath>

namespace dirichlet {

ConeSet::ConeSet(int n, DefectFn defect, std::string name, bool is_cone,
                 std::optional<ThresholdFn> threshold, std::optional<bool> mp_flag,
                 bool diagonal_only) {
    auto impl = std::make_shared<Impl>();
    impl->n = n;
    impl->defect = std::move(defect);
    impl->threshold = std::move(threshold);
    impl->name = std::move(name);
    impl->cone = is_cone;
    impl->diagonal_only = diagonal_only;
    impl->mp = mp_flag.has_value() ? *mp_flag : !(impl->defect(SymMatrix(n)) > 0.0);
    impl_ = std::move(impl);
}

double ConeSet::defect(const SymMatrix& a) const {
    if (!impl_) throw std::logic_error("empty ConeSet");
    if (a.dim() != impl_->n)
        throw DimensionMismatch("defect: matrix dimension " + std::to_string(a.dim()) +
                                " does not match set dimension " + std::to_string(impl_->n));
    return impl_->defect(a);
}

double ConeSet::edge_threshold(const SymMatrix& b) const {
    if (b.dim() != impl_->n) throw DimensionMismatch("edge_threshold dimension mismatch");
    if (impl_->threshold) return (*impl_->threshold)(b);

    const double scale = std::max(1.0, b.max_abs());
    const double bound = 1e9 * scale;
    double lo = 0.0, hi = 0.0;
    double f0 = impl_->defect(b);
    if (f0 >= 0.0) {
        // Walk down until outside.
        double step = scale;
        hi = 0.0;
        lo = -step;
        while (impl_->defect(b.shifted(lo)) >= 0.0) {
            hi = lo;
            step *= 2.0;
            lo = -step;
            if (step > bound) throw DegenerateSetError("edge_threshold: set " + impl_->name +
                                                       " looks degenerate (no lower edge within 1e9)");
        }
    } else {
        double step = scale;
        lo = 0.0;
        hi = step;
        while (impl_->defect(b.shifted(hi)) < 0.0) {
            lo = hi;
            step *= 2.0;
            hi = step;
            if (step > bound) throw DegenerateSetError("edge_threshold: set " + impl_->name +
                                                       " looks degenerate (no upper edge within 1e9)");
        }
    }
    // defect(b + lo I) < 0 <= defect(b + hi I); bisect the monotone map.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = impl_->defect(b.shifted(mid));
        if (std::fabs(fm) <= 1e-12 && (hi - lo) <= 1e-10 * scale) return mid;
        if (fm >= 0.0)
            hi = mid;
        else
            lo = mid;
        if ((hi - lo) <= 1e-15 * scale) break;
    }
    return hi;
}

ConeSet dual(const ConeSet& f) {
    ConeSet::DefectFn g = [f](const SymMatrix& a) { return -f.defect(-1.0 * a); };
    std::optional<ConeSet::ThresholdFn> thr;
    if (f.has_analytic_threshold())
        thr = [f](const SymMatrix& b) { return -f.edge_threshold(-1.0 * b); };
    return ConeSet(f.dim(), std::move(g), "dual(" + f.name() + ")", f.is_cone(), std::move(thr),
                   std::nullopt, f.diagonal_only());
}

ConeSet translate(const ConeSet& f, const SymMatrix& a0) {
    if (a0.dim() != f.dim()) throw DimensionMismatch("translate dimension mismatch");
    ConeSet::DefectFn g = [f, a0](const SymMatrix& a) { return f.defect(a - a0); };
    std::optional<ConeSet::ThresholdFn> thr;
    if (f.has_analytic_threshold())
        thr = [f, a0](const SymMatrix& b) { return f.edge_threshold(b - a0); };
    bool diag = f.diagonal_only();
    if (diag)
        for (int i = 0; i < a0.dim() && diag; ++i)
            for (int j = 0; j < i; ++j)
                if (a0(i, j) != 0.0) { diag = false; break; }
    return ConeSet(f.dim(), std::move(g), "translate(" + f.name() + ")", false, std::move(thr),
                   std::nullopt, diag);
}

ConeSet conjugate(const ConeSet& f, const Matrix& g) {
    if (g.rows() != f.dim() || g.cols() != f.dim())
        throw DimensionMismatch("conjugate dimension mismatch");
    const Matrix ginv = g.inverse(); // throws on singular g
    ConeSet::DefectFn d = [f, ginv](const SymMatrix& a) { return f.defect(congruence(ginv, a)); };
    return ConeSet(f.dim(), std::move(d), "conjugate(" + f.name() + ")", f.is_cone());
}

ConeSet intersect(const std::vector<ConeSet>& fs) {
    if (fs.empty()) throw std::invalid_argument("intersect: empty list");
    const int n = fs.front().dim();
    bool cone = true, diag = true, all_thr = true;
    std::string name = "intersect(";
    for (size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].dim() != n) throw DimensionMismatch("intersect: mixed dimensions");
        cone = cone && fs[i].is_cone();
        diag = diag && fs[i].diagonal_only();
        all_thr = all_thr && fs[i].has_analytic_threshold();
        name += (i ? "," : "") + fs[i].name();
    }
    name += ")";
    auto members = fs;
    ConeSet::DefectFn d = [members](const SymMatrix& a) {
        double m = members.front().defect(a);
        for (size_t i = 1; i < members.size(); ++i) m = std::min(m, members[i].defect(a));
        return m;
    };
    std::optional<ConeSet::ThresholdFn> thr;
    if (all_thr)
        thr = [members](const SymMatrix& b) {
            double t = members.front().edge_threshold(b);
            for (size_t i = 1; i < members.size(); ++i) t = std::max(t, members[i].edge_threshold(b));
            return t;
        };
    return ConeSet(n, std::move(d), std::move(name), cone, std::move(thr), std::nullopt, diag);
}

ConeSet set_union(const std::vector<ConeSet>& fs) {
    if (fs.empty()) throw std::invalid_argument("union: empty list");
    const int n = fs.front().dim();
    bool cone = true, diag = true, all_thr = true;
    std::string name = "union(";
    for (size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].dim() != n) throw DimensionMismatch("union: mixed dimensions");
        cone = cone && fs[i].is_cone();
        diag = diag && fs[i].diagonal_only();
        all_thr = all_thr && fs[i].has_analytic_threshold();
        name += (i ? "," : "") + fs[i].name();
    }
    name += ")";
    auto members = fs;
    ConeSet::DefectFn d = [members](const SymMatrix& a) {
        double m = members.front().defect(a);
        for (size_t i = 1; i < members.size(); ++i) m = std::max(m, members[i].defect(a));
        return m;
    };
    std::optional<ConeSet::ThresholdFn> thr;
    if (all_thr)
        thr = [members](const SymMatrix& b) {
            double t = members.front().edge_threshold(b);
            for (size_t i = 1; i < members.size(); ++i) t = std::min(t, members[i].edge_threshold(b));
            return t;
        };
    return ConeSet(n, std::move(d), std::move(name), cone, std::move(thr), std::nullopt, diag);
}

namespace {

SymMatrix restrict_to_axes(const SymMatrix& a, const std::vector<int>& axes) {
    SymMatrix r(static_cast<int>(axes.size()));
    for (size_t i = 0; i < axes.size(); ++i)
        for (size_t j = 0; j <= i; ++j) r.set(static_cast<int>(i), static_cast<int>(j), a(axes[i], axes[j]));
    return r;
}

} // namespace

ConeSet product_extend(const ConeSet& f0, int ambient_n, const std::vector<int>& axes) {
    if (static_cast<int>(axes.size()) != f0.dim())
        throw std::invalid_argument("product_extend: axes count must equal dim(F0)");
    if (f0.dim() >= ambient_n)
        throw std::invalid_argument("product_extend: subspace must be proper");
    for (int ax : axes)
        if (ax < 0 || ax >= ambient_n)
            throw std::invalid_argument("product_extend: axis out of range (subspace must be coordinate-representable)");
    ConeSet::DefectFn d = [f0, axes](const SymMatrix& a) { return f0.defect(restrict_to_axes(a, axes)); };
    std::optional<ConeSet::ThresholdFn> thr;
    if (f0.has_analytic_threshold())
        thr = [f0, axes](const SymMatrix& b) { return f0.edge_threshold(restrict_to_axes(b, axes)); };
    return ConeSet(ambient_n, std::move(d), "extend(" + f0.name() + ")", f0.is_cone(), std::move(thr),
                   std::nullopt, f0.diagonal_only());
}

ConeSet product_extend(const ConeSet& f0, int ambient_n) {
    std::vector<int> axes(f0.dim());
    for (int i = 0; i < f0.dim(); ++i) axes[i] = i;
    return product_extend(f0, ambient_n, axes);
}

double ray_defect(const ConeSet& f, const SymMatrix& a, const RayLadder& ladder) {
    if (f.is_cone()) return f.defect(a);

    const double scale = 1.0 + a.max_abs();
    auto ladder_ok = [&](double eps) {
        const SymMatrix shifted = a.shifted(-eps);
        double c = ladder.base;
        for (int k = 0; k <= ladder.steps; ++k, c *= 2.0)
            if (f.defect(c * shifted) < 0.0) return false;
        return true;
    };

    if (!ladder_ok(0.0)) {
        double worst = 0.0;
        double c = ladder.base;
        for (int k = 0; k <= ladder.steps; ++k, c *= 2.0)
            worst = std::min(worst, f.defect(c * a) / c);
        return worst;
    }
    double lo = 0.0, hi = 2.0 * scale;
    if (ladder_ok(hi)) return hi;
    while (hi - lo > ladder.resolution * scale) {
        const double mid = 0.5 * (lo + hi);
        if (ladder_ok(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace dirichlet
