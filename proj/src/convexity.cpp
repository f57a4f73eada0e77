#include "dirichlet/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dirichlet {

ConvexityReport strict_convexity_at(const Domain& d, const ConeSet& ray_set,
                                    std::span<const double> x) {
    ConvexityReport rep;
    rep.point.assign(x.begin(), x.end());
    const FieldJet j = d.jet_at(x);
    const auto normal = d.unit_normal(x);
    const SymMatrix pn = SymMatrix::outer(normal);
    const double scale = 1.0 + j.hessian.max_abs();

    double t0 = -1.0;
    for (double t = 1.0 / 16.0 * scale; t <= 1e7 * scale; t *= 2.0) {
        if (ray_defect(ray_set, j.hessian + t * pn) > 0.0) {
            t0 = t;
            break;
        }
    }
    if (t0 < 0.0) {
        rep.verdict = ConvexityReport::Verdict::fail;
        rep.margin = ray_defect(ray_set, j.hessian + (1e7 * scale) * pn);
        return rep;
    }
    // Persistence across {t0, 2 t0, ..., 2^8 t0}.
    double margin = std::numeric_limits<double>::infinity();
    double t = t0;
    for (int k = 0; k <= 8; ++k, t *= 2.0)
        margin = std::min(margin, ray_defect(ray_set, j.hessian + t * pn));
    rep.t_star = t0;
    rep.margin = margin;
    rep.verdict = margin > 0.0 ? ConvexityReport::Verdict::strict : ConvexityReport::Verdict::fail;
    return rep;
}

namespace {

std::string point_str(std::span<const double> x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + std::to_string(x[i]);
    return s + ")";
}

} // namespace

DefiningFunctionReport construct_global_defining(const Domain& d, const ConeSet& ray_set,
                                                 const ConeSet& f, int boundary_samples,
                                                 int interior_per_axis) {
    DefiningFunctionReport rep;
    const int n = d.dim();
    const auto boundary = boundary_sample(d, boundary_samples);

    // Stage (i): repair rho -> rho + C rho^2 until strict on the boundary.
    FieldPtr repaired;
    double repair_c = 0.0;
    bool repaired_ok = false;
    for (double c = 0.0; c <= 1.0e13; c = (c == 0.0 ? 1.0 : 2.0 * c)) {
        FieldPtr candidate = (c == 0.0) ? d.rho() : repaired_field(d.rho(), c);
        double worst = std::numeric_limits<double>::infinity();
        std::vector<double> worst_pt;
        for (const auto& x : boundary) {
            const FieldJet j = candidate->jet(x);
            const double rd = ray_defect(ray_set, j.hessian);
            if (rd < worst) {
                worst = rd;
                worst_pt = x;
            }
            if (worst <= 0.0) break;
        }
        rep.samples += static_cast<long>(boundary.size());
        if (worst > 0.0) {
            repaired = candidate;
            repair_c = c;
            rep.boundary_margin = worst;
            repaired_ok = true;
            break;
        }
        if (c >= 1.0e13)
            throw ConstructionError("boundary-repair", "no C <= 1e13 makes the boundary Hessians strict",
                                    worst_pt);
    }
    if (!repaired_ok) {
        // Loop exits only via break or throw; keep the analyzer happy.
        throw ConstructionError("boundary-repair", "unreachable", {});
    }
    rep.repair_c = repair_c;

    // Collar depth: walk inward along the normal and find a depth at which
    // strictness still holds at every sampled boundary ray.
    const double base_depth = 0.05 * d.bounding_box().max_radius();
    double depth = base_depth;
    double collar_level = 0.0; // min |rho~| over the verified inward shell
    for (int halvings = 0; halvings < 60; ++halvings, depth *= 0.5) {
        bool ok = true;
        double level = std::numeric_limits<double>::infinity();
        for (const auto& x : boundary) {
            const auto nu = d.unit_normal(x);
            std::vector<double> inner(x.begin(), x.end());
            for (int i = 0; i < n; ++i) inner[i] -= depth * nu[i];
            const FieldJet j = repaired->jet(inner);
            ++rep.samples;
            if (!(j.value < 0.0) || ray_defect(ray_set, j.hessian) <= 0.0) {
                ok = false;
                break;
            }
            level = std::min(level, -j.value);
        }
        if (ok) {
            collar_level = level;
            break;
        }
    }
    if (collar_level <= 0.0)
        throw ConstructionError("collar", "no inward shell with strict repaired Hessian", boundary.front());

    // Stage (ii): quadratic floor -r + delta |x|^2 kept below rho~ on the
    // collar: r at half the verified level, delta small against the box.
    const double r = 0.5 * collar_level;
    const double box_r = d.bounding_box().max_radius();
    const double delta = 0.5 * r / (box_r * box_r);
    rep.collar_r = r;
    rep.delta = delta;
    FieldPtr floor = shifted_paraboloid(delta, r, n);

    // Stage (iii): blend with eps below the collar gap.
    const double eps = 0.25 * r;
    rep.blend_eps = eps;
    FieldPtr result = smooth_max_field(repaired, floor, eps);
    rep.field = result;

    // Stage (iv): strictness of the blended Hessian on a dense interior
    // sample (lattice points of the bounding box with result < 0) plus the
    // boundary samples.
    {
        double worst = std::numeric_limits<double>::infinity();
        std::vector<double> worst_pt;
        const Box& box = d.bounding_box();
        std::vector<int> idx(n, 0);
        std::vector<double> x(n);
        const int m = interior_per_axis;
        bool done = false;
        while (!done) {
            for (int i = 0; i < n; ++i)
                x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (m - 1);
            if (result->value(x) < 0.0) {
                const FieldJet j = result->jet(x);
                const double rd = ray_defect(ray_set, j.hessian);
                ++rep.samples;
                if (rd < worst) {
                    worst = rd;
                    worst_pt = x;
                }
            }
            int k = 0;
            while (k < n && ++idx[k] == m) idx[k++] = 0;
            done = k == n;
        }
        for (const auto& bx : boundary) {
            const FieldJet j = result->jet(bx);
            const double rd = ray_defect(ray_set, j.hessian);
            ++rep.samples;
            if (rd < worst) {
                worst = rd;
                worst_pt = bx;
            }
        }
        if (!(worst > 0.0))
            throw ConstructionError("interior-verify",
                                    "blended Hessian not strict (ray defect " + std::to_string(worst) + ")",
                                    worst_pt);
        rep.interior_margin = worst;
    }

    // Stage (v): the display  C (rho - eps'/2 |x|^2) in F  for C in a ladder.
    {
        bool found = false;
        for (double eps2 = 0.5 * rep.interior_margin; eps2 >= 1e-12 && !found; eps2 *= 0.25) {
            for (double r0 = 1.0; r0 <= 1024.0 && !found; r0 *= 4.0) {
                bool ok = true;
                const Box& box = d.bounding_box();
                std::vector<int> idx(n, 0);
                std::vector<double> x(n);
                const int m = std::max(9, interior_per_axis / 2);
                bool done = false;
                while (!done && ok) {
                    for (int i = 0; i < n; ++i)
                        x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (m - 1);
                    if (result->value(x) < 0.0) {
                        const FieldJet j = result->jet(x);
                        const SymMatrix shifted = j.hessian.shifted(-eps2);
                        double c = r0;
                        for (int k = 0; k <= 8; ++k, c *= 2.0) {
                            ++rep.samples;
                            if (f.defect(c * shifted) < 0.0) {
                                ok = false;
                                break;
                            }
                        }
                    }
                    int k = 0;
                    while (k < n && ++idx[k] == m) idx[k++] = 0;
                    done = k == n;
                }
                if (ok) {
                    rep.display_epsilon = eps2;
                    rep.display_scale = r0;
                    found = true;
                }
            }
        }
        if (!found)
            throw ConstructionError("display-verify", "no (eps', R') pair certifies the scaled display",
                                    d.interior_point());
    }

    return rep;
}

} // namespace dirichlet
