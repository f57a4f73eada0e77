#pragma once

// Boundary convexity checks against Dirichlet-Ray sets and the constructive
// global defining function.

#include <string>
#include <vector>

#include "dirichlet/cone_set.hpp"
#include "dirichlet/domain.hpp"

namespace dirichlet {

struct ConvexityReport {
    std::vector<double> point;
    double margin = 0.0; // min ray defect over the persistence ladder
    double t_star = 0.0; // first t with Hess rho + t P_n strictly inside
    enum class Verdict { strict, fail } verdict = Verdict::fail;
    bool strict() const { return verdict == Verdict::strict; }
};

// Hess rho(x) + t P_n lands in Int(ray set) for all t past some t0: searches
// t0 on a geometric ladder and verifies persistence over {t0, 2 t0, ..., 256 t0}.
// margin is the smallest ray defect seen along the persistence ladder.
ConvexityReport strict_convexity_at(const Domain& d, const ConeSet& ray_set,
                                    std::span<const double> x);

class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& stage, const std::string& detail,
                      std::vector<double> worst_point)
        : std::runtime_error("global defining construction failed at stage " + stage + ": " + detail),
          stage_name(stage), point(std::move(worst_point)) {}
    std::string stage_name;
    std::vector<double> point;
};

struct DefiningFunctionReport {
    double repair_c = 0.0;      // coefficient of the rho + C rho^2 repair
    double collar_r = 0.0;      // quadratic floor level
    double delta = 0.0;         // paraboloid curvature / 2
    double blend_eps = 0.0;     // smoothing width
    double boundary_margin = 0.0;
    double interior_margin = 0.0;  // min ray defect over interior samples
    double display_epsilon = 0.0;  // eps' of the C(rho - eps/2 |x|^2) display
    double display_scale = 0.0;    // R' of the display
    long samples = 0;
    FieldPtr field;
};

// Theorem 5.12 construction: (i) boundary repair rho + C rho^2 until the
// Hessian is strictly inside the ray set on a boundary collar, (ii) choose
// r, delta with -r + delta |x|^2 below the repaired function near the
// boundary, (iii) blend by the smoothed maximum, (iv) verify strictness on a
// dense interior sample, (v) verify that C'(Hess - eps' I) stays in F along a
// scale ladder.  Throws ConstructionError naming the failing stage and its
// worst sample point.
DefiningFunctionReport construct_global_defining(const Domain& d, const ConeSet& ray_set,
                                                 const ConeSet& f, int boundary_samples = 128,
                                                 int interior_per_axis = 33);

} // namespace dirichlet
