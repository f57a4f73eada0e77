#pragma once

// Monotone Gauss-Seidel solver for the F-Dirichlet problem on box grids.
//
// The center value enters the discrete Hessian only through -(2v/h^2) I, so
// the pointwise equation defect(F, D^2 u(p)) = 0 is solved exactly by the
// I-line edge threshold: v* = -(h^2/2) edge_threshold(F, H0) with H0 the
// stencil Hessian at center value 0.

#include <cstdint>
#include <string>

#include "dirichlet/cone_set.hpp"
#include "dirichlet/expr.hpp"
#include "dirichlet/grid_field.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet {

enum class InitStrategy { affine_interp, boundary_min, harmonic };
enum class SweepOrder { lexicographic, red_black };

struct SolveConfig {
    ConeSet set;
    Box box;
    double h = 1.0 / 32.0;
    Expr phi;                      // boundary data, evaluated on the boundary layer
    InitStrategy init = InitStrategy::affine_interp;
    SweepOrder sweep = SweepOrder::lexicographic;
    double damping = 0.0;          // 0 = auto: 1.0 for diagonal-only sets, else 0.8
    long max_iters = 200000;
    double tol_update = 0.0;       // 0 = auto: 1e-9 * scale(phi)
    double tol_residual = 0.0;     // 0 = auto: 1e-6 / h^2
    uint64_t seed = kDefaultSeed;  // randomized inits in the uniqueness probe
    int init_noise = 0;            // nonzero: seeded interior perturbation on top of init
};

struct SolveReport {
    long iterations = 0;
    double final_max_update = 0.0;
    double residual_sup = 0.0;   // sup over interior of |defect(F, D^2 u)|
    double dual_residual = 0.0;  // sup of |defect(dual F, -D^2 u)|
    double wall_time = 0.0;      // seconds; informational, not deterministic
    bool converged = false;
    double tol_update = 0.0;
    double tol_residual = 0.0;
};

struct SolveResult {
    GridField u;
    SolveReport report;
};

SolveResult solve_dirichlet(const SolveConfig& cfg);

struct PairCheckReport {
    std::string name;
    double worst = 0.0; // most negative margin / largest deviation
    double tolerance = 0.0;
    bool pass = false;
    SolveReport first, second;
};

// Verifies defect-dominance of F2 over F1 on `inclusion_samples` random
// matrices (refusing to run otherwise), solves both problems and checks the
// pointwise order u1 <= u2 + 2 tol_residual h^2.
PairCheckReport nesting_check(const SolveConfig& cfg1, const SolveConfig& cfg2,
                              int inclusion_samples = 10000);

// Solves (F, phi) and (dual F, -phi); the two solutions must be negatives of
// one another within 2 tol_update + 10 tol_residual h^2.
PairCheckReport duality_reflection_check(const SolveConfig& cfg);

struct UniquenessReport {
    std::string name;
    int restarts = 0;
    double max_pair_distance = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string worst_pair;
};

// Re-solves from `restarts` distinct init strategies/seeds; all runs must
// agree pairwise within 5 tol_update.
UniquenessReport uniqueness_probe(const SolveConfig& cfg, int restarts = 5);

} // namespace dirichlet
