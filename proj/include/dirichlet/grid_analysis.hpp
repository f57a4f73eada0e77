#pragma once

// Grid-level potential theory: subaffinity, type-F membership, quasiconvexity,
// sup-convolution and the largest-eigenvalue probe.

#include <optional>
#include <string>

#include "dirichlet/cone_set.hpp"
#include "dirichlet/grid_field.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet {

struct AnalysisReport {
    std::string property;
    std::vector<int> worst_point;
    double worst_margin = 0.0;
    bool pass = false;
    double tolerance = 0.0;
};

struct SubaffineReport {
    AnalysisReport pointwise; // lambda_max(D^2 u) >= -tol at interior points
    AnalysisReport probe;     // max principle against affine majorants on random sub-boxes
    bool pass() const { return pointwise.pass && probe.pass; }
    // The two can disagree at kinks; combined() flags that in the name.
    AnalysisReport combined() const;
};

// Pointwise check plus a randomized max-principle probe: `probes` random
// sub-boxes K and touching affine majorants a (u <= a on the discrete
// boundary of K by construction), requiring u <= a + tol * (1 + max|a|) on K.
SubaffineReport subaffine_report(const GridField& u, double tol, SampleRng& rng, int probes = 100);

struct TypeReport {
    AnalysisReport pointwise;              // defect(F, D^2 u) >= -tol at interior points
    std::vector<SubaffineReport> dual_probes; // subaffinity of u + quadratic from dual(F)
    bool pass() const;
};

// Pointwise defect check plus the dual probe: u + (1/2) x^T B x must be
// subaffine for sampled quadratics B in dual(F).
TypeReport type_report(const GridField& u, const ConeSet& f, double tol, SampleRng& rng,
                       int dual_probe_count = 6);

// Pointwise maximum over lattice shifts |z| <= delta + h of u(x - z) - |z|^2/eps,
// on the delta-shrunk box, delta = sqrt(2 eps N).  The one-cell guard ring
// changes no values (those terms never attain the maximum) and keeps the
// diagonal curvature bound exact.  Requires |u| <= N; throws when the shrunk
// box has no interior.
GridField sup_convolution(const GridField& u, double eps, double bound_n);

// max(0, -min over interior points of lambda_min(D^2 u)); u is
// lambda-quasiconvex at grid scale iff lambda >= this.
double quasiconvex_modulus(const GridField& u);

// Largest-eigenvalue probe at a point: estimate over the ladder
// eps in {4h, 8h, 16h} of 2 eps^-2 sup_{|y|=1} {v(x+eps y) - v(x) - eps grad v . y},
// with the gradient by centered differences.  Returns +infinity when the
// one-sided derivatives disagree or the ladder diverges like 1/eps.
double largest_eigenvalue_K(const GridField& v, const std::vector<int>& idx, int directions = 64);

// u <= v on the boundary layer implies u <= v + tol on the whole grid;
// preconditions: u of type F, -v of type dual(F).
AnalysisReport comparison_check(const GridField& u, const GridField& v, const ConeSet& f, double tol,
                                SampleRng& rng);

} // namespace dirichlet
