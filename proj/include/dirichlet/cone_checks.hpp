#pragma once

// Property batteries over the catalog: positivity, duality identities,
// edge-threshold consistency, maximum-principle flags and the quadratic
// duality probe.  The CLI `verify-cones` subcommand and the acceptance suite
// both run these.

#include <string>
#include <vector>

#include "dirichlet/cone_set.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet {

struct CheckResult {
    std::string name;
    long samples = 0;
    long violations = 0;
    double worst = 0.0; // most negative margin (or largest error) observed
    double tolerance = 0.0;
    bool pass() const { return violations == 0; }
};

// defect(A + P) >= defect(A) - tol for sampled A and P >= 0.
CheckResult positivity_check(const ConeSet& f, int samples, SampleRng& rng, double tol = 1e-9);

// defect_{dual(dual F)} == defect_F pointwise, exactly.
CheckResult involution_check(const ConeSet& f, int samples, SampleRng& rng);

// defect(B + tI) strictly increasing in t on sampled pairs.
CheckResult monotone_in_I_check(const ConeSet& f, int samples, SampleRng& rng);

// |defect(B + edge_threshold(B) I)| <= tol.
CheckResult edge_consistency_check(const ConeSet& f, int samples, SampleRng& rng, double tol = 1e-9);

// Homogeneity for cone sets: defect(sA) = s defect(A) when 1-homogeneous,
// else sign(defect(sA)) = sign(defect(A)).
CheckResult cone_scaling_check(const ConeSet& f, int samples, SampleRng& rng, bool homogeneous,
                               double tol = 1e-9);

// mp flag consistency: mp_satisfying() <=> defect(0) <= 0.
CheckResult mp_flag_check(const ConeSet& f);

// lambda_max(A + B) >= -tol for members A of F and B of dual(F).
CheckResult quadratic_duality_check(const ConeSet& f, int samples, SampleRng& rng, double tol = 1e-8);

// There is lambda >= 0 with F + lambda I inside {lambda_max >= 0}; the witness
// is max(0, edge_threshold(dual F, 0)).  Checks sampled members.
CheckResult maximum_principle_witness_check(const ConeSet& f, int samples, SampleRng& rng,
                                            double tol = 1e-8);

// A member of F with defect >= margin, via I-line shifting of a raw sample.
SymMatrix sample_member(const ConeSet& f, SampleRng& rng, double margin = 0.0);

// Full battery over the standard catalog; every result appended to `out`.
// Returns the number of failing checks.
int run_cone_battery(int samples, uint64_t seed, std::vector<CheckResult>& out);

} // namespace dirichlet
