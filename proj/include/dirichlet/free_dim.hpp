#pragma once

// Free dimension of a Dirichlet-Ray set: the maximal dimension of a subspace
// W on which the set imposes no constraint.  Equivalent (Morse/strict forms):
// free-dim = n - min{ dim N : P_N in Int F }, which is what the search
// computes through ray_defect(P_N) > 0.

#include <cstdint>
#include <vector>

#include "dirichlet/cone_set.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet {

struct FreeDimReport {
    int free_dim = 0;
    std::vector<std::vector<double>> witness_free_subspace;  // basis of W
    std::vector<std::vector<double>> witness_strict_normal;  // basis of N, P_N in Int F
    long samples_used = 0;
};

// Searches coordinate subspaces of every dimension plus `random_frames`
// random orthonormal frames per dimension (seeded, deterministic).  Exact on
// the catalog sets whose strict normals are coordinate-representable; a
// lower-bound certificate otherwise.
FreeDimReport free_dim(const ConeSet& f, uint64_t seed = kDefaultSeed, int random_frames = 1000);

} // namespace dirichlet
