#include "dirichlet/free_dim.hpp"

#include <algorithm>
#include <cmath>

namespace dirichlet {

namespace {

// Enumerate k-element subsets of {0,...,n-1}.
bool next_subset(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

std::vector<std::vector<double>> coordinate_frame(const std::vector<int>& axes, int n) {
    std::vector<std::vector<double>> frame;
    for (int ax : axes) {
        std::vector<double> e(n, 0.0);
        e[ax] = 1.0;
        frame.push_back(std::move(e));
    }
    return frame;
}

std::vector<std::vector<double>> complement_frame(const std::vector<int>& axes, int n) {
    std::vector<bool> used(n, false);
    for (int ax : axes) used[ax] = true;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (!used[i]) rest.push_back(i);
    return coordinate_frame(rest, n);
}

// Orthonormal completion of a frame to the full space.
std::vector<std::vector<double>> orthogonal_complement(const std::vector<std::vector<double>>& frame,
                                                       int n) {
    std::vector<std::vector<double>> basis = frame;
    std::vector<std::vector<double>> out;
    for (int ax = 0; ax < n && static_cast<int>(out.size()) < n - static_cast<int>(frame.size()); ++ax) {
        std::vector<double> v(n, 0.0);
        v[ax] = 1.0;
        for (const auto& u : basis) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d += u[i] * v[i];
            for (int i = 0; i < n; ++i) v[i] -= d * u[i];
        }
        double norm2 = 0.0;
        for (double x : v) norm2 += x * x;
        if (norm2 < 1e-12) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) x *= inv;
        basis.push_back(v);
        out.push_back(basis.back());
    }
    return out;
}

} // namespace

FreeDimReport free_dim(const ConeSet& f, uint64_t seed, int random_frames) {
    const int n = f.dim();
    SampleRng rng(seed);
    FreeDimReport report;
    report.free_dim = 0;
    report.witness_strict_normal = coordinate_frame([&] {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        return all;
    }(), n);

    // Strictness floor: Int membership must clear eigensolver roundoff (a
    // rank-deficient projection's zero eigenvalue lands at ~1e-17).
    constexpr double kStrict = 1e-9;

    for (int dim_n = 1; dim_n <= n; ++dim_n) {
        bool found = false;
        // Coordinate subspaces first; many catalog strict normals are
        // coordinate-representable, making the answer exact.
        std::vector<int> axes(dim_n);
        for (int i = 0; i < dim_n; ++i) axes[i] = i;
        do {
            ++report.samples_used;
            const SymMatrix pn = SymMatrix::projection(coordinate_frame(axes, n), n);
            if (ray_defect(f, pn) > kStrict) {
                report.witness_strict_normal = coordinate_frame(axes, n);
                report.witness_free_subspace = complement_frame(axes, n);
                found = true;
                break;
            }
        } while (next_subset(axes, n));

        if (!found) {
            for (int t = 0; t < random_frames; ++t) {
                ++report.samples_used;
                auto frame = rng.orthonormal_frame(n, dim_n);
                const SymMatrix pn = SymMatrix::projection(frame, n);
                if (ray_defect(f, pn) > 0.0) {
                    report.witness_strict_normal = frame;
                    report.witness_free_subspace = orthogonal_complement(frame, n);
                    found = true;
                    break;
                }
            }
        }

        if (found) {
            report.free_dim = n - dim_n;
            return report;
        }
    }
    // Only N = R^n is strict (e.g. the positive cone): free dimension 0 with
    // the full-space normal recorded above; verify it.
    report.free_dim = 0;
    report.witness_free_subspace.clear();
    return report;
}

} // namespace dirichlet
