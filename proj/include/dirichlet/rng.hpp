#pragma once

// Seeded samplers shared by property checks and search routines.  A single
// seed threads through every consumer so runs reproduce exactly.

#include <cstdint>
#include <random>
#include <vector>

#include "dirichlet/symmat.hpp"

namespace dirichlet {

inline constexpr uint64_t kDefaultSeed = 1729;

class SampleRng {
public:
    explicit SampleRng(uint64_t seed = kDefaultSeed) : gen_(seed) {}

    std::mt19937_64& engine() { return gen_; }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

    // Heavy-tailed scalar: uniform[-1,1], with a 15% mixture of scale-3
    // outliers to exercise eigenvalue crossings.
    double entry() {
        const double u = uniform(-1.0, 1.0);
        return uniform(0.0, 1.0) < 0.15 ? 3.0 * u : u;
    }

    SymMatrix sym(int n) {
        SymMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) a.set(i, j, entry());
        return a;
    }

    // Random A >= 0 as G^T G with heavy-tailed G.
    SymMatrix psd(int n) {
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = entry();
        return congruence(g, SymMatrix::identity(n));
    }

    std::vector<double> unit_vector(int n) {
        std::normal_distribution<double> nd(0.0, 1.0);
        std::vector<double> v(n);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& x : v) {
                x = nd(gen_);
                norm2 += x * x;
            }
        } while (norm2 < 1e-12);
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) x *= inv;
        return v;
    }

    // Orthonormal frame spanning a random k-plane (Gram-Schmidt on gaussians).
    std::vector<std::vector<double>> orthonormal_frame(int n, int k) {
        std::vector<std::vector<double>> frame;
        std::normal_distribution<double> nd(0.0, 1.0);
        while (static_cast<int>(frame.size()) < k) {
            std::vector<double> v(n);
            for (double& x : v) x = nd(gen_);
            for (const auto& u : frame) {
                double d = 0.0;
                for (int i = 0; i < n; ++i) d += u[i] * v[i];
                for (int i = 0; i < n; ++i) v[i] -= d * u[i];
            }
            double norm2 = 0.0;
            for (double x : v) norm2 += x * x;
            if (norm2 < 1e-8) continue;
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& x : v) x *= inv;
            frame.push_back(std::move(v));
        }
        return frame;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace dirichlet
