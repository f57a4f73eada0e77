#include "dirichlet/catalog.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <numbers>

namespace dirichlet {
namespace catalog {

namespace {

std::string field_tag(Field f) {
    switch (f) {
    case Field::real: return "R";
    case Field::complex: return "C";
    case Field::quaternionic: return "H";
    }
    return "?";
}

double cluster_eig(const SymMatrix& a, const ComplexStructure& s, int index) {
    return k_spectrum(a, s)[index];
}

} // namespace

ConeSet P(int n) {
    return ConeSet(
        n, [](const SymMatrix& a) { return a.eig_sorted().front(); }, "P", true,
        [](const SymMatrix& b) { return -b.eig_sorted().front(); }, true,
        /*diagonal_only=*/n == 1);
}

ConeSet Ptilde(int n) {
    return ConeSet(
        n, [](const SymMatrix& a) { return a.eig_sorted().back(); }, "Ptilde", true,
        [](const SymMatrix& b) { return -b.eig_sorted().back(); }, true,
        /*diagonal_only=*/n == 1);
}

ConeSet harm(int n) {
    return ConeSet(
        n, [](const SymMatrix& a) { return a.trace(); }, "harm", true,
        [n](const SymMatrix& b) { return -b.trace() / n; }, true, /*diagonal_only=*/true);
}

ConeSet halfspace(const SymMatrix& a0, double c) {
    const int n = a0.dim();
    const double scale = std::max(1.0, a0.max_abs());
    if (a0.max_abs() == 0.0) throw std::invalid_argument("halfspace: A0 must be nonzero");
    if (a0.eig_sorted().front() < -1e-12 * scale)
        throw std::invalid_argument("halfspace: A0 must be positive semidefinite for a Dirichlet set");
    const double tr0 = a0.trace();
    bool diag = true;
    for (int i = 0; i < n && diag; ++i)
        for (int j = 0; j < i; ++j)
            if (a0(i, j) != 0.0) { diag = false; break; }
    return ConeSet(
        n, [a0, c](const SymMatrix& a) { return a0.inner(a) - c; }, "halfspace", c == 0.0,
        [a0, c, tr0](const SymMatrix& b) { return (c - a0.inner(b)) / tr0; }, c >= 0.0, diag);
}

ConeSet branch_q(int q, Field field, int real_dim) {
    const ComplexStructure s = structure_for(field, real_dim);
    if (q < 0 || q >= s.n)
        throw std::invalid_argument("branch_q: need 0 <= q < n, got q=" + std::to_string(q) +
                                    ", n=" + std::to_string(s.n));
    const std::string name = "branch_q(" + std::to_string(q) + "," + field_tag(field) + ")";
    return ConeSet(
        real_dim, [s, q](const SymMatrix& a) { return cluster_eig(a, s, q); }, name, true,
        [s, q](const SymMatrix& b) { return -cluster_eig(b, s, q); }, true);
}

ConeSet PG(int p, Field field, int real_dim) {
    const ComplexStructure s = structure_for(field, real_dim);
    if (p < 1 || p > s.n) throw std::invalid_argument("PG: need 1 <= p <= n");
    const std::string name = "PG(" + std::to_string(p) + "," + field_tag(field) + ")";
    auto sum_low = [s, p](const SymMatrix& a) {
        const auto lam = k_spectrum(a, s);
        double t = 0.0;
        for (int i = 0; i < p; ++i) t += lam[i];
        return t;
    };
    return ConeSet(
        real_dim, sum_low, name, true,
        [sum_low, p](const SymMatrix& b) { return -sum_low(b) / p; }, true);
}

ConeSet Pq_G(int p, int q, Field field, int real_dim) {
    const ComplexStructure s = structure_for(field, real_dim);
    if (p < 1 || q < 0 || p + q > s.n)
        throw std::invalid_argument("Pq_G: need p >= 1, q >= 0, p + q <= n");
    const std::string name =
        "PqG(" + std::to_string(p) + "," + std::to_string(q) + "," + field_tag(field) + ")";
    auto window_sum = [s, p, q](const SymMatrix& a) {
        const auto lam = k_spectrum(a, s);
        double t = 0.0;
        for (int i = q; i < q + p; ++i) t += lam[i];
        return t;
    };
    return ConeSet(
        real_dim, window_sum, name, true,
        [window_sum, p](const SymMatrix& b) { return -window_sum(b) / p; }, true);
}

ConeSet LAG(int real_dim) {
    const ComplexStructure s = structure_for(Field::complex, real_dim);
    const int n = s.n;
    auto d = [s](const SymMatrix& a) {
        const auto lam = skew_spectrum_nonneg(a, s);
        double sum = 0.0;
        for (double v : lam) sum += v;
        return 0.5 * a.trace() - sum;
    };
    return ConeSet(
        real_dim, d, "LAG(" + std::to_string(n) + ")", true,
        [d, n](const SymMatrix& b) { return -d(b) / n; }, true);
}

namespace {

// Orthonormal real basis (v_1, J v_1, ..., v_p, J v_p) of a complex
// p-dimensional subspace; in these coordinates J restricts to the standard
// interleaved block structure.
using ComplexFrame = std::vector<std::vector<double>>;

ComplexFrame complex_frame_from_seeds(const ComplexStructure& s, int p,
                                      const std::vector<std::vector<double>>& seeds) {
    const int nn = s.real_dim;
    ComplexFrame frame;
    for (const auto& seed : seeds) {
        std::vector<double> v = seed;
        for (const auto& u : frame) {
            double dot = 0.0;
            for (int i = 0; i < nn; ++i) dot += u[i] * v[i];
            for (int i = 0; i < nn; ++i) v[i] -= dot * u[i];
        }
        double norm2 = 0.0;
        for (double t : v) norm2 += t * t;
        if (norm2 < 1e-10) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& t : v) t *= inv;
        std::vector<double> jv = s.J * v;
        frame.push_back(std::move(v));
        frame.push_back(std::move(jv));
        if (static_cast<int>(frame.size()) == 2 * p) break;
    }
    if (static_cast<int>(frame.size()) != 2 * p) return {};
    return frame;
}

SymMatrix restrict_to_frame(const SymMatrix& a, const ComplexFrame& frame) {
    const int m = static_cast<int>(frame.size());
    SymMatrix r(m);
    for (int i = 0; i < m; ++i) {
        const auto av = a.apply(frame[i]);
        for (int j = 0; j <= i; ++j) {
            double dot = 0.0;
            for (size_t k = 0; k < av.size(); ++k) dot += av[k] * frame[j][k];
            r.set(i, j, dot);
        }
    }
    return r;
}

double lag_defect_small(const SymMatrix& restricted, const ComplexStructure& small) {
    const auto lam = skew_spectrum_nonneg(restricted, small);
    double sum = 0.0;
    for (double v : lam) sum += v;
    return 0.5 * restricted.trace() - sum;
}

} // namespace

ConeSet ISO(int p, int real_dim) {
    const ComplexStructure s = structure_for(Field::complex, real_dim);
    const int n = s.n;
    if (p < 1 || p > n) throw std::invalid_argument("ISO: need 1 <= p <= n");
    const std::string name = "ISO(" + std::to_string(p) + "," + std::to_string(n) + ")";

    if (p == n) {
        // ISO_n = LAG: the defect over the full space is exact.
        auto d = [s](const SymMatrix& a) {
            const auto lam = skew_spectrum_nonneg(a, s);
            double sum = 0.0;
            for (double v : lam) sum += v;
            return 0.5 * a.trace() - sum;
        };
        return ConeSet(
            real_dim, d, name, true, [d, p](const SymMatrix& b) { return -d(b) / p; }, true);
    }

    // P(ISO_p) by the next-tier principle: the isotropic p-planes of C^n are
    // the Lagrangian planes of the complex p-subspaces W, so the defect is
    // min over W of the Lagrangian defect of A restricted to W.  The family
    // of W is fixed at construction (coordinate subspaces plus seeded random
    // frames), giving an exactly monotone outer approximation of P(ISO_p).
    auto frames = std::make_shared<std::vector<ComplexFrame>>();
    {
        // Coordinate complex subspaces.
        std::vector<int> axes(p);
        for (int i = 0; i < p; ++i) axes[i] = i;
        auto emit = [&](const std::vector<int>& ax) {
            std::vector<std::vector<double>> seeds;
            for (int a : ax) {
                std::vector<double> e(s.real_dim, 0.0);
                e[2 * a] = 1.0;
                seeds.push_back(std::move(e));
            }
            auto f = complex_frame_from_seeds(s, p, seeds);
            if (!f.empty()) frames->push_back(std::move(f));
        };
        while (true) {
            emit(axes);
            int i = p - 1;
            while (i >= 0 && axes[i] == n - p + i) --i;
            if (i < 0) break;
            ++axes[i];
            for (int j = i + 1; j < p; ++j) axes[j] = axes[j - 1] + 1;
        }
        // Seeded random complex frames (fixed seed: the family is part of the
        // set's identity).
        std::mt19937_64 gen(0x1505);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int k = 0; k < 160; ++k) {
            std::vector<std::vector<double>> seeds(p, std::vector<double>(s.real_dim));
            for (auto& v : seeds)
                for (double& t : v) t = nd(gen);
            auto f = complex_frame_from_seeds(s, p, seeds);
            if (!f.empty()) frames->push_back(std::move(f));
        }
    }
    const ComplexStructure small = ComplexStructure::complex(p);
    auto d = [frames, small](const SymMatrix& a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& fr : *frames)
            best = std::min(best, lag_defect_small(restrict_to_frame(a, fr), small));
        return best;
    };
    return ConeSet(
        real_dim, d, name, true, [d, p](const SymMatrix& b) { return -d(b) / p; }, true);
}

ConeSet SL(double c, int n) {
    const double half_span = n * std::numbers::pi / 2.0;
    if (!(std::fabs(c) < half_span))
        throw std::invalid_argument("SL: need |c| < n pi/2");
    auto d = [c](const SymMatrix& a) {
        double sum = 0.0;
        for (double lam : a.eig_sorted()) sum += std::atan(lam);
        return sum - c;
    };
    // Threshold: safeguarded Newton on t -> sum_i atan(lambda_i + t) - c,
    // with eigenvalues computed once.
    auto thr = [c, n](const SymMatrix& b) {
        const auto lam = b.eig_sorted();
        const double target = std::tan(c / n);
        double lo = target - lam.back();
        double hi = target - lam.front();
        auto val = [&](double t) {
            double s = 0.0;
            for (double l : lam) s += std::atan(l + t);
            return s - c;
        };
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            const double f = val(t);
            if (f >= 0.0)
                hi = t;
            else
                lo = t;
            double df = 0.0;
            for (double l : lam) df += 1.0 / (1.0 + (l + t) * (l + t));
            double next = t - f / df;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::fabs(next - t) <= 1e-15 * (1.0 + std::fabs(t)) && std::fabs(f) < 1e-13) {
                t = next;
                break;
            }
            t = next;
        }
        return t;
    };
    // The c = 0, n = 2 set coincides with {tr >= 0} and is a genuine cone;
    // the defect still scales only in sign.
    const bool cone = (c == 0.0 && n == 2);
    return ConeSet(n, d, "SL(" + std::to_string(c) + ")", cone, thr, c >= 0.0);
}

ConeSet garding(std::function<Polynomial(const SymMatrix&)> poly_of, std::string name, int n) {
    // Spot-check hyperbolicity and normalization on fixed probes; the Sturm
    // chain re-checks every evaluation.
    {
        std::vector<double> diag(n);
        for (int i = 0; i < n; ++i) diag[i] = 0.7 * (i + 1) * (i % 2 == 0 ? 1.0 : -1.0);
        for (const SymMatrix& probe : {SymMatrix(n), SymMatrix::diagonal(diag)}) {
            const Polynomial p = poly_of(probe);
            if (p.degree() < 1) throw std::invalid_argument("garding: polynomial degree must be >= 1");
            if (p.leading() <= 0.0)
                throw std::invalid_argument("garding: leading coefficient must be positive (M(I) > 0)");
            sturm_largest_root(p); // throws NotHyperbolicError on complex roots
        }
    }
    auto d = [poly_of](const SymMatrix& a) { return -sturm_largest_root(poly_of(a)); };
    auto thr = [poly_of](const SymMatrix& b) { return sturm_largest_root(poly_of(b)); };
    return ConeSet(n, std::move(d), std::move(name), true, std::move(thr), true);
}

ConeSet garding_det(int n) {
    return garding([](const SymMatrix& a) { return char_poly_shifted(a); }, "garding(det)", n);
}

ConeSet sigma_k(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("sigma_k: need 1 <= k <= n");
    const int ell = n - k;
    // sigma_k(I) = C(n, k) normalizes the leading coefficient to 1.
    double norm = 1.0;
    for (int i = 0; i < k; ++i) norm = norm * (n - i) / (i + 1);
    auto poly_of = [ell, norm](const SymMatrix& a) {
        Polynomial p = char_poly_shifted(a);
        for (int d = 0; d < ell; ++d) p = p.derivative();
        std::vector<double> c = p.coeffs();
        double fact = 1.0;
        for (int d = 2; d <= ell; ++d) fact *= d;
        for (double& v : c) v /= fact * norm;
        return Polynomial(std::move(c));
    };
    return garding(poly_of, "sigma(" + std::to_string(k) + ")", n);
}

std::vector<ConeSet> battery(int max_real_dim) {
    std::vector<ConeSet> out;
    out.push_back(P(3));
    out.push_back(Ptilde(3));
    out.push_back(harm(3));
    out.push_back(halfspace(SymMatrix::diagonal({1.0, 2.0, 0.5}), 0.0));
    out.push_back(branch_q(1, Field::real, 3));
    out.push_back(branch_q(1, Field::complex, 4));
    out.push_back(PG(2, Field::real, 4));
    out.push_back(PG(1, Field::complex, 4));
    out.push_back(Pq_G(2, 1, Field::real, 4));
    out.push_back(LAG(4));
    out.push_back(ISO(1, 4));
    out.push_back(SL(0.6, 3));
    out.push_back(garding_det(3));
    out.push_back(sigma_k(2, 3));
    if (max_real_dim >= 8) out.push_back(branch_q(1, Field::quaternionic, 8));
    return out;
}

} // namespace catalog
} // namespace dirichlet
