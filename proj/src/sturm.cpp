#include "dirichlet/sturm.hpp"

#include <algorithm>
#include <cmath>

namespace dirichlet {

namespace {

// Drops trailing coefficients below a relative floor so remainder chains do
// not accumulate noise degrees.
std::vector<double> trim(std::vector<double> c, double floor_abs) {
    while (c.size() > 1 && std::fabs(c.back()) <= floor_abs) c.pop_back();
    return c;
}

int sign_of(double v, double eps) {
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
}

// Polynomial remainder of a by b (both ascending), coefficient arithmetic.
std::vector<double> poly_rem(std::vector<double> a, const std::vector<double>& b, double floor_abs) {
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db && a.size() > 1) {
        const int da = static_cast<int>(a.size()) - 1;
        const double f = a.back() / b.back();
        for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
        a.pop_back();
        a = trim(std::move(a), floor_abs);
        if (a.size() == 1 && std::fabs(a[0]) <= floor_abs) {
            a[0] = 0.0;
            break;
        }
    }
    return a;
}

} // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_ = {0.0};
    double scale = 0.0;
    for (double v : c_) scale = std::max(scale, std::fabs(v));
    c_ = trim(std::move(c_), 1e-14 * std::max(1.0, scale));
}

double Polynomial::eval(double t) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial({0.0});
    std::vector<double> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

double Polynomial::cauchy_bound() const {
    double m = 0.0;
    for (int k = 0; k < degree(); ++k) m = std::max(m, std::fabs(c_[k] / c_.back()));
    return 1.0 + m;
}

SturmChain::SturmChain(const Polynomial& p) {
    double scale = 0.0;
    for (double v : p.coeffs()) scale = std::max(scale, std::fabs(v));
    const double floor_abs = 1e-13 * std::max(1.0, scale);

    chain.push_back(p);
    if (p.degree() >= 1) chain.push_back(p.derivative());
    while (chain.back().degree() >= 1) {
        auto r = poly_rem(chain[chain.size() - 2].coeffs(), chain.back().coeffs(), floor_abs);
        for (double& v : r) v = -v;
        Polynomial next(std::move(r));
        if (next.degree() == 0 && next.coeffs()[0] == 0.0) break; // gcd reached
        chain.push_back(std::move(next));
    }
}

int SturmChain::variations(double t) const {
    int var = 0;
    int prev = 0;
    for (const auto& q : chain) {
        const int s = sign_of(q.eval(t), 0.0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int SturmChain::variations_at_minus_inf() const {
    int var = 0;
    int prev = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.leading(), 0.0);
        if (q.degree() % 2 == 1) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int SturmChain::variations_at_plus_inf() const {
    int var = 0;
    int prev = 0;
    for (const auto& q : chain) {
        const int s = sign_of(q.leading(), 0.0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int SturmChain::count_roots(double a, double b) const { return variations(a) - variations(b); }

int SturmChain::distinct_real_roots() const {
    return variations_at_minus_inf() - variations_at_plus_inf();
}

namespace {

// Degree of the square-free part p / gcd(p, p'); the gcd is the last chain
// element when it has positive degree.
int squarefree_degree(const SturmChain& sc, const Polynomial& p) {
    const int gcd_deg = sc.chain.back().degree();
    if (sc.chain.size() <= 1) return p.degree();
    return p.degree() - (gcd_deg >= 1 ? gcd_deg : 0);
}

double bisect_largest(const SturmChain& sc, double lo, double hi) {
    // Invariant: at least one root in (lo, hi].
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(1.0, std::fabs(hi) + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sc.count_roots(mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double sturm_largest_root(const Polynomial& p) {
    if (p.degree() < 1) throw std::invalid_argument("sturm_largest_root: degree must be >= 1");
    if (p.leading() <= 0.0) throw std::invalid_argument("sturm_largest_root: leading coefficient must be positive");
    SturmChain sc(p);
    const int distinct = sc.distinct_real_roots();
    if (distinct < squarefree_degree(sc, p))
        throw NotHyperbolicError("polynomial is not hyperbolic: " + std::to_string(distinct) +
                                 " distinct real roots against square-free degree " +
                                 std::to_string(squarefree_degree(sc, p)));
    const double bound = p.cauchy_bound();
    return bisect_largest(sc, -bound, bound);
}

double sturm_largest_root(const std::vector<double>& ascending_coeffs) {
    return sturm_largest_root(Polynomial(ascending_coeffs));
}

std::vector<double> sturm_all_roots(const Polynomial& p) {
    if (p.degree() < 1) return {};
    SturmChain sc(p);
    const double bound = p.cauchy_bound();
    std::vector<double> roots;
    // Recursively split [a, b] until each piece isolates one root.
    struct Seg {
        double a, b;
        int count;
    };
    std::vector<Seg> work{{-bound, bound, sc.count_roots(-bound, bound)}};
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1 || (s.b - s.a) < 1e-13 * std::max(1.0, std::fabs(s.a) + std::fabs(s.b))) {
            roots.push_back(bisect_largest(sc, s.a, s.b));
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        const int right = sc.count_roots(mid, s.b);
        work.push_back({s.a, mid, s.count - right});
        work.push_back({mid, s.b, right});
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Polynomial char_poly_shifted(const SymMatrix& a) {
    // det(tI + A) = det(tI - (-A)); Faddeev-LeVerrier on B = -A.
    const int n = a.dim();
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = -a(i, j);

    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    c[n] = 1.0;
    Matrix m = Matrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            // M_k = B * M_{k-1} + c_{n-k+1} I
            Matrix bm = b * m;
            for (int i = 0; i < n; ++i) bm(i, i) += c[n - k + 1];
            m = std::move(bm);
        }
        Matrix bm = b * m;
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += bm(i, i);
        c[n - k] = -tr / static_cast<double>(k);
    }
    return Polynomial(std::move(c));
}

} // namespace dirichlet
