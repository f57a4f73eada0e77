#pragma once

// Real-rooted polynomial machinery for Garding-cone membership: Sturm chains,
// sign-variation counting and bisection for the largest real root, plus
// Faddeev-LeVerrier characteristic coefficients.

#include <stdexcept>
#include <string>
#include <vector>

#include "dirichlet/symmat.hpp"

namespace dirichlet {

class NotHyperbolicError : public std::runtime_error {
public:
    explicit NotHyperbolicError(const std::string& what) : std::runtime_error(what) {}
};

// Coefficients ascending: p(t) = c[0] + c[1] t + ... + c[deg] t^deg.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double leading() const { return c_.back(); }

    double eval(double t) const;
    Polynomial derivative() const;
    // 1 + max |c_i / c_deg|; all real roots lie in [-bound, bound].
    double cauchy_bound() const;

private:
    std::vector<double> c_{0.0};
};

struct SturmChain {
    explicit SturmChain(const Polynomial& p);

    // Sign variations of the chain at t (+/-infinity supported via the
    // leading terms).
    int variations(double t) const;
    int variations_at_minus_inf() const;
    int variations_at_plus_inf() const;

    // Number of distinct real roots in (a, b].
    int count_roots(double a, double b) const;
    int distinct_real_roots() const;

    std::vector<Polynomial> chain;
};

// Largest real root of an all-real-rooted polynomial with positive leading
// coefficient, to within ~1e-12 absolute on the Cauchy interval.
// Throws NotHyperbolicError when the Sturm chain finds fewer distinct real
// roots than the square-free degree (complex roots present), and
// std::invalid_argument for degree-0 input or non-positive leading
// coefficient.
double sturm_largest_root(const Polynomial& p);
double sturm_largest_root(const std::vector<double>& ascending_coeffs);

// All distinct real roots, ascending (isolation by sign counting, then
// bisection).  Used as an eigenvalue cross-check oracle.
std::vector<double> sturm_all_roots(const Polynomial& p);

// Coefficients of det(tI + A), ascending in t, via Faddeev-LeVerrier on -A.
// Exact on traces of powers; independent of any eigensolver.
Polynomial char_poly_shifted(const SymMatrix& a);

} // namespace dirichlet
