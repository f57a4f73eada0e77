#pragma once

// Dirichlet sets represented by signed defect functions.
//
// A set F in Sym^2(R^n) with the positivity property F + P subset F is carried
// by a continuous defect f with F = {f >= 0}, f monotone along the positive
// cone and strictly increasing along the identity line.  Every set operation
// of interest (dual, translate, conjugate, intersection, union, product
// extension) is a one-line transform of the defect, and the I-line threshold
// {t : B + tI in F} = [b, inf) is the universal solver interface.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirichlet/symmat.hpp"

namespace dirichlet {

class DegenerateSetError : public std::runtime_error {
public:
    explicit DegenerateSetError(const std::string& what) : std::runtime_error(what) {}
};

struct RayLadder {
    double base = 1.0; // C runs over {base, 2 base, ..., 2^steps base}
    int steps = 10;
    double resolution = 1e-6; // relative bisection resolution for the margin
};

class ConeSet {
public:
    using DefectFn = std::function<double(const SymMatrix&)>;
    using ThresholdFn = std::function<double(const SymMatrix&)>;

    ConeSet() = default;
    ConeSet(int n, DefectFn defect, std::string name, bool is_cone,
            std::optional<ThresholdFn> threshold = std::nullopt,
            std::optional<bool> mp_flag = std::nullopt, bool diagonal_only = false);

    int dim() const { return impl_->n; }
    const std::string& name() const { return impl_->name; }
    bool is_cone() const { return impl_->cone; }
    // Maximum-principle flag: true iff 0 is not in Int F.
    bool mp_satisfying() const { return impl_->mp; }
    // Defect depends only on diagonal stencil entries (solver damping hint).
    bool diagonal_only() const { return impl_->diagonal_only; }
    bool has_analytic_threshold() const { return impl_->threshold.has_value(); }

    // Sign determines membership: A in F iff defect >= 0, A in Int F iff > 0.
    double defect(const SymMatrix& a) const;

    // The b with {t : B + tI in F} = [b, inf), via the analytic fast path when
    // one is attached, else expanding bracket plus bisection on the strictly
    // increasing map t -> defect(B + tI).  Throws DegenerateSetError when the
    // bracket expansion exceeds 1e9 * scale.
    double edge_threshold(const SymMatrix& b) const;

    bool valid() const { return impl_ != nullptr; }

private:
    struct Impl {
        int n = 0;
        DefectFn defect;
        std::optional<ThresholdFn> threshold;
        std::string name;
        bool cone = false;
        bool mp = true;
        bool diagonal_only = false;
    };
    std::shared_ptr<const Impl> impl_;
};

// F~ = -(~Int F); defect g(A) = -f(-A).  Involutive up to exact sign flips.
ConeSet dual(const ConeSet& f);

// F + A0; defect(A) = f(A - A0).
ConeSet translate(const ConeSet& f, const SymMatrix& a0);

// gF = {g^t A g : A in F}; defect(A) = f(g^-t A g^-1).  Throws on singular g.
ConeSet conjugate(const ConeSet& f, const Matrix& g);

// defect = min (resp. max) of members.  Duals interchange the two exactly.
ConeSet intersect(const std::vector<ConeSet>& fs);
ConeSet set_union(const std::vector<ConeSet>& fs);

// F = (F0 on the coordinate subspace spanned by axes) (+) Sym^2(W)^perp;
// defect(A) = f0(A restricted to axes).
ConeSet product_extend(const ConeSet& f0, int ambient_n, const std::vector<int>& axes);
ConeSet product_extend(const ConeSet& f0, int ambient_n); // axes = first dim(F0)

// Interior-membership margin for the ray set of F.
//
// Cones are their own ray sets, so the defect is returned as is.  Otherwise
// the certificate of Int membership is tested on a geometric ladder
// C in {base, 2 base, ..., 2^steps base}: the return value is the largest
// eps >= 0 (bisected to ladder.resolution * scale) with
// defect(C (A - eps I)) >= 0 across the ladder; a positive value certifies
// A in Int(ray set) at the tested scale.  When even eps = 0 fails, the
// (negative) worst normalized ladder defect min_C defect(C A)/C is returned.
double ray_defect(const ConeSet& f, const SymMatrix& a, const RayLadder& ladder = {});

} // namespace dirichlet
