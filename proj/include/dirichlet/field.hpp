#pragma once

// Smooth scalar fields with exact value/gradient/Hessian access, plus the C^2
// smoothed maximum used by the global defining-function construction.

#include <memory>
#include <span>
#include <vector>

#include "dirichlet/expr.hpp"
#include "dirichlet/symmat.hpp"

namespace dirichlet {

struct FieldJet {
    double value = 0.0;
    std::vector<double> gradient;
    SymMatrix hessian;
};

class ScalarField {
public:
    virtual ~ScalarField() = default;
    virtual int dim() const = 0;
    virtual double value(std::span<const double> x) const = 0;
    virtual FieldJet jet(std::span<const double> x) const = 0;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

// Field backed by a parsed expression; derivatives by nested duals.  Throws
// NonSmoothError if a derivative query lands on a kink of abs/min/max.
FieldPtr expr_field(Expr e, int n);

// -r + delta |x|^2
FieldPtr shifted_paraboloid(double delta, double r, int n);

// f + C f^2 (the boundary repair transform; level set {f=0} is preserved).
FieldPtr repaired_field(FieldPtr f, double c);

// C^2 smoothed maximum M_eps(t1, t2) with first/second partials:
//   - equals max(t1, t2) exactly when |t1 - t2| >= eps,
//   - dM/dt1 + dM/dt2 = 1 with both partials >= 0,
//   - 0 <= M_eps - max <= 3 eps/16 (uniform convergence as eps -> 0),
//   - the pure second derivative in (t1 - t2) is >= 0.
struct SmoothMaxJet {
    double value = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double d11 = 0.0, d12 = 0.0, d22 = 0.0;
};
SmoothMaxJet smooth_max(double t1, double t2, double eps);

// M_eps(f, g) composed with the chain rule.
FieldPtr smooth_max_field(FieldPtr f, FieldPtr g, double eps);

} // namespace dirichlet
