#pragma once

// Catalog of Dirichlet sets: the fundamental cones over R/C/H, Monge-Ampere
// branches, geometric Grassmannian sets, Lagrangian/isotropic sets, special
// Lagrangian branches, half-spaces and Garding cones of det and its
// elementary symmetric derivatives.
//
// Defects are 1-homogeneous where possible (lambda sums); the special
// Lagrangian defect is intentionally non-homogeneous (only set membership
// scales).

#include <functional>

#include "dirichlet/cone_set.hpp"
#include "dirichlet/sturm.hpp"
#include "dirichlet/symmat.hpp"

namespace dirichlet {
namespace catalog {

using Field = ComplexStructure::Kind;

// {A >= 0}; defect lambda_1.
ConeSet P(int n);
// {lambda_max >= 0}; defect lambda_n.
ConeSet Ptilde(int n);
// {tr A >= 0}; defect tr A.
ConeSet harm(int n);

// {<A0, A> >= c}; requires A0 >= 0 and A0 != 0 (the Dirichlet condition).
ConeSet halfspace(const SymMatrix& a0, double c);

// P_q over the field K on R^N: defect lambda_{q+1} of the K-spectrum.
// q = 0 is the fundamental cone, q = n-1 its dual.
ConeSet branch_q(int q, Field field, int real_dim);

// P(G(p, K^n)): defect lambda_1 + ... + lambda_p of the K-spectrum.
ConeSet PG(int p, Field field, int real_dim);

// P_q(G(p, K^n)): defect lambda_{q+1} + ... + lambda_{q+p}; needs p + q <= n.
ConeSet Pq_G(int p, int q, Field field, int real_dim);

// P(LAG) on R^{2n}: defect t/2 - sum of the nonnegative eigenvalues of the
// skew-hermitian part, t = tr A.
ConeSet LAG(int real_dim);

// P(ISO_p) on R^{2n}: defect (p/2n) t - (top p nonnegative skew eigenvalues).
ConeSet ISO(int p, int real_dim);

// Special Lagrangian branch: defect sum_i arctan(lambda_i(A)) - c, for
// -n pi/2 < c < n pi/2.
ConeSet SL(double c, int n);

// Garding cone of an MA-polynomial given by its coefficient map
// A -> p_A(t) = M(tI + A) (ascending coefficients).  defect = -(largest real
// root of p_A); hyperbolicity is spot-checked at construction and enforced by
// the Sturm chain on every evaluation.
ConeSet garding(std::function<Polynomial(const SymMatrix&)> poly_of, std::string name, int n);

// Garding cone of det on Sym^2(R^n).
ConeSet garding_det(int n);

// Garding cone of sigma_k (elementary symmetric function of the eigenvalues),
// built from derivative coefficients of det(A + tI); 1 <= k <= n.
ConeSet sigma_k(int k, int n);

// Every catalog atom, at representative small parameters, for battery-style
// checks.  All entries in the list have dimension <= max_real_dim.
std::vector<ConeSet> battery(int max_real_dim = 8);

} // namespace catalog
} // namespace dirichlet
