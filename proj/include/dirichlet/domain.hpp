#pragma once

// Smooth bounded domains Omega = {rho < 0} given by an implicit defining
// function with exact derivative access.

#include <optional>
#include <vector>

#include "dirichlet/field.hpp"

namespace dirichlet {

struct Box {
    std::vector<double> lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
    double max_radius() const; // max |x| over corners
};

class Domain {
public:
    Domain(int n, FieldPtr rho, Box bounding_box, std::vector<double> interior_point);

    static Domain ball(int n, double radius, std::vector<double> center = {});
    static Domain ellipsoid(std::vector<double> semiaxes);
    static Domain from_expression(const Expr& rho, int n, Box box, std::vector<double> interior_point);

    int dim() const { return n_; }
    const FieldPtr& rho() const { return rho_; }
    const Box& bounding_box() const { return box_; }
    const std::vector<double>& interior_point() const { return interior_; }

    double rho_at(std::span<const double> x) const { return rho_->value(x); }
    FieldJet jet_at(std::span<const double> x) const { return rho_->jet(x); }

    // Outward unit normal grad(rho)/|grad(rho)|; throws when the gradient is
    // below 1e-6 in norm.
    std::vector<double> unit_normal(std::span<const double> x) const;

    // Domain with the same zero level set but a replaced defining field
    // (u * rho style corruptions for tests, repairs for the construction).
    Domain with_rho(FieldPtr rho) const;

private:
    int n_;
    FieldPtr rho_;
    Box box_;
    std::vector<double> interior_;
};

// Newton iteration along grad(rho) from x0 to |rho| <= 1e-10; throws
// std::runtime_error after 100 steps without convergence.
std::vector<double> boundary_project(const Domain& d, std::vector<double> x0);

// Deterministic boundary sample: golden-angle (2D) / Fibonacci-sphere (3D)
// directions from the interior witness, each projected onto the boundary.
std::vector<std::vector<double>> boundary_sample(const Domain& d, int count);

struct TangentFrame {
    std::vector<double> normal;                  // unit, outward
    std::vector<std::vector<double>> tangents;   // orthonormal, n-1 vectors
};

// Gram-Schmidt of the coordinate axes against the normal (the axis most
// parallel to the normal is dropped).
TangentFrame tangent_frame(const Domain& d, std::span<const double> x);

// II = (Hess rho restricted to the tangent frame) / |grad rho|, which is the
// second fundamental form with respect to the inward unit normal.
SymMatrix second_fundamental_form(const Domain& d, std::span<const double> x);

} // namespace dirichlet
