#pragma once

// Scalar functions sampled on a uniform axis-aligned box lattice (n = 2 or 3),
// with CSV persistence and a JSON sidecar.

#include <functional>
#include <string>
#include <vector>

#include "dirichlet/domain.hpp" // Box
#include "dirichlet/symmat.hpp"

namespace dirichlet {

struct GridIndex {
    std::vector<int> i;
};

class GridField {
public:
    GridField() = default;
    // Lattice covering box with spacing h; (hi - lo)/h must be integral to
    // within 1e-9 on every axis.
    GridField(Box box, double h);

    static GridField sampled(const Box& box, double h,
                             const std::function<double(std::span<const double>)>& fn);

    int dim() const { return static_cast<int>(counts_.size()); }
    double spacing() const { return h_; }
    const Box& box() const { return box_; }
    const std::vector<int>& counts() const { return counts_; }
    long size() const { return static_cast<long>(values_.size()); }

    double& at(const std::vector<int>& idx) { return values_[flat(idx)]; }
    double at(const std::vector<int>& idx) const { return values_[flat(idx)]; }
    double& flat_at(long k) { return values_[k]; }
    double flat_at(long k) const { return values_[k]; }

    std::vector<double> point(const std::vector<int>& idx) const;
    bool is_boundary(const std::vector<int>& idx) const;
    // Full 9/27-point stencil available (distance >= 1 from the lattice edge).
    bool is_interior(const std::vector<int>& idx) const;

    // Row-major lexicographic flattening, x1 slowest.
    long flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(long k) const;

    void for_each_index(const std::function<void(const std::vector<int>&)>& fn) const;
    void for_each_interior(const std::function<void(const std::vector<int>&)>& fn) const;
    void for_each_boundary(const std::function<void(const std::vector<int>&)>& fn) const;

    double max_abs() const;
    bool all_finite() const;

    // Multilinear interpolation at an arbitrary point of the box.
    double interpolate(std::span<const double> x) const;

private:
    Box box_;
    double h_ = 0.0;
    std::vector<int> counts_;
    std::vector<double> values_;
};

// Second-order centered stencil: exact on quadratics.
// Diagonal: (u(p + h e_i) + u(p - h e_i) - 2 u(p)) / h^2.
// Off-diagonal: (u(++) + u(--) - u(+-) - u(-+)) / (4 h^2).
SymMatrix discrete_hessian(const GridField& u, const std::vector<int>& idx);

// Same stencil with the center value replaced by v (the center enters only
// the diagonal, as -2v/h^2 * I).
SymMatrix discrete_hessian_with_center(const GridField& u, const std::vector<int>& idx, double v);

// CSV: header x1,...,xn,value; rows in row-major lexicographic order; 17
// significant digits.  A sidecar <path>.meta.json records box/h/n/provenance.
void save_csv(const GridField& u, const std::string& path, const std::string& provenance_json = "{}");
GridField load_csv(const std::string& path);

} // namespace dirichlet
