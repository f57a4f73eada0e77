#include "dirichlet/domain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirichlet {

double Box::max_radius() const {
    double r2 = 0.0;
    for (size_t i = 0; i < lo.size(); ++i)
        r2 += std::max(lo[i] * lo[i], hi[i] * hi[i]);
    return std::sqrt(r2);
}

Domain::Domain(int n, FieldPtr rho, Box bounding_box, std::vector<double> interior_point)
    : n_(n), rho_(std::move(rho)), box_(std::move(bounding_box)), interior_(std::move(interior_point)) {
    if (box_.dim() != n_ || static_cast<int>(interior_.size()) != n_)
        throw DimensionMismatch("Domain: box/interior dimension mismatch");
    if (!(rho_->value(interior_) < 0.0))
        throw std::invalid_argument("Domain: interior witness has rho >= 0");
}

Domain Domain::ball(int n, double radius, std::vector<double> center) {
    if (center.empty()) center.assign(n, 0.0);
    // rho = (|x - c|^2 - R^2) / 2
    Expr sum = Expr::constant(-0.5 * radius * radius);
    for (int i = 0; i < n; ++i) {
        Expr xi = Expr::variable(i);
        ExprNode diff;
        diff.op = ExprOp::sub;
        diff.args = {xi.root_ptr(), Expr::constant(center[i]).root_ptr()};
        ExprNode sq;
        sq.op = ExprOp::pow_int;
        sq.exponent = 2;
        sq.args = {std::make_shared<const ExprNode>(std::move(diff))};
        ExprNode half;
        half.op = ExprOp::mul;
        half.args = {Expr::constant(0.5).root_ptr(), std::make_shared<const ExprNode>(std::move(sq))};
        ExprNode add;
        add.op = ExprOp::add;
        add.args = {sum.root_ptr(), std::make_shared<const ExprNode>(std::move(half))};
        sum = Expr(std::make_shared<const ExprNode>(std::move(add)));
    }
    Box box;
    for (int i = 0; i < n; ++i) {
        box.lo.push_back(center[i] - 1.5 * radius);
        box.hi.push_back(center[i] + 1.5 * radius);
    }
    return Domain(n, expr_field(sum, n), box, center);
}

Domain Domain::ellipsoid(std::vector<double> semiaxes) {
    const int n = static_cast<int>(semiaxes.size());
    // rho = sum (x_i / a_i)^2 - 1
    Expr sum = Expr::constant(-1.0);
    for (int i = 0; i < n; ++i) {
        ExprNode div;
        div.op = ExprOp::div;
        div.args = {Expr::variable(i).root_ptr(), Expr::constant(semiaxes[i]).root_ptr()};
        ExprNode sq;
        sq.op = ExprOp::pow_int;
        sq.exponent = 2;
        sq.args = {std::make_shared<const ExprNode>(std::move(div))};
        ExprNode add;
        add.op = ExprOp::add;
        add.args = {sum.root_ptr(), std::make_shared<const ExprNode>(std::move(sq))};
        sum = Expr(std::make_shared<const ExprNode>(std::move(add)));
    }
    Box box;
    for (int i = 0; i < n; ++i) {
        box.lo.push_back(-1.5 * semiaxes[i]);
        box.hi.push_back(1.5 * semiaxes[i]);
    }
    return Domain(n, expr_field(sum, n), box, std::vector<double>(n, 0.0));
}

Domain Domain::from_expression(const Expr& rho, int n, Box box, std::vector<double> interior_point) {
    if (rho.has_nonsmooth_ops())
        throw std::invalid_argument("domain defining functions must be C^2 (no abs/min/max)");
    return Domain(n, expr_field(rho, n), std::move(box), std::move(interior_point));
}

std::vector<double> Domain::unit_normal(std::span<const double> x) const {
    const FieldJet j = rho_->jet(x);
    double norm2 = 0.0;
    for (double g : j.gradient) norm2 += g * g;
    const double norm = std::sqrt(norm2);
    if (norm < 1e-6) throw std::runtime_error("unit_normal: vanishing gradient of rho");
    std::vector<double> nrm(j.gradient);
    for (double& v : nrm) v /= norm;
    return nrm;
}

Domain Domain::with_rho(FieldPtr rho) const { return Domain(n_, std::move(rho), box_, interior_); }

std::vector<double> boundary_project(const Domain& d, std::vector<double> x0) {
    std::vector<double> x = std::move(x0);
    for (int it = 0; it < 100; ++it) {
        const FieldJet j = d.jet_at(x);
        if (std::fabs(j.value) <= 1e-10) return x;
        double g2 = 0.0;
        for (double g : j.gradient) g2 += g * g;
        if (g2 < 1e-12) throw std::runtime_error("boundary_project: gradient vanished");
        const double step = j.value / g2;
        for (int i = 0; i < d.dim(); ++i) x[i] -= step * j.gradient[i];
    }
    throw std::runtime_error("boundary_project: no convergence in 100 Newton steps");
}

std::vector<std::vector<double>> boundary_sample(const Domain& d, int count) {
    const int n = d.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("boundary_sample supports n = 2, 3");
    std::vector<std::vector<double>> out;
    out.reserve(count);
    const auto& c = d.interior_point();
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double reach = 2.0 * d.bounding_box().max_radius() + 1.0;
    for (int k = 0; k < count; ++k) {
        std::vector<double> dir(n);
        if (n == 2) {
            const double theta = golden * k;
            dir = {std::cos(theta), std::sin(theta)};
        } else {
            const double z = 1.0 - 2.0 * (k + 0.5) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double theta = golden * k;
            dir = {r * std::cos(theta), r * std::sin(theta), z};
        }
        // March outward from the witness until rho changes sign, then project.
        std::vector<double> probe(c);
        double step = 0.05 * reach;
        double dist = 0.0;
        while (d.rho_at(probe) < 0.0 && dist < reach) {
            dist += step;
            for (int i = 0; i < n; ++i) probe[i] = c[i] + dist * dir[i];
        }
        out.push_back(boundary_project(d, probe));
    }
    return out;
}

TangentFrame tangent_frame(const Domain& d, std::span<const double> x) {
    const int n = d.dim();
    TangentFrame f;
    f.normal = d.unit_normal(x);
    int skip = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs(f.normal[i]) > std::fabs(f.normal[skip])) skip = i;
    std::vector<std::vector<double>> basis{f.normal};
    for (int ax = 0; ax < n; ++ax) {
        if (ax == skip) continue;
        std::vector<double> v(n, 0.0);
        v[ax] = 1.0;
        for (const auto& u : basis) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += u[i] * v[i];
            for (int i = 0; i < n; ++i) v[i] -= dot * u[i];
        }
        double norm2 = 0.0;
        for (double t : v) norm2 += t * t;
        if (norm2 < 1e-16) throw std::runtime_error("tangent_frame: degenerate frame");
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& t : v) t *= inv;
        basis.push_back(v);
        f.tangents.push_back(basis.back());
    }
    return f;
}

SymMatrix second_fundamental_form(const Domain& d, std::span<const double> x) {
    const FieldJet j = d.jet_at(x);
    double norm2 = 0.0;
    for (double g : j.gradient) norm2 += g * g;
    const double norm = std::sqrt(norm2);
    if (norm < 1e-6) throw std::runtime_error("second_fundamental_form: vanishing gradient");
    const TangentFrame f = tangent_frame(d, x);
    const int m = d.dim() - 1;
    SymMatrix ii(m);
    for (int a = 0; a < m; ++a) {
        const auto ha = j.hessian.apply(f.tangents[a]);
        for (int b = 0; b <= a; ++b) {
            double v = 0.0;
            for (int i = 0; i < d.dim(); ++i) v += ha[i] * f.tangents[b][i];
            ii.set(a, b, v / norm);
        }
    }
    return ii;
}

} // namespace dirichlet
