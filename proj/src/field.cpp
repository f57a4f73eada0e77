#include "dirichlet/field.hpp"

#include <cmath>
#include <stdexcept>

namespace dirichlet {

namespace {

class ExprFieldImpl final : public ScalarField {
public:
    ExprFieldImpl(Expr e, int n) : expr_(std::move(e)), n_(n) {
        if (expr_.max_variable() > n) throw std::invalid_argument("expression mentions x beyond dimension");
    }

    int dim() const override { return n_; }

    double value(std::span<const double> x) const override { return expr_.eval(x); }

    FieldJet jet(std::span<const double> x) const override {
        const DerivResult d = eval_with_derivatives(expr_, x);
        if (!d.smooth)
            throw NonSmoothError("derivative requested at a kink of abs/min/max");
        return {d.value, d.gradient, d.hessian};
    }

private:
    Expr expr_;
    int n_;
};

class ParaboloidField final : public ScalarField {
public:
    ParaboloidField(double delta, double r, int n) : delta_(delta), r_(r), n_(n) {}

    int dim() const override { return n_; }

    double value(std::span<const double> x) const override {
        double s = 0.0;
        for (double v : x) s += v * v;
        return -r_ + delta_ * s;
    }

    FieldJet jet(std::span<const double> x) const override {
        FieldJet j;
        j.value = value(x);
        j.gradient.resize(n_);
        for (int i = 0; i < n_; ++i) j.gradient[i] = 2.0 * delta_ * x[i];
        j.hessian = (2.0 * delta_) * SymMatrix::identity(n_);
        return j;
    }

private:
    double delta_, r_;
    int n_;
};

class RepairedField final : public ScalarField {
public:
    RepairedField(FieldPtr f, double c) : f_(std::move(f)), c_(c) {}

    int dim() const override { return f_->dim(); }

    double value(std::span<const double> x) const override {
        const double v = f_->value(x);
        return v + c_ * v * v;
    }

    FieldJet jet(std::span<const double> x) const override {
        const FieldJet base = f_->jet(x);
        FieldJet j;
        const double w = 1.0 + 2.0 * c_ * base.value;
        j.value = base.value + c_ * base.value * base.value;
        j.gradient.resize(dim());
        for (int i = 0; i < dim(); ++i) j.gradient[i] = w * base.gradient[i];
        j.hessian = w * base.hessian;
        SymMatrix gg = SymMatrix::outer(base.gradient);
        j.hessian += (2.0 * c_) * gg;
        return j;
    }

private:
    FieldPtr f_;
    double c_;
};

// Even convex C^2 hinge: phi(s) = |s|/2 for |s| >= eps, quartic inside with
// phi'' >= 0, phi''(+-eps) = 0, |phi'| <= 1/2 and phi(0) = 3 eps/16.
struct Hinge {
    double v, d1, d2;
};

Hinge hinge(double s, double eps) {
    if (std::fabs(s) >= eps) return {0.5 * std::fabs(s), s > 0 ? 0.5 : -0.5, 0.0};
    const double e = eps;
    const double v = 3.0 * e / 16.0 + 3.0 * s * s / (8.0 * e) - s * s * s * s / (16.0 * e * e * e);
    const double d1 = 3.0 * s / (4.0 * e) - s * s * s / (4.0 * e * e * e);
    const double d2 = 3.0 / (4.0 * e) * (1.0 - s * s / (e * e));
    return {v, d1, d2};
}

class SmoothMaxFieldImpl final : public ScalarField {
public:
    SmoothMaxFieldImpl(FieldPtr f, FieldPtr g, double eps)
        : f_(std::move(f)), g_(std::move(g)), eps_(eps) {
        if (f_->dim() != g_->dim()) throw DimensionMismatch("smooth_max_field dimension mismatch");
    }

    int dim() const override { return f_->dim(); }

    double value(std::span<const double> x) const override {
        return smooth_max(f_->value(x), g_->value(x), eps_).value;
    }

    FieldJet jet(std::span<const double> x) const override {
        const FieldJet a = f_->jet(x);
        const FieldJet b = g_->jet(x);
        const SmoothMaxJet m = smooth_max(a.value, b.value, eps_);
        const int n = dim();
        FieldJet j;
        j.value = m.value;
        j.gradient.resize(n);
        for (int i = 0; i < n; ++i) j.gradient[i] = m.d1 * a.gradient[i] + m.d2 * b.gradient[i];
        j.hessian = m.d1 * a.hessian;
        j.hessian += m.d2 * b.hessian;
        // Second-derivative terms: M11 gA gA + 2 M12 sym(gA gB) + M22 gB gB
        // with M11 = M22 = -M12 = phi'', i.e. phi'' (gA - gB)(x)(gA - gB).
        std::vector<double> diff(n);
        for (int i = 0; i < n; ++i) diff[i] = a.gradient[i] - b.gradient[i];
        j.hessian += m.d11 * SymMatrix::outer(diff);
        return j;
    }

private:
    FieldPtr f_, g_;
    double eps_;
};

} // namespace

FieldPtr expr_field(Expr e, int n) { return std::make_shared<ExprFieldImpl>(std::move(e), n); }

FieldPtr shifted_paraboloid(double delta, double r, int n) {
    return std::make_shared<ParaboloidField>(delta, r, n);
}

FieldPtr repaired_field(FieldPtr f, double c) {
    return std::make_shared<RepairedField>(std::move(f), c);
}

SmoothMaxJet smooth_max(double t1, double t2, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("smooth_max: eps must be positive");
    const Hinge h = hinge(t1 - t2, eps);
    SmoothMaxJet j;
    j.value = 0.5 * (t1 + t2) + h.v;
    j.d1 = 0.5 + h.d1;
    j.d2 = 0.5 - h.d1;
    j.d11 = h.d2;
    j.d22 = h.d2;
    j.d12 = -h.d2;
    return j;
}

FieldPtr smooth_max_field(FieldPtr f, FieldPtr g, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("smooth_max_field: eps must be positive");
    return std::make_shared<SmoothMaxFieldImpl>(std::move(f), std::move(g), eps);
}

} // namespace dirichlet
