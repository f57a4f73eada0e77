#include "dirichlet/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dirichlet {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("Matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

std::vector<double> Matrix::operator*(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("Matrix*vector shape mismatch");
    std::vector<double> out(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    const int n = rows_;
    Matrix a = *this;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(1.0, max_abs());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (std::fabs(a(piv, col)) < 1e-12 * scale)
            throw std::invalid_argument("singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

SymMatrix::SymMatrix(int n) : n_(n), tri_(static_cast<size_t>(n) * (n + 1) / 2, 0.0) {
    if (n < 1) throw std::invalid_argument("SymMatrix dimension must be positive");
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) a.set(i, i, 1.0);
    return a;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    SymMatrix a(static_cast<int>(d.size()));
    for (int i = 0; i < a.n_; ++i) a.set(i, i, d[i]);
    return a;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
}

SymMatrix SymMatrix::outer(std::span<const double> v) {
    SymMatrix a(static_cast<int>(v.size()));
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j <= i; ++j) a.set(i, j, v[i] * v[j]);
    return a;
}

SymMatrix SymMatrix::projection(const std::vector<std::vector<double>>& frame, int n) {
    SymMatrix p(n);
    for (const auto& v : frame) {
        if (static_cast<int>(v.size()) != n) throw DimensionMismatch("projection frame dimension");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) p.add(i, j, v[i] * v[j]);
    }
    return p;
}

SymMatrix SymMatrix::from_dense(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("from_dense expects square matrix");
    SymMatrix a(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j <= i; ++j) a.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return a;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw DimensionMismatch("from_rows expects square data");
        for (int j = 0; j <= i; ++j) a.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
    }
    return a;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& rhs) {
    if (n_ != rhs.n_) throw DimensionMismatch("SymMatrix addition dimension mismatch");
    for (size_t k = 0; k < tri_.size(); ++k) tri_[k] += rhs.tri_[k];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& rhs) {
    if (n_ != rhs.n_) throw DimensionMismatch("SymMatrix subtraction dimension mismatch");
    for (size_t k = 0; k < tri_.size(); ++k) tri_[k] -= rhs.tri_[k];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (double& v : tri_) v *= s;
    return *this;
}

SymMatrix SymMatrix::shifted(double t) const {
    SymMatrix a = *this;
    for (int i = 0; i < n_; ++i) a.add(i, i, t);
    return a;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : tri_) m = std::max(m, std::fabs(v));
    return m;
}

double SymMatrix::inner(const SymMatrix& rhs) const {
    if (n_ != rhs.n_) throw DimensionMismatch("SymMatrix inner dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s += (*this)(i, j) * rhs(i, j);
    return s;
}

std::vector<double> SymMatrix::apply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("SymMatrix apply dimension mismatch");
    std::vector<double> out(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double SymMatrix::quad_form(std::span<const double> v) const {
    const auto av = apply(v);
    return std::inner_product(av.begin(), av.end(), v.begin(), 0.0);
}

Matrix SymMatrix::to_dense() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

namespace {

// One cyclic Jacobi pass over the strict upper triangle of a dense buffer.
// Returns the remaining off-diagonal absolute sum.
double jacobi_sweep(Matrix& a, Matrix* v) {
    const int n = a.rows();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const double apq = a(p, q);
            if (apq == 0.0) continue;
            const double app = a(p, p);
            const double aqq = a(q, q);
            const double tau = (aqq - app) / (2.0 * apq);
            const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                          : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            for (int k = 0; k < n; ++k) {
                const double akp = a(k, p);
                const double akq = a(k, q);
                a(k, p) = c * akp - s * akq;
                a(k, q) = s * akp + c * akq;
            }
            for (int k = 0; k < n; ++k) {
                const double apk = a(p, k);
                const double aqk = a(q, k);
                a(p, k) = c * apk - s * aqk;
                a(q, k) = s * apk + c * aqk;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            if (v) {
                for (int k = 0; k < n; ++k) {
                    const double vkp = (*v)(k, p);
                    const double vkq = (*v)(k, q);
                    (*v)(k, p) = c * vkp - s * vkq;
                    (*v)(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    double off = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) off += std::fabs(a(i, j));
    return off;
}

constexpr int kMaxSweeps = 64;

} // namespace

EigenDecomposition SymMatrix::eig_decomposition() const {
    Matrix a = to_dense();
    Matrix v = Matrix::identity(n_);
    const double scale = std::max(1.0, max_abs());
    double off = 0.0;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        off = jacobi_sweep(a, &v);
        if (off <= 1e-15 * scale) break;
    }
    if (sweep == kMaxSweeps)
        throw SpectralError("Jacobi eigensolver did not converge after " +
                            std::to_string(kMaxSweeps) + " sweeps (off=" + std::to_string(off) + ")");
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
    EigenDecomposition dec;
    dec.values.resize(n_);
    dec.vectors = Matrix(n_, n_);
    for (int k = 0; k < n_; ++k) {
        dec.values[k] = a(order[k], order[k]);
        for (int r = 0; r < n_; ++r) dec.vectors(r, k) = v(r, order[k]);
    }
    return dec;
}

namespace {

// Stack-buffer cyclic Jacobi for values only; n <= 16.
int jacobi_values(double* a, int n, double scale) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += std::fabs(a[i * n + j]);
        if (off <= 1e-15 * scale) return sweep + 1;
    }
    return -1;
}

} // namespace

std::vector<double> SymMatrix::eig_sorted() const {
    if (n_ == 1) return {tri_[0]};
    if (n_ == 2) {
        // Closed form; the subtraction under the root is organized to stay
        // exact for diagonal input.
        const double a = (*this)(0, 0), d = (*this)(1, 1), b = (*this)(0, 1);
        const double half_tr = 0.5 * (a + d);
        const double disc = std::hypot(0.5 * (a - d), b);
        return {half_tr - disc, half_tr + disc};
    }
    double buf[16 * 16];
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) buf[i * n_ + j] = (*this)(i, j);
    if (jacobi_values(buf, n_, std::max(1.0, max_abs())) < 0)
        throw SpectralError("Jacobi eigensolver did not converge after " +
                            std::to_string(kMaxSweeps) + " sweeps");
    std::vector<double> vals(n_);
    for (int i = 0; i < n_; ++i) vals[i] = buf[i * n_ + i];
    std::sort(vals.begin(), vals.end());
    return vals;
}

double SymMatrix::min_eigenvalue() const { return eig_sorted().front(); }
double SymMatrix::max_eigenvalue() const { return eig_sorted().back(); }

SymMatrix congruence(const Matrix& m, const SymMatrix& a) {
    return SymMatrix::from_dense(m.transpose() * a.to_dense() * m);
}

double trace_on(const SymMatrix& a, const std::vector<std::vector<double>>& frame) {
    const int n = a.dim();
    for (size_t i = 0; i < frame.size(); ++i) {
        if (static_cast<int>(frame[i].size()) != n) throw DimensionMismatch("trace_on frame dimension");
        for (size_t j = 0; j <= i; ++j) {
            double g = std::inner_product(frame[i].begin(), frame[i].end(), frame[j].begin(), 0.0);
            if (i == j) g -= 1.0;
            if (std::fabs(g) > 1e-8)
                throw std::invalid_argument("trace_on: frame is not orthonormal (Gram deviation " +
                                            std::to_string(std::fabs(g)) + ")");
        }
    }
    double t = 0.0;
    for (const auto& v : frame) t += a.quad_form(v);
    return t;
}

namespace {

void place_block(Matrix& m, int block, const double (&b)[4][4]) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(4 * block + r, 4 * block + c) = b[r][c];
}

} // namespace

ComplexStructure ComplexStructure::real(int n) {
    ComplexStructure s;
    s.kind = Kind::real;
    s.n = n;
    s.real_dim = n;
    return s;
}

ComplexStructure ComplexStructure::complex(int n) {
    ComplexStructure s;
    s.kind = Kind::complex;
    s.n = n;
    s.real_dim = 2 * n;
    s.J = Matrix(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        s.J(2 * k, 2 * k + 1) = -1.0;
        s.J(2 * k + 1, 2 * k) = 1.0;
    }
    return s;
}

ComplexStructure ComplexStructure::quaternionic(int n) {
    ComplexStructure s;
    s.kind = Kind::quaternionic;
    s.n = n;
    s.real_dim = 4 * n;
    s.I = Matrix(4 * n, 4 * n);
    s.J = Matrix(4 * n, 4 * n);
    s.K = Matrix(4 * n, 4 * n);
    // Left multiplication by i, j, k on (a, b, c, d).
    const double bi[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    const double bj[4][4] = {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    const double bk[4][4] = {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    for (int b = 0; b < n; ++b) {
        place_block(s.I, b, bi);
        place_block(s.J, b, bj);
        place_block(s.K, b, bk);
    }
    return s;
}

ComplexStructure structure_for(ComplexStructure::Kind kind, int real_dim) {
    switch (kind) {
    case ComplexStructure::Kind::real:
        return ComplexStructure::real(real_dim);
    case ComplexStructure::Kind::complex:
        if (real_dim % 2 != 0) throw DimensionMismatch("complex structure needs even real dimension");
        return ComplexStructure::complex(real_dim / 2);
    case ComplexStructure::Kind::quaternionic:
        if (real_dim % 4 != 0) throw DimensionMismatch("quaternionic structure needs real dimension divisible by 4");
        return ComplexStructure::quaternionic(real_dim / 4);
    }
    throw std::invalid_argument("unknown structure kind");
}

namespace {

SymMatrix sandwich(const Matrix& m, const SymMatrix& a) {
    // m * A * m for a skew-orthogonal m; symmetrized against roundoff.
    return SymMatrix::from_dense(m * a.to_dense() * m);
}

} // namespace

SymMatrix hermitian_part(const SymMatrix& a, const ComplexStructure& s) {
    if (a.dim() != s.real_dim) throw DimensionMismatch("hermitian_part dimension mismatch");
    switch (s.kind) {
    case ComplexStructure::Kind::real:
        return a;
    case ComplexStructure::Kind::complex: {
        SymMatrix out = a;
        out -= sandwich(s.J, a);
        out *= 0.5;
        return out;
    }
    case ComplexStructure::Kind::quaternionic: {
        SymMatrix out = a;
        out -= sandwich(s.I, a);
        out -= sandwich(s.J, a);
        out -= sandwich(s.K, a);
        out *= 0.25;
        return out;
    }
    }
    throw std::invalid_argument("unknown structure kind");
}

SymMatrix skew_hermitian_part(const SymMatrix& a, const ComplexStructure& s) {
    if (s.kind != ComplexStructure::Kind::complex)
        throw std::invalid_argument("skew_hermitian_part requires a complex structure");
    if (a.dim() != s.real_dim) throw DimensionMismatch("skew_hermitian_part dimension mismatch");
    SymMatrix out = a;
    out += sandwich(s.J, a);
    out *= 0.5;
    return out;
}

std::vector<double> k_spectrum(const SymMatrix& a, const ComplexStructure& s) {
    const int m = s.multiplicity();
    const auto all = hermitian_part(a, s).eig_sorted();
    std::vector<double> out(s.n);
    for (int i = 0; i < s.n; ++i) {
        double sum = 0.0;
        for (int k = 0; k < m; ++k) sum += all[static_cast<size_t>(i) * m + k];
        out[i] = sum / m;
    }
    return out;
}

std::vector<double> skew_spectrum_nonneg(const SymMatrix& a, const ComplexStructure& s) {
    const auto all = skew_hermitian_part(a, s).eig_sorted();
    return std::vector<double>(all.begin() + s.n, all.end());
}

} // namespace dirichlet
