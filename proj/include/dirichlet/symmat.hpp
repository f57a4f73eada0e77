#pragma once

// Dense symmetric-matrix kernel for small dimensions (2 <= n <= 16).
//
// SymMatrix stores a single lower triangle, so a_ij == a_ji holds exactly.
// Eigenvalues come from cyclic Jacobi rotations: the matrices are tiny, the
// method is symmetric-exact and converges quadratically.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirichlet {

class SpectralError : public std::runtime_error {
public:
    explicit SpectralError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Minimal dense matrix, used for structure maps (J, I, K), eigenvector
// accumulation and congruence transforms.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    std::vector<double> operator*(std::span<const double> v) const;

    // Gauss elimination with partial pivoting; throws std::invalid_argument on
    // (near-)singular input.
    Matrix inverse() const;

    double max_abs() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

class SymMatrix;

struct EigenDecomposition {
    std::vector<double> values; // ascending
    Matrix vectors;             // column k pairs with values[k]
};

class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n);

    static SymMatrix identity(int n);
    static SymMatrix diagonal(std::span<const double> d);
    static SymMatrix diagonal(std::initializer_list<double> d);
    // v (x) v
    static SymMatrix outer(std::span<const double> v);
    // Orthogonal projection onto span(frame); frame rows are the basis vectors.
    static SymMatrix projection(const std::vector<std::vector<double>>& frame, int n);
    // Symmetrizes (averages) a full square matrix.
    static SymMatrix from_dense(const Matrix& m);
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return n_; }

    double operator()(int i, int j) const { return tri_[index(i, j)]; }
    void set(int i, int j, double v) { tri_[index(i, j)] = v; }
    void add(int i, int j, double v) { tri_[index(i, j)] += v; }

    SymMatrix& operator+=(const SymMatrix& rhs);
    SymMatrix& operator-=(const SymMatrix& rhs);
    SymMatrix& operator*=(double s);
    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

    // A + t*Id
    SymMatrix shifted(double t) const;

    double trace() const;
    double max_abs() const;
    // <A,B> = sum_ij a_ij b_ij
    double inner(const SymMatrix& rhs) const;

    std::vector<double> apply(std::span<const double> v) const;
    double quad_form(std::span<const double> v) const; // v^T A v

    Matrix to_dense() const;

    // Ascending eigenvalues by cyclic Jacobi; throws SpectralError if the
    // sweep bound is exhausted before the off-diagonal mass is annihilated.
    std::vector<double> eig_sorted() const;
    EigenDecomposition eig_decomposition() const;
    double min_eigenvalue() const;
    double max_eigenvalue() const;

private:
    size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SymMatrix index");
        if (i < j) std::swap(i, j);
        return static_cast<size_t>(i) * (i + 1) / 2 + j;
    }

    int n_ = 0;
    std::vector<double> tri_;
};

// M^T A M, symmetrized against roundoff.
SymMatrix congruence(const Matrix& m, const SymMatrix& a);

// Sum_i xi_i^T A xi_i for an orthonormal frame; throws std::invalid_argument
// when the Gram matrix deviates from the identity by more than 1e-8.
double trace_on(const SymMatrix& a, const std::vector<std::vector<double>>& frame);

struct ComplexStructure {
    enum class Kind { real, complex, quaternionic };

    Kind kind = Kind::real;
    int n = 0;        // K-dimension
    int real_dim = 0; // N = n, 2n or 4n
    Matrix J, I, K;   // populated per kind (complex: J; quaternionic: I, J, K)

    // Complex pairs are interleaved: (x_{2k}, x_{2k+1}) with J acting as
    // [[0,-1],[1,0]] on each pair.  Quaternionic quadruples use left
    // multiplication by i, j, k on (a,b,c,d) = a + bi + cj + dk, which gives
    // IJ = K and pairwise anticommutation.
    static ComplexStructure real(int n);
    static ComplexStructure complex(int n);
    static ComplexStructure quaternionic(int n);

    int multiplicity() const {
        return kind == Kind::real ? 1 : (kind == Kind::complex ? 2 : 4);
    }
};

ComplexStructure structure_for(ComplexStructure::Kind kind, int real_dim);

// A_K: A itself over R, (A - JAJ)/2 over C, (A - IAI - JAJ - KAK)/4 over H.
SymMatrix hermitian_part(const SymMatrix& a, const ComplexStructure& s);

// (A + JAJ)/2; complex structures only.  Anticommutes with J, so its spectrum
// comes in pairs (+lambda, -lambda).
SymMatrix skew_hermitian_part(const SymMatrix& a, const ComplexStructure& s);

// The n K-eigenvalues of A_K, ascending: eigenvalues of the hermitian part
// grouped positionally into clusters of size multiplicity() and averaged.
std::vector<double> k_spectrum(const SymMatrix& a, const ComplexStructure& s);

// The n eigenvalues >= 0 of the skew-hermitian part, ascending (top half of
// the +/- paired spectrum).
std::vector<double> skew_spectrum_nonneg(const SymMatrix& a, const ComplexStructure& s);

} // namespace dirichlet
