#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "nebmap/error.hpp"

namespace nebmap {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// Dense complex matrix, row-major storage. Values are immutable in spirit:
// every operation returns a fresh matrix, so instances can be shared freely
// across threads once built.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    // Matrix unit E_{r,c}: single 1 at (r, c).
    static CMatrix unit(std::size_t n, std::size_t r, std::size_t c);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<cplx>& entries() const { return entries_; }

    CMatrix operator+(const CMatrix& other) const;
    CMatrix operator-(const CMatrix& other) const;
    CMatrix operator*(const CMatrix& other) const;
    CMatrix operator*(cplx scalar) const;
    CMatrix& operator+=(const CMatrix& other);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

inline CMatrix operator*(cplx scalar, const CMatrix& m) { return m * scalar; }

// max |a(i,j) - b(i,j)|; shapes must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

// Hilbert-Schmidt inner product Tr(A* B); conjugate-linear in A.
cplx hs_inner(const CMatrix& a, const CMatrix& b);

// Kronecker product with row-major pair flattening (i,k) -> i*rows(B)+k.
CMatrix kron(const CMatrix& a, const CMatrix& b);

struct EigDecomposition {
    std::vector<double> eigenvalues; // ascending
    CMatrix eigenvectors;            // columns, orthonormal
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Input must be Hermitian within tol (relative to its largest entry),
// otherwise a precondition_error is thrown.
EigDecomposition hermitian_eig(const CMatrix& h, double tol = kDefaultTol);

struct PsdReport {
    bool psd = false;
    double min_eigenvalue = 0.0;
    std::size_t numeric_rank = 0;
};

// PSD test with explicit tolerance: psd iff min eigenvalue >= -tol*max(1, max|lambda|).
// numeric_rank counts eigenvalues with |lambda| above the same threshold.
PsdReport is_psd(const CMatrix& h, double tol = kDefaultTol);

} // namespace nebmap
