#include "nebmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nebmap {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw precondition_error("CMatrix: entry count does not match rows*cols");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw precondition_error("CMatrix: ragged initializer list");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::unit(std::size_t n, std::size_t r, std::size_t c) {
    CMatrix m(n, n);
    m(r, c) = 1.0;
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw precondition_error("CMatrix: shape mismatch in addition");
    }
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + other.entries_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw precondition_error("CMatrix: shape mismatch in subtraction");
    }
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - other.entries_[i];
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    if (cols_ != other.rows_) {
        throw precondition_error("CMatrix: shape mismatch in multiplication");
    }
    CMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx aik = entries_[i * cols_ + k];
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                out.entries_[i * other.cols_ + j] += aik * other.entries_[k * other.cols_ + j];
            }
        }
    }
    return out;
}

CMatrix CMatrix::operator*(cplx scalar) const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scalar;
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw precondition_error("CMatrix: shape mismatch in addition");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = std::conj(entries_[i]);
    return out;
}

cplx CMatrix::trace() const {
    if (!is_square()) throw precondition_error("CMatrix: trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

bool CMatrix::all_finite() const {
    for (const cplx& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw precondition_error("max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw precondition_error("hs_inner: shape mismatch");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        s += std::conj(a.entries()[i]) * b.entries()[i];
    }
    return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
        }
    return out;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

// One complex Jacobi rotation zeroing a(p,q). Updates a <- U* a U, v <- v U
// where U differs from the identity only in rows/columns p and q.
void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;
    const cplx phase = apq / abs_apq;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double u = (aqq - app) / (2.0 * abs_apq);
    // Small-magnitude root of t^2 - 2ut - 1 = 0.
    const double t = (u >= 0.0) ? (u - std::hypot(1.0, u)) : (u + std::hypot(1.0, u));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx upq = -phase * s; // U(p,q)
    const cplx uqp = std::conj(phase) * s; // U(q,p)

    const std::size_t n = a.rows();
    // Rows: a <- U* a.
    for (std::size_t k = 0; k < n; ++k) {
        const cplx ap = a(p, k);
        const cplx aq = a(q, k);
        a(p, k) = c * ap + std::conj(uqp) * aq;
        a(q, k) = std::conj(upq) * ap + c * aq;
    }
    // Columns: a <- a U, and accumulate v <- v U.
    for (std::size_t k = 0; k < n; ++k) {
        const cplx ap = a(k, p);
        const cplx aq = a(k, q);
        a(k, p) = ap * c + aq * uqp;
        a(k, q) = ap * upq + aq * c;
        const cplx vp = v(k, p);
        const cplx vq = v(k, q);
        v(k, p) = vp * c + vq * uqp;
        v(k, q) = vp * upq + vq * c;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);
}

} // namespace

EigDecomposition hermitian_eig(const CMatrix& h, double tol) {
    if (!h.is_square()) throw precondition_error("hermitian_eig: matrix must be square");
    if (!h.all_finite()) throw precondition_error("hermitian_eig: non-finite entries");
    const std::size_t n = h.rows();

    const double scale = h.max_abs();
    double herm_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            herm_dev = std::max(herm_dev, std::abs(h(i, j) - std::conj(h(j, i))));
        }
    if (scale > 0.0 && herm_dev > tol * scale) {
        throw precondition_error("hermitian_eig: input is not Hermitian within tolerance");
    }

    // Symmetrize so rounding in the caller cannot leak into the iteration.
    CMatrix a = (h + h.adjoint()) * cplx(0.5, 0.0);
    CMatrix v = CMatrix::identity(n);

    const double fro = std::max(1.0, a.frobenius_norm());
    constexpr int kMaxSweeps = 80;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * fro) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

PsdReport is_psd(const CMatrix& h, double tol) {
    const EigDecomposition eig = hermitian_eig(h, tol);
    PsdReport report;
    if (eig.eigenvalues.empty()) {
        report.psd = true;
        return report;
    }
    double max_abs_eig = 0.0;
    for (double lambda : eig.eigenvalues) max_abs_eig = std::max(max_abs_eig, std::abs(lambda));
    const double threshold = tol * std::max(1.0, max_abs_eig);
    report.min_eigenvalue = eig.eigenvalues.front();
    report.psd = report.min_eigenvalue >= -threshold;
    for (double lambda : eig.eigenvalues) {
        if (std::abs(lambda) > threshold) ++report.numeric_rank;
    }
    return report;
}

} // namespace nebmap
