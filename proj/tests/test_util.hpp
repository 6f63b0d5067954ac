#pragma once

#include <random>

#include "nebmap/algebra.hpp"
#include "nebmap/channels.hpp"
#include "nebmap/linmap.hpp"

namespace testutil {

using nebmap::BasisPtr;
using nebmap::CMatrix;
using nebmap::CoeffMatrix;
using nebmap::cplx;

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    const CMatrix a = random_matrix(rng, n, n);
    return (a + a.adjoint()) * cplx(0.5, 0.0);
}

inline std::vector<cplx> random_unit_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(n);
    double norm2 = 0.0;
    for (cplx& e : v) {
        e = cplx(gauss(rng), gauss(rng));
        norm2 += std::norm(e);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& e : v) e *= inv;
    return v;
}

// Generic coefficient matrix (dense complex Gaussian entries).
inline CoeffMatrix random_coeff(std::mt19937_64& rng, const BasisPtr& basis) {
    const std::size_t order = basis->group().order();
    return CoeffMatrix{basis, random_matrix(rng, order, order)};
}

// Hermiticity-preserving map: Hermitian coefficient matrix.
inline CoeffMatrix random_hp_coeff(std::mt19937_64& rng, const BasisPtr& basis) {
    const std::size_t order = basis->group().order();
    return CoeffMatrix{basis, random_hermitian(rng, order)};
}

// CP map built from r random Kraus operators.
inline nebmap::KrausSet random_kraus(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    nebmap::KrausSet k{n, {}};
    for (std::size_t j = 0; j < r; ++j) k.ops.push_back(random_matrix(rng, n, n));
    return k;
}

// Trace-preserving CP map: random Kraus set normalized so sum L*L = I.
inline nebmap::KrausSet random_cptp_kraus(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    nebmap::KrausSet k = random_kraus(rng, n, r);
    CMatrix s(n, n);
    for (const CMatrix& op : k.ops) s += op.adjoint() * op;
    const nebmap::EigDecomposition eig = nebmap::hermitian_eig(s, 1e-9);
    CMatrix inv_sqrt(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx e = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                e += eig.eigenvectors(i, m) * std::conj(eig.eigenvectors(j, m)) /
                     std::sqrt(eig.eigenvalues[m]);
            }
            inv_sqrt(i, j) = e;
        }
    for (CMatrix& op : k.ops) op = op * inv_sqrt;
    return k;
}

// Independent coefficient oracle: solves the linear system
//   superop(alpha) = sum_{x,y} D(x,y) superop(T_{x,y})
// by Gaussian elimination with partial pivoting. Uses only the defining
// equation, not the Hilbert-Schmidt projection the library implements.
inline CoeffMatrix solve_coefficients(const nebmap::SuperOp& target, const BasisPtr& basis) {
    const std::size_t n = basis->dim();
    const std::size_t order = basis->group().order();
    const std::size_t rows = n * n * n * n; // vectorized superoperator entries
    const std::size_t cols = order * order;

    std::vector<cplx> a(rows * cols);
    for (std::size_t gx = 0; gx < order; ++gx)
        for (std::size_t gy = 0; gy < order; ++gy) {
            const CMatrix s =
                nebmap::kron(basis->unitary(gy).conjugate(), basis->unitary(gx));
            const std::size_t col = gx * order + gy;
            for (std::size_t i = 0; i < rows; ++i) a[i * cols + col] = s.entries()[i];
        }
    std::vector<cplx> b(target.mat.entries());

    // Gaussian elimination on the (rows x cols) system; rows >= cols.
    std::vector<std::size_t> pivot_of_col(cols);
    std::vector<bool> used(rows, false);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t best = rows;
        double best_abs = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (used[r]) continue;
            const double v = std::abs(a[r * cols + c]);
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best == rows || best_abs == 0.0) {
            throw std::runtime_error("solve_coefficients: singular system");
        }
        used[best] = true;
        pivot_of_col[c] = best;
        const cplx inv = cplx(1.0, 0.0) / a[best * cols + c];
        for (std::size_t cc = c; cc < cols; ++cc) a[best * cols + cc] *= inv;
        b[best] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == best) continue;
            const cplx factor = a[r * cols + c];
            if (factor == cplx(0.0, 0.0)) continue;
            for (std::size_t cc = c; cc < cols; ++cc) a[r * cols + cc] -= factor * a[best * cols + cc];
            b[r] -= factor * b[best];
        }
    }

    CoeffMatrix out{basis, CMatrix(order, order)};
    for (std::size_t gx = 0; gx < order; ++gx)
        for (std::size_t gy = 0; gy < order; ++gy) {
            out.mat(gx, gy) = b[pivot_of_col[gx * order + gy]];
        }
    return out;
}

inline CoeffMatrix solve_coefficients(const nebmap::MapAction& action, const BasisPtr& basis) {
    return solve_coefficients(nebmap::superop_of(action, basis->dim()), basis);
}

} // namespace testutil
