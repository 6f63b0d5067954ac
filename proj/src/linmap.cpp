#include "nebmap/linmap.hpp"

#include <cmath>
#include <random>

namespace nebmap {

namespace {

void check_dim(const CMatrix& x, std::size_t n, const char* who) {
    if (x.rows() != n || x.cols() != n) {
        throw precondition_error(std::string(who) + ": matrix dimension mismatch");
    }
}

} // namespace

std::vector<cplx> vec_cm(const CMatrix& x) {
    std::vector<cplx> v(x.rows() * x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) v[j * x.rows() + i] = x(i, j);
    return v;
}

CMatrix unvec_cm(const std::vector<cplx>& v, std::size_t n) {
    if (v.size() != n * n) throw precondition_error("unvec_cm: wrong vector length");
    CMatrix x(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) x(i, j) = v[j * n + i];
    return x;
}

// ---------------------------------------------------------------------------
// apply

CMatrix apply(const CoeffMatrix& map, const CMatrix& x) {
    const std::size_t n = map.dim();
    check_dim(x, n, "apply(coeff)");
    const std::size_t order = map.basis->group().order();
    CMatrix out(n, n);
    for (std::size_t gx = 0; gx < order; ++gx) {
        // Collect sum_y D(x,y) pi_y^* once per row of D.
        CMatrix right(n, n);
        bool nonzero = false;
        for (std::size_t gy = 0; gy < order; ++gy) {
            const cplx d = map.mat(gx, gy);
            if (d == cplx(0.0, 0.0)) continue;
            nonzero = true;
            right += map.basis->unitary(gy).adjoint() * d;
        }
        if (!nonzero) continue;
        out += map.basis->unitary(gx) * (x * right);
    }
    return out;
}

CMatrix apply(const ChoiMatrix& map, const CMatrix& x) {
    const std::size_t n = map.dim;
    check_dim(x, n, "apply(choi)");
    // alpha(X)[v2,w2] = sum_{v1,w1} X[v1,w1] C[(v1,v2),(w1,w2)].
    CMatrix out(n, n);
    for (std::size_t v2 = 0; v2 < n; ++v2)
        for (std::size_t w2 = 0; w2 < n; ++w2) {
            cplx s = 0.0;
            for (std::size_t v1 = 0; v1 < n; ++v1)
                for (std::size_t w1 = 0; w1 < n; ++w1) {
                    s += x(v1, w1) * map.mat(v1 * n + v2, w1 * n + w2);
                }
            out(v2, w2) = s;
        }
    return out;
}

CMatrix apply(const KrausSet& map, const CMatrix& x) {
    check_dim(x, map.dim, "apply(kraus)");
    CMatrix out(map.dim, map.dim);
    for (const CMatrix& op : map.ops) {
        check_dim(op, map.dim, "apply(kraus)");
        out += op * x * op.adjoint();
    }
    return out;
}

CMatrix apply(const SuperOp& map, const CMatrix& x) {
    const std::size_t n = map.dim;
    check_dim(x, n, "apply(superop)");
    const std::vector<cplx> v = vec_cm(x);
    std::vector<cplx> w(n * n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n * n; ++i)
        for (std::size_t j = 0; j < n * n; ++j) w[i] += map.mat(i, j) * v[j];
    return unvec_cm(w, n);
}

// ---------------------------------------------------------------------------
// superop / choi assembly

SuperOp superop_of(const MapAction& action, std::size_t dim) {
    SuperOp s{dim, CMatrix(dim * dim, dim * dim)};
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            const CMatrix img = action(CMatrix::unit(dim, a, b));
            check_dim(img, dim, "superop_of");
            const std::vector<cplx> col = vec_cm(img);
            for (std::size_t i = 0; i < dim * dim; ++i) s.mat(i, b * dim + a) = col[i];
        }
    return s;
}

SuperOp superop_of(const CoeffMatrix& map) {
    const std::size_t n = map.dim();
    SuperOp s{n, CMatrix(n * n, n * n)};
    const std::size_t order = map.basis->group().order();
    for (std::size_t gx = 0; gx < order; ++gx)
        for (std::size_t gy = 0; gy < order; ++gy) {
            const cplx d = map.mat(gx, gy);
            if (d == cplx(0.0, 0.0)) continue;
            // vec(A X B*) = (conj(B) (x) A) vec(X).
            s.mat += kron(map.basis->unitary(gy).conjugate(), map.basis->unitary(gx)) * d;
        }
    return s;
}

SuperOp superop_of(const ChoiMatrix& map) { return superop_from_choi(map); }

SuperOp superop_of(const KrausSet& map) {
    SuperOp s{map.dim, CMatrix(map.dim * map.dim, map.dim * map.dim)};
    for (const CMatrix& op : map.ops) {
        check_dim(op, map.dim, "superop_of(kraus)");
        s.mat += kron(op.conjugate(), op);
    }
    return s;
}

ChoiMatrix choi_of_map(const MapAction& action, std::size_t dim) {
    ChoiMatrix c{dim, CMatrix(dim * dim, dim * dim)};
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
            const CMatrix img = action(CMatrix::unit(dim, j, k));
            check_dim(img, dim, "choi_of_map");
            for (std::size_t v2 = 0; v2 < dim; ++v2)
                for (std::size_t w2 = 0; w2 < dim; ++w2) {
                    c.mat(j * dim + v2, k * dim + w2) = img(v2, w2);
                }
        }
    return c;
}

ChoiMatrix choi_of_map(const CoeffMatrix& map) {
    return choi_of_map([&map](const CMatrix& x) { return apply(map, x); }, map.dim());
}

ChoiMatrix choi_of_map(const KrausSet& map) {
    return choi_of_map([&map](const CMatrix& x) { return apply(map, x); }, map.dim);
}

ChoiMatrix choi_of_map(const SuperOp& map) { return choi_from_superop(map); }

// ---------------------------------------------------------------------------
// decomposition

CoeffMatrix decompose(const MapAction& action, const BasisPtr& basis, double tol) {
    const std::size_t n = basis->dim();
    const std::size_t order = basis->group().order();

    // Images of all matrix units; also the data for the linearity spot check.
    std::vector<CMatrix> images;
    images.reserve(order);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            CMatrix img = action(CMatrix::unit(n, a, b));
            check_dim(img, n, "decompose");
            images.push_back(std::move(img));
        }

    std::mt19937_64 rng(0x5eedu);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double img_scale = 1.0;
    for (const CMatrix& img : images) img_scale = std::max(img_scale, img.max_abs());
    for (int trial = 0; trial < 3; ++trial) {
        CMatrix x(n, n), y(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                x(i, j) = cplx(gauss(rng), gauss(rng));
                y(i, j) = cplx(gauss(rng), gauss(rng));
            }
        const cplx a(gauss(rng), gauss(rng));
        const cplx b(gauss(rng), gauss(rng));
        const CMatrix lhs = action(x * a + y * b);
        const CMatrix rhs = action(x) * a + action(y) * b;
        if (max_abs_diff(lhs, rhs) > std::max(tol, 1e-10) * 100.0 * img_scale) {
            throw precondition_error("decompose: action failed the linearity spot check");
        }
    }

    // D(x,y) = (1/n^2) sum_{j,k} Tr(pi_y E_{kj} pi_x^* alpha(E_{jk}))
    //        = (1/n^2) sum_{j,k} (pi_x^* alpha(E_{jk}) pi_y)[j,k].
    CoeffMatrix out{basis, CMatrix(order, order)};
    const double norm = 1.0 / static_cast<double>(n * n);
    for (std::size_t gx = 0; gx < order; ++gx) {
        const CMatrix ux_adj = basis->unitary(gx).adjoint();
        std::vector<CMatrix> pre;
        pre.reserve(order);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) pre.push_back(ux_adj * images[a * n + b]);
        for (std::size_t gy = 0; gy < order; ++gy) {
            const CMatrix& uy = basis->unitary(gy);
            cplx s = 0.0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    const CMatrix& p = pre[a * n + b];
                    cplx entry = 0.0;
                    for (std::size_t m = 0; m < n; ++m) entry += p(a, m) * uy(m, b);
                    s += entry;
                }
            out.mat(gx, gy) = s * norm;
        }
    }
    return out;
}

CoeffMatrix decompose(const SuperOp& map, const BasisPtr& basis, double tol) {
    if (map.dim != basis->dim()) throw precondition_error("decompose: dimension mismatch");
    return decompose([&map](const CMatrix& x) { return apply(map, x); }, basis, tol);
}

// ---------------------------------------------------------------------------
// coefficient <-> Choi

ChoiMatrix choi_from_coeff(const CoeffMatrix& map) {
    const std::size_t n = map.dim();
    if (!map.basis->is_weyl()) {
        return choi_of_map(map);
    }
    const Bicharacter kappa(n);
    ChoiMatrix c{n, CMatrix(n * n, n * n)};
    for (std::size_t v1 = 0; v1 < n; ++v1)
        for (std::size_t v2 = 0; v2 < n; ++v2)
            for (std::size_t w1 = 0; w1 < n; ++w1)
                for (std::size_t w2 = 0; w2 < n; ++w2) {
                    cplx s = 0.0;
                    const std::size_t x1 = (v2 + n - v1) % n;
                    const std::size_t y1 = (w2 + n - w1) % n;
                    for (std::size_t x2 = 0; x2 < n; ++x2)
                        for (std::size_t y2 = 0; y2 < n; ++y2) {
                            const cplx phase =
                                kappa(static_cast<std::int64_t>(x2), static_cast<std::int64_t>(v1)) /
                                kappa(static_cast<std::int64_t>(y2), static_cast<std::int64_t>(w1));
                            s += phase * map.mat(map.basis->weyl_index(x1, x2),
                                                 map.basis->weyl_index(y1, y2));
                        }
                    c.mat(v1 * n + v2, w1 * n + w2) = s;
                }
    return c;
}

CoeffMatrix coeff_from_choi(const ChoiMatrix& choi, const BasisPtr& basis, double tol) {
    const std::size_t n = basis->dim();
    if (choi.dim != n || choi.mat.rows() != n * n || choi.mat.cols() != n * n) {
        throw precondition_error("coeff_from_choi: dimension mismatch");
    }
    if (!basis->is_weyl()) {
        return decompose([&choi](const CMatrix& x) { return apply(choi, x); }, basis, tol);
    }
    const Bicharacter kappa(n);
    CoeffMatrix out{basis, CMatrix(n * n, n * n)};
    const double norm = 1.0 / static_cast<double>(n * n);
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t y1 = 0; y1 < n; ++y1)
                for (std::size_t y2 = 0; y2 < n; ++y2) {
                    cplx s = 0.0;
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b) {
                            const cplx phase =
                                kappa(static_cast<std::int64_t>(y2), static_cast<std::int64_t>(b)) /
                                kappa(static_cast<std::int64_t>(x2), static_cast<std::int64_t>(a));
                            s += phase * choi.mat(a * n + (a + x1) % n, b * n + (b + y1) % n);
                        }
                    out.mat(basis->weyl_index(x1, x2), basis->weyl_index(y1, y2)) = s * norm;
                }
    return out;
}

// ---------------------------------------------------------------------------
// coefficient <-> Kraus

KrausSet kraus_from_coeff(const CoeffMatrix& map, double tol) {
    const std::size_t n = map.dim();
    const std::size_t order = map.basis->group().order();
    const PsdReport psd = is_psd(map.mat, tol);
    if (!psd.psd) {
        throw precondition_error("kraus_from_coeff: coefficient matrix is not PSD (min eigenvalue " +
                                 std::to_string(psd.min_eigenvalue) + ")");
    }
    const EigDecomposition eig = hermitian_eig(map.mat, tol);
    double lambda_max = 0.0;
    for (double lambda : eig.eigenvalues) lambda_max = std::max(lambda_max, lambda);
    const double threshold = tol * std::max(1.0, lambda_max);

    KrausSet out{n, {}};
    // Largest eigenvalue first; threshold ties are kept.
    for (std::size_t j = eig.eigenvalues.size(); j-- > 0;) {
        const double lambda = eig.eigenvalues[j];
        if (lambda < threshold) break;
        const double w = std::sqrt(lambda);
        CMatrix op(n, n);
        for (std::size_t g = 0; g < order; ++g) {
            const cplx coeff = eig.eigenvectors(g, j) * w;
            if (coeff == cplx(0.0, 0.0)) continue;
            op += map.basis->unitary(g) * coeff;
        }
        out.ops.push_back(std::move(op));
    }
    return out;
}

CoeffMatrix coeff_from_kraus(const KrausSet& kraus, const BasisPtr& basis) {
    const std::size_t n = basis->dim();
    if (kraus.dim != n) throw precondition_error("coeff_from_kraus: dimension mismatch");
    const std::size_t order = basis->group().order();
    CoeffMatrix out{basis, CMatrix(order, order)};
    for (const CMatrix& op : kraus.ops) {
        check_dim(op, n, "coeff_from_kraus");
        std::vector<cplx> coords(order);
        for (std::size_t g = 0; g < order; ++g) {
            coords[g] = hs_inner(basis->unitary(g), op) / static_cast<double>(n);
        }
        for (std::size_t gx = 0; gx < order; ++gx)
            for (std::size_t gy = 0; gy < order; ++gy) {
                out.mat(gx, gy) += coords[gx] * std::conj(coords[gy]);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Choi <-> superoperator reshuffle

ChoiMatrix choi_from_superop(const SuperOp& map) {
    const std::size_t n = map.dim;
    ChoiMatrix c{n, CMatrix(n * n, n * n)};
    // C[(v1,v2),(w1,w2)] = S[v2 + n w2, v1 + n w1].
    for (std::size_t v1 = 0; v1 < n; ++v1)
        for (std::size_t v2 = 0; v2 < n; ++v2)
            for (std::size_t w1 = 0; w1 < n; ++w1)
                for (std::size_t w2 = 0; w2 < n; ++w2) {
                    c.mat(v1 * n + v2, w1 * n + w2) = map.mat(v2 + n * w2, v1 + n * w1);
                }
    return c;
}

SuperOp superop_from_choi(const ChoiMatrix& map) {
    const std::size_t n = map.dim;
    SuperOp s{n, CMatrix(n * n, n * n)};
    for (std::size_t v1 = 0; v1 < n; ++v1)
        for (std::size_t v2 = 0; v2 < n; ++v2)
            for (std::size_t w1 = 0; w1 < n; ++w1)
                for (std::size_t w2 = 0; w2 < n; ++w2) {
                    s.mat(v2 + n * w2, v1 + n * w1) = map.mat(v1 * n + v2, w1 * n + w2);
                }
    return s;
}

} // namespace nebmap
