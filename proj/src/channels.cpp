#include "nebmap/channels.hpp"

namespace nebmap {

CoeffMatrix identity_coeff(const BasisPtr& basis) {
    const std::size_t order = basis->group().order();
    CoeffMatrix out{basis, CMatrix(order, order)};
    out.mat(basis->group().identity(), basis->group().identity()) = 1.0;
    return out;
}

CoeffMatrix depolarizing_coeff(const BasisPtr& basis) {
    const std::size_t order = basis->group().order();
    CoeffMatrix out{basis, CMatrix(order, order)};
    const double w = 1.0 / static_cast<double>(order);
    for (std::size_t g = 0; g < order; ++g) out.mat(g, g) = w;
    return out;
}

CoeffMatrix transpose_coeff(const BasisPtr& basis) {
    if (!basis->is_weyl()) {
        throw precondition_error("transpose_coeff: requires a Weyl basis");
    }
    const std::size_t n = basis->dim();
    const Bicharacter kappa(n);
    CoeffMatrix out{basis, CMatrix(n * n, n * n)};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            out.mat(basis->weyl_index(a, b), basis->weyl_index((n - a) % n, b)) =
                kappa(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)) /
                static_cast<double>(n);
        }
    return out;
}

CoeffMatrix diag_expectation_coeff(const BasisPtr& basis) {
    if (!basis->is_weyl()) {
        throw precondition_error("diag_expectation_coeff: requires a Weyl basis");
    }
    const std::size_t n = basis->dim();
    CoeffMatrix out{basis, CMatrix(n * n, n * n)};
    for (std::size_t b = 0; b < n; ++b) {
        const std::size_t g = basis->weyl_index(0, b);
        out.mat(g, g) = 1.0 / static_cast<double>(n);
    }
    return out;
}

CoeffMatrix ad_coeff(const CMatrix& l, const BasisPtr& basis) {
    const std::size_t n = basis->dim();
    if (l.rows() != n || l.cols() != n) {
        throw precondition_error("ad_coeff: operator dimension mismatch");
    }
    return coeff_from_kraus(KrausSet{n, {l}}, basis);
}

} // namespace nebmap
