#include "nebmap/algebra.hpp"

namespace nebmap {

CoeffMatrix compose(const CoeffMatrix& a, const CoeffMatrix& b) {
    if (!a.basis || !b.basis || !a.basis->equivalent_to(*b.basis)) {
        throw precondition_error("compose: coefficient matrices use different bases");
    }
    const IndexGroup& group = a.basis->group();
    const Cocycle& omega = a.basis->cocycle();
    const std::size_t order = group.order();

    CoeffMatrix out{a.basis, CMatrix(order, order)};
    for (std::size_t p = 0; p < order; ++p) {
        const std::size_t pinv = group.inv(p);
        for (std::size_t q = 0; q < order; ++q) {
            const cplx apq = a.mat(p, q);
            if (apq == cplx(0.0, 0.0)) continue;
            const std::size_t qinv = group.inv(q);
            for (std::size_t x = 0; x < order; ++x) {
                const std::size_t px = group.mul(pinv, x);
                const cplx phase_x = omega(p, px) * apq;
                for (std::size_t y = 0; y < order; ++y) {
                    const cplx bxy = b.mat(px, group.mul(qinv, y));
                    if (bxy == cplx(0.0, 0.0)) continue;
                    out.mat(x, y) += phase_x * std::conj(omega(q, group.mul(qinv, y))) * bxy;
                }
            }
        }
    }
    return out;
}

CoeffMatrix dagger(const CoeffMatrix& d) {
    const IndexGroup& group = d.basis->group();
    const Cocycle& omega = d.basis->cocycle();
    const std::size_t order = group.order();
    CoeffMatrix out{d.basis, CMatrix(order, order)};
    for (std::size_t x = 0; x < order; ++x) {
        const std::size_t xinv = group.inv(x);
        for (std::size_t y = 0; y < order; ++y) {
            const std::size_t yinv = group.inv(y);
            const cplx phase = omega(y, yinv) / omega(x, xinv);
            out.mat(x, y) = phase * std::conj(d.mat(xinv, yinv));
        }
    }
    return out;
}

CoeffMatrix sharp(const CoeffMatrix& d) {
    return CoeffMatrix{d.basis, d.mat.adjoint()};
}

} // namespace nebmap
