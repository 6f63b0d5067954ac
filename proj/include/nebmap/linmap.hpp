#pragma once

#include <functional>

#include "nebmap/neb.hpp"

namespace nebmap {

// Coefficient matrix of a linear map alpha on M_n relative to a nice error
// basis: alpha(X) = sum_{x,y} D(x,y) pi_x X pi_y^*, with unnormalized pi_g
// and rows/columns ordered by the group's element indices.
struct CoeffMatrix {
    BasisPtr basis;
    CMatrix mat; // n^2 x n^2

    std::size_t dim() const { return basis->dim(); }
};

// Choi matrix C = sum_{j,k} E_{jk} (x) alpha(E_{jk}); the first tensor factor
// carries the matrix-unit index, flattening (v1,v2) -> v1*n + v2.
struct ChoiMatrix {
    std::size_t dim = 0;
    CMatrix mat; // n^2 x n^2
};

// Kraus form: alpha = sum_j Ad_{L_j}. An empty list is the zero map.
struct KrausSet {
    std::size_t dim = 0;
    std::vector<CMatrix> ops;
};

// Dense superoperator acting on column-major vectorized matrices.
struct SuperOp {
    std::size_t dim = 0;
    CMatrix mat; // n^2 x n^2
};

using MapAction = std::function<CMatrix(const CMatrix&)>;

// Column-major vectorization helpers.
std::vector<cplx> vec_cm(const CMatrix& x);
CMatrix unvec_cm(const std::vector<cplx>& v, std::size_t n);

// alpha(X), computed natively in each form.
CMatrix apply(const CoeffMatrix& map, const CMatrix& x);
CMatrix apply(const ChoiMatrix& map, const CMatrix& x);
CMatrix apply(const KrausSet& map, const CMatrix& x);
CMatrix apply(const SuperOp& map, const CMatrix& x);

SuperOp superop_of(const MapAction& action, std::size_t dim);
SuperOp superop_of(const CoeffMatrix& map);
SuperOp superop_of(const ChoiMatrix& map);
SuperOp superop_of(const KrausSet& map);

ChoiMatrix choi_of_map(const MapAction& action, std::size_t dim);
ChoiMatrix choi_of_map(const CoeffMatrix& map);
ChoiMatrix choi_of_map(const KrausSet& map);
ChoiMatrix choi_of_map(const SuperOp& map);

// Coefficient extraction by Hilbert-Schmidt projection onto the basis
// {pi_x X pi_y^*}. The action is spot-checked for linearity on random pairs.
CoeffMatrix decompose(const MapAction& action, const BasisPtr& basis, double tol = kDefaultTol);
CoeffMatrix decompose(const SuperOp& map, const BasisPtr& basis, double tol = kDefaultTol);

// Coefficient-to-Choi change of basis. For a Weyl basis this uses the closed
// bicharacter formula; other bases fall back to assembling the Choi matrix
// from the map's action.
ChoiMatrix choi_from_coeff(const CoeffMatrix& map);
// Inverse change of basis; closed formula for Weyl bases, decomposition of
// the Choi action otherwise.
CoeffMatrix coeff_from_choi(const ChoiMatrix& choi, const BasisPtr& basis, double tol = kDefaultTol);

// Kraus synthesis from a PSD coefficient matrix: eigenvectors with
// eigenvalue above tol*max(1, lambda_max) become operators
// L_j = sqrt(lambda_j) sum_x v_j(x) pi_x. Throws if the matrix is not PSD.
KrausSet kraus_from_coeff(const CoeffMatrix& map, double tol = kDefaultTol);
// Rank-one sum D = sum_j |l_j><l_j| from the basis coordinates of each L_j.
CoeffMatrix coeff_from_kraus(const KrausSet& kraus, const BasisPtr& basis);

ChoiMatrix choi_from_superop(const SuperOp& map);
SuperOp superop_from_choi(const ChoiMatrix& map);

} // namespace nebmap
