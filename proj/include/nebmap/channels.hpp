#pragma once

#include "nebmap/linmap.hpp"

namespace nebmap {

// Closed-form coefficient matrices for a few basic maps, stated in the
// unnormalized-pi convention of CoeffMatrix.

// X -> X: unit entry at (identity, identity).
CoeffMatrix identity_coeff(const BasisPtr& basis);

// X -> Tr(X) I/n: (1/n^2) I.
CoeffMatrix depolarizing_coeff(const BasisPtr& basis);

// X -> X^t (Weyl basis only): D((a,b),(-a,b)) = kappa(a,b)/n, zero elsewhere.
CoeffMatrix transpose_coeff(const BasisPtr& basis);

// X -> diag(X) (Weyl basis only): D((0,b),(0,b)) = 1/n, zero elsewhere.
CoeffMatrix diag_expectation_coeff(const BasisPtr& basis);

// X -> L X L^*: rank-one matrix from the basis coordinates of L.
CoeffMatrix ad_coeff(const CMatrix& l, const BasisPtr& basis);

} // namespace nebmap
