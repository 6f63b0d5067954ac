#pragma once

#include "nebmap/linmap.hpp"

namespace nebmap {

// Coefficient matrix of the composition (a after b) by the cocycle-twisted
// convolution. Both inputs must refer to the same basis.
CoeffMatrix compose(const CoeffMatrix& a, const CoeffMatrix& b);

// Hilbert-Schmidt adjoint: <X, alpha(Y)> = <dagger(alpha)(X), Y>.
CoeffMatrix dagger(const CoeffMatrix& d);

// Conjugation involution: X -> alpha(X^*)^*; the conjugate transpose of the
// coefficient matrix.
CoeffMatrix sharp(const CoeffMatrix& d);

} // namespace nebmap
