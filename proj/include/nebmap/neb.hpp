#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nebmap/linalg.hpp"

namespace nebmap {

// Finite group given by its full multiplication table. Elements are indices
// 0..order-1; optional human-readable labels. Group axioms are checked
// exhaustively at construction (desk scale: order <= a few hundred).
class IndexGroup {
public:
    IndexGroup() = default;

    // Z_n x Z_n with (a,b) -> a*n + b, componentwise addition mod n.
    static IndexGroup cyclic_pair(std::size_t n);
    static IndexGroup from_table(std::vector<std::size_t> mul_table,
                                 std::vector<std::string> labels = {});
    // Direct product; element (g,h) -> g*rhs.order() + h.
    static IndexGroup direct_product(const IndexGroup& lhs, const IndexGroup& rhs);

    std::size_t order() const { return order_; }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t g, std::size_t h) const { return mul_[g * order_ + h]; }
    std::size_t inv(std::size_t g) const { return inv_[g]; }
    const std::string& label(std::size_t g) const { return labels_[g]; }
    const std::vector<std::size_t>& mul_table() const { return mul_; }

    bool same_table(const IndexGroup& other) const {
        return order_ == other.order_ && identity_ == other.identity_ && mul_ == other.mul_;
    }

private:
    void finalize(); // locates identity, builds inverses, checks axioms

    std::size_t order_ = 0;
    std::size_t identity_ = 0;
    std::vector<std::size_t> mul_;
    std::vector<std::size_t> inv_;
    std::vector<std::string> labels_;
};

// Symmetric non-degenerate character pairing on Z_n: (k,l) -> exp(2*pi*i*k*l/n).
class Bicharacter {
public:
    explicit Bicharacter(std::size_t n);
    std::size_t modulus() const { return n_; }
    cplx operator()(std::int64_t k, std::int64_t l) const;

private:
    std::size_t n_ = 1;
};

Bicharacter standard_bicharacter(std::size_t n);

// Unit-modulus phase table omega(g,h) from pi_g pi_h = omega(g,h) pi_{gh}.
class Cocycle {
public:
    Cocycle() = default;
    Cocycle(std::size_t order, std::vector<cplx> values);

    std::size_t order() const { return order_; }
    cplx operator()(std::size_t g, std::size_t h) const { return values_[g * order_ + h]; }
    const std::vector<cplx>& values() const { return values_; }

    double max_modulus_deviation() const;
    // max |omega(g,h) omega(gh,k) - omega(h,k) omega(g,hk)| over all triples.
    double max_identity_deviation(const IndexGroup& group) const;
    // max deviation of omega(1,g), omega(g,1) from 1.
    double max_normalization_deviation(const IndexGroup& group) const;

private:
    std::size_t order_ = 0;
    std::vector<cplx> values_;
};

// A nice error basis: n^2 unitaries indexed by a group of order n^2, with
// identity representative I, trace n*delta at the identity, and projective
// multiplication with cocycle omega. Immutable after construction.
class NiceErrorBasis {
public:
    std::size_t dim() const { return dim_; }
    const IndexGroup& group() const { return group_; }
    const CMatrix& unitary(std::size_t g) const { return unitaries_[g]; }
    const std::vector<CMatrix>& unitaries() const { return unitaries_; }
    const Cocycle& cocycle() const { return cocycle_; }

    bool is_weyl() const { return weyl_; }
    // Weyl element ordering: (a,b) -> a*n + b.
    std::size_t weyl_index(std::size_t a, std::size_t b) const { return a * dim_ + b; }
    std::pair<std::size_t, std::size_t> weyl_pair(std::size_t g) const {
        return {g / dim_, g % dim_};
    }

    static std::shared_ptr<const NiceErrorBasis> weyl(std::size_t n);
    static std::shared_ptr<const NiceErrorBasis> quaternion();
    // H_n family, n >= 3; dimension 2^(n-2). Verified at construction.
    static std::shared_ptr<const NiceErrorBasis> central_type(std::size_t n);
    // Table-driven basis. If no cocycle is supplied it is extracted
    // numerically from the products: omega(g,h) = Tr(pi_{gh}^* pi_g pi_h)/n.
    static std::shared_ptr<const NiceErrorBasis>
    from_components(std::size_t dim, IndexGroup group, std::vector<CMatrix> unitaries,
                    std::optional<Cocycle> cocycle = std::nullopt, bool weyl_tag = false);

    bool equivalent_to(const NiceErrorBasis& other, double tol = 1e-12) const;

private:
    NiceErrorBasis() = default;

    std::size_t dim_ = 0;
    IndexGroup group_;
    std::vector<CMatrix> unitaries_;
    Cocycle cocycle_;
    bool weyl_ = false;
};

using BasisPtr = std::shared_ptr<const NiceErrorBasis>;

struct NebVerification {
    struct Check {
        std::string axiom;
        double deviation = 0.0;
        bool pass = false;
    };
    std::vector<Check> checks;
    double max_deviation = 0.0;
    bool pass = false;
    double tolerance = 0.0;

    std::string to_string() const;
};

// Checks the basis axioms (identity representative, trace condition,
// unitarity, projective relation against the stored cocycle, 2-cocycle
// identity, Hilbert-Schmidt orthogonality). Failures are reported, not thrown.
NebVerification verify_neb(const NiceErrorBasis& basis, double tol = kDefaultTol);

} // namespace nebmap
