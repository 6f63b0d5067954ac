#include "nebmap/neb.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nebmap {

// ---------------------------------------------------------------------------
// IndexGroup

IndexGroup IndexGroup::cyclic_pair(std::size_t n) {
    if (n == 0) throw precondition_error("IndexGroup: modulus must be positive");
    IndexGroup g;
    g.order_ = n * n;
    g.mul_.resize(g.order_ * g.order_);
    g.labels_.resize(g.order_);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t i = a * n + b;
            g.labels_[i] = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    const std::size_t j = c * n + d;
                    g.mul_[i * g.order_ + j] = ((a + c) % n) * n + (b + d) % n;
                }
        }
    g.finalize();
    return g;
}

IndexGroup IndexGroup::from_table(std::vector<std::size_t> mul_table,
                                  std::vector<std::string> labels) {
    IndexGroup g;
    std::size_t order = 0;
    while (order * order < mul_table.size()) ++order;
    if (order * order != mul_table.size() || order == 0) {
        throw precondition_error("IndexGroup: multiplication table must be square and non-empty");
    }
    g.order_ = order;
    g.mul_ = std::move(mul_table);
    for (std::size_t v : g.mul_) {
        if (v >= order) throw precondition_error("IndexGroup: table entry out of range");
    }
    if (labels.empty()) {
        g.labels_.resize(order);
        for (std::size_t i = 0; i < order; ++i) g.labels_[i] = std::to_string(i);
    } else {
        if (labels.size() != order) throw precondition_error("IndexGroup: wrong label count");
        g.labels_ = std::move(labels);
    }
    g.finalize();
    return g;
}

IndexGroup IndexGroup::direct_product(const IndexGroup& lhs, const IndexGroup& rhs) {
    const std::size_t nl = lhs.order(), nr = rhs.order();
    const std::size_t order = nl * nr;
    std::vector<std::size_t> mul(order * order);
    std::vector<std::string> labels(order);
    for (std::size_t g1 = 0; g1 < nl; ++g1)
        for (std::size_t g2 = 0; g2 < nr; ++g2) {
            const std::size_t g = g1 * nr + g2;
            labels[g] = lhs.label(g1) + "x" + rhs.label(g2);
            for (std::size_t h1 = 0; h1 < nl; ++h1)
                for (std::size_t h2 = 0; h2 < nr; ++h2) {
                    const std::size_t h = h1 * nr + h2;
                    mul[g * order + h] = lhs.mul(g1, h1) * nr + rhs.mul(g2, h2);
                }
        }
    return from_table(std::move(mul), std::move(labels));
}

void IndexGroup::finalize() {
    const std::size_t n = order_;
    // Identity.
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g) {
            ok = mul(e, g) == g && mul(g, e) == g;
        }
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) throw precondition_error("IndexGroup: no identity element");
    // Inverses.
    inv_.assign(n, 0);
    for (std::size_t g = 0; g < n; ++g) {
        bool has_inv = false;
        for (std::size_t h = 0; h < n; ++h) {
            if (mul(g, h) == identity_ && mul(h, g) == identity_) {
                inv_[g] = h;
                has_inv = true;
                break;
            }
        }
        if (!has_inv) throw precondition_error("IndexGroup: element without inverse");
    }
    // Associativity, exhaustively.
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k) {
                if (mul(mul(g, h), k) != mul(g, mul(h, k))) {
                    throw precondition_error("IndexGroup: multiplication table is not associative");
                }
            }
}

// ---------------------------------------------------------------------------
// Bicharacter

Bicharacter::Bicharacter(std::size_t n) : n_(n) {
    if (n == 0) throw precondition_error("Bicharacter: modulus must be positive");
}

cplx Bicharacter::operator()(std::int64_t k, std::int64_t l) const {
    const auto n = static_cast<std::int64_t>(n_);
    const std::int64_t kr = ((k % n) + n) % n;
    const std::int64_t lr = ((l % n) + n) % n;
    const std::int64_t p = (kr * lr) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(n));
}

Bicharacter standard_bicharacter(std::size_t n) { return Bicharacter(n); }

// ---------------------------------------------------------------------------
// Cocycle

Cocycle::Cocycle(std::size_t order, std::vector<cplx> values)
    : order_(order), values_(std::move(values)) {
    if (values_.size() != order_ * order_) {
        throw precondition_error("Cocycle: table size must be order^2");
    }
}

double Cocycle::max_modulus_deviation() const {
    double dev = 0.0;
    for (const cplx& v : values_) dev = std::max(dev, std::abs(std::abs(v) - 1.0));
    return dev;
}

double Cocycle::max_identity_deviation(const IndexGroup& group) const {
    double dev = 0.0;
    const std::size_t n = order_;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = group.mul(g, h);
            for (std::size_t k = 0; k < n; ++k) {
                const cplx lhs = (*this)(g, h) * (*this)(gh, k);
                const cplx rhs = (*this)(h, k) * (*this)(g, group.mul(h, k));
                dev = std::max(dev, std::abs(lhs - rhs));
            }
        }
    return dev;
}

double Cocycle::max_normalization_deviation(const IndexGroup& group) const {
    double dev = 0.0;
    const std::size_t e = group.identity();
    for (std::size_t g = 0; g < order_; ++g) {
        dev = std::max(dev, std::abs((*this)(e, g) - 1.0));
        dev = std::max(dev, std::abs((*this)(g, e) - 1.0));
    }
    return dev;
}

// ---------------------------------------------------------------------------
// NiceErrorBasis

namespace {

Cocycle extract_cocycle(std::size_t dim, const IndexGroup& group,
                        const std::vector<CMatrix>& unitaries) {
    const std::size_t order = group.order();
    std::vector<cplx> values(order * order);
    for (std::size_t g = 0; g < order; ++g)
        for (std::size_t h = 0; h < order; ++h) {
            const CMatrix prod = unitaries[g] * unitaries[h];
            values[g * order + h] =
                hs_inner(unitaries[group.mul(g, h)], prod) / static_cast<double>(dim);
        }
    return Cocycle(order, std::move(values));
}

} // namespace

std::shared_ptr<const NiceErrorBasis> NiceErrorBasis::weyl(std::size_t n) {
    if (n == 0) throw precondition_error("weyl basis: dimension must be positive");
    const Bicharacter kappa(n);
    IndexGroup group = IndexGroup::cyclic_pair(n);

    std::vector<CMatrix> unitaries;
    unitaries.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            CMatrix w(n, n);
            for (std::size_t x = 0; x < n; ++x) {
                w((x + a) % n, x) = kappa(static_cast<std::int64_t>(b), static_cast<std::int64_t>(x));
            }
            unitaries.push_back(std::move(w));
        }

    // Projective relation W_{a,b} W_{c,d} = kappa(b,c) W_{a+c,b+d}.
    const std::size_t order = n * n;
    std::vector<cplx> omega(order * order);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    omega[(a * n + b) * order + (c * n + d)] =
                        kappa(static_cast<std::int64_t>(b), static_cast<std::int64_t>(c));
                }

    return from_components(n, std::move(group), std::move(unitaries),
                           Cocycle(order, std::move(omega)), /*weyl_tag=*/true);
}

std::shared_ptr<const NiceErrorBasis> NiceErrorBasis::quaternion() {
    // Z_2 x Z_2 written multiplicatively {(+1,+1),(+1,-1),(-1,+1),(-1,-1)};
    // componentwise sign product is XOR on indices.
    std::vector<std::size_t> mul(16);
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t h = 0; h < 4; ++h) mul[g * 4 + h] = g ^ h;
    IndexGroup group = IndexGroup::from_table(
        std::move(mul), {"(+1,+1)", "(+1,-1)", "(-1,+1)", "(-1,-1)"});

    const cplx i(0.0, 1.0);
    std::vector<CMatrix> unitaries;
    unitaries.push_back(CMatrix::identity(2));
    unitaries.push_back(CMatrix{{0.0, i}, {i, 0.0}});
    unitaries.push_back(CMatrix{{0.0, -1.0}, {1.0, 0.0}});
    unitaries.push_back(CMatrix{{i, 0.0}, {0.0, -i}});

    return from_components(2, std::move(group), std::move(unitaries));
}

std::shared_ptr<const NiceErrorBasis> NiceErrorBasis::central_type(std::size_t n) {
    if (n < 3) {
        throw precondition_error("central_type basis: parameter must be >= 3 (dimension 2^(n-2) >= 2)");
    }
    const std::size_t d = std::size_t{1} << (n - 2);
    const std::size_t two_n = std::size_t{1} << n;

    // Powers of 5 mod 2^n.
    std::vector<std::size_t> pow5(d);
    pow5[0] = 1;
    for (std::size_t l = 1; l < d; ++l) pow5[l] = (pow5[l - 1] * 5) % two_n;

    // diag(phi(0),...,phi(d-1)) with phi(x) = exp(2*pi*i*5^x / 2^n).
    CMatrix tau(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        tau(x, x) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(pow5[x]) /
                                        static_cast<double>(two_n));
    }
    // Cyclic shift with 1s on the superdiagonal and the bottom-left corner.
    CMatrix alpha(d, d);
    for (std::size_t x = 0; x < d; ++x) alpha(x, (x + 1) % d) = 1.0;

    std::vector<CMatrix> tau_pow(d), alpha_pow(d);
    tau_pow[0] = CMatrix::identity(d);
    alpha_pow[0] = CMatrix::identity(d);
    for (std::size_t k = 1; k < d; ++k) {
        tau_pow[k] = tau_pow[k - 1] * tau;
        alpha_pow[k] = alpha_pow[k - 1] * alpha;
    }

    // Quotient group law: (k,l)*(k',l') = (k + 5^l k' mod d, l + l' mod d).
    const std::size_t order = d * d;
    std::vector<std::size_t> mul(order * order);
    std::vector<std::string> labels(order);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            const std::size_t g = k * d + l;
            labels[g] = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
            for (std::size_t k2 = 0; k2 < d; ++k2)
                for (std::size_t l2 = 0; l2 < d; ++l2) {
                    const std::size_t h = k2 * d + l2;
                    mul[g * order + h] = ((k + pow5[l] * k2) % d) * d + (l + l2) % d;
                }
        }
    IndexGroup group = IndexGroup::from_table(std::move(mul), std::move(labels));

    std::vector<CMatrix> unitaries;
    unitaries.reserve(order);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) unitaries.push_back(tau_pow[k] * alpha_pow[l]);

    auto basis = from_components(d, std::move(group), std::move(unitaries));
    const NebVerification verification = verify_neb(*basis, 1e-10);
    if (!verification.pass) {
        throw precondition_error("central_type basis: constructed family fails verification\n" +
                                 verification.to_string());
    }
    return basis;
}

std::shared_ptr<const NiceErrorBasis>
NiceErrorBasis::from_components(std::size_t dim, IndexGroup group, std::vector<CMatrix> unitaries,
                                std::optional<Cocycle> cocycle, bool weyl_tag) {
    if (group.order() != dim * dim) {
        throw precondition_error("NiceErrorBasis: group order must equal dim^2");
    }
    if (unitaries.size() != group.order()) {
        throw precondition_error("NiceErrorBasis: need one unitary per group element");
    }
    for (const CMatrix& u : unitaries) {
        if (u.rows() != dim || u.cols() != dim) {
            throw precondition_error("NiceErrorBasis: unitary has wrong shape");
        }
        if (!u.all_finite()) throw precondition_error("NiceErrorBasis: non-finite entries");
    }
    auto basis = std::shared_ptr<NiceErrorBasis>(new NiceErrorBasis());
    basis->dim_ = dim;
    basis->group_ = std::move(group);
    basis->unitaries_ = std::move(unitaries);
    basis->cocycle_ = cocycle ? std::move(*cocycle)
                              : extract_cocycle(dim, basis->group_, basis->unitaries_);
    basis->weyl_ = weyl_tag;
    return basis;
}

bool NiceErrorBasis::equivalent_to(const NiceErrorBasis& other, double tol) const {
    if (this == &other) return true;
    if (dim_ != other.dim_ || !group_.same_table(other.group_)) return false;
    for (std::size_t g = 0; g < group_.order(); ++g) {
        if (max_abs_diff(unitaries_[g], other.unitaries_[g]) > tol) return false;
    }
    for (std::size_t i = 0; i < cocycle_.values().size(); ++i) {
        if (std::abs(cocycle_.values()[i] - other.cocycle_.values()[i]) > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Verification

NebVerification verify_neb(const NiceErrorBasis& basis, double tol) {
    const std::size_t n = basis.dim();
    const std::size_t order = basis.group().order();
    const IndexGroup& group = basis.group();
    NebVerification out;
    out.tolerance = tol;

    auto add = [&out, tol](std::string axiom, double dev) {
        out.checks.push_back({std::move(axiom), dev, dev <= tol});
    };

    add("identity", max_abs_diff(basis.unitary(group.identity()), CMatrix::identity(n)));

    double trace_dev = 0.0;
    for (std::size_t g = 0; g < order; ++g) {
        const cplx expected = g == group.identity() ? cplx(static_cast<double>(n), 0.0) : cplx(0.0, 0.0);
        trace_dev = std::max(trace_dev, std::abs(basis.unitary(g).trace() - expected));
    }
    add("trace", trace_dev);

    double unitary_dev = 0.0;
    const CMatrix eye = CMatrix::identity(n);
    for (std::size_t g = 0; g < order; ++g) {
        unitary_dev = std::max(
            unitary_dev, max_abs_diff(basis.unitary(g).adjoint() * basis.unitary(g), eye));
    }
    add("unitarity", unitary_dev);

    double projective_dev = 0.0;
    for (std::size_t g = 0; g < order; ++g)
        for (std::size_t h = 0; h < order; ++h) {
            const CMatrix lhs = basis.unitary(g) * basis.unitary(h);
            const CMatrix rhs = basis.unitary(group.mul(g, h)) * basis.cocycle()(g, h);
            projective_dev = std::max(projective_dev, max_abs_diff(lhs, rhs));
        }
    add("projective relation", projective_dev);

    double cocycle_dev = std::max(basis.cocycle().max_identity_deviation(group),
                                  basis.cocycle().max_modulus_deviation());
    add("cocycle identity", cocycle_dev);

    double ortho_dev = 0.0;
    for (std::size_t g = 0; g < order; ++g)
        for (std::size_t h = 0; h < order; ++h) {
            const cplx expected = g == h ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            const cplx value = hs_inner(basis.unitary(g), basis.unitary(h)) / static_cast<double>(n);
            ortho_dev = std::max(ortho_dev, std::abs(value - expected));
        }
    add("hs orthogonality", ortho_dev);

    out.max_deviation = 0.0;
    out.pass = true;
    for (const auto& check : out.checks) {
        out.max_deviation = std::max(out.max_deviation, check.deviation);
        out.pass = out.pass && check.pass;
    }
    return out;
}

std::string NebVerification::to_string() const {
    std::ostringstream os;
    for (const auto& check : checks) {
        os.setf(std::ios::scientific);
        os.precision(2);
        os << (check.pass ? "  pass  " : "  FAIL  ");
        os.width(0);
        os << check.axiom;
        for (std::size_t i = check.axiom.size(); i < 22; ++i) os << ' ';
        os << "max deviation " << check.deviation << "\n";
    }
    os << (pass ? "overall: pass" : "overall: FAIL") << " (tolerance " << tolerance << ")";
    return os.str();
}

} // namespace nebmap
