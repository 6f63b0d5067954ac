#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nebmap/neb.hpp"
#include "test_util.hpp"

using namespace nebmap;

namespace {

cplx unit_phase(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

} // namespace

TEST_CASE("bicharacter: values, symmetry, character law, non-degeneracy") {
    CHECK(std::abs(Bicharacter(2)(1, 1) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(Bicharacter(3)(1, 2) - unit_phase(2.0 / 3.0)) < 1e-15);
    CHECK_THROWS_AS(Bicharacter(0), precondition_error);

    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{6}}) {
        const Bicharacter kappa(n);
        const auto ni = static_cast<std::int64_t>(n);
        for (std::int64_t y = 0; y < ni; ++y) CHECK(std::abs(kappa(0, y) - cplx(1.0, 0.0)) < 1e-15);
        for (std::int64_t x = 0; x < ni; ++x)
            for (std::int64_t y = 0; y < ni; ++y) {
                CHECK(std::abs(std::abs(kappa(x, y)) - 1.0) < 1e-15);
                CHECK(std::abs(kappa(x, y) - kappa(y, x)) < 1e-15);
                for (std::int64_t z = 0; z < ni; ++z) {
                    CHECK(std::abs(kappa(x, y + z) - kappa(x, y) * kappa(x, z)) < 1e-14);
                }
            }
        // kappa(x, .) trivial iff x = 0.
        for (std::int64_t x = 1; x < ni; ++x) {
            bool trivial = true;
            for (std::int64_t y = 0; y < ni; ++y) {
                trivial = trivial && std::abs(kappa(x, y) - cplx(1.0, 0.0)) < 1e-12;
            }
            CHECK_FALSE(trivial);
        }
    }
}

TEST_CASE("index group: cyclic pair table and validation") {
    const IndexGroup g = IndexGroup::cyclic_pair(3);
    CHECK(g.order() == 9);
    CHECK(g.identity() == 0);
    CHECK(g.mul(1, 2) == 0);           // (0,1)+(0,2) = (0,0)
    CHECK(g.mul(3, 4) == 7);           // (1,0)+(1,1) = (2,1)
    CHECK(g.inv(5) == 4);              // -(1,2) = (2,1)... (1,2) index 5, inverse (2,1) index 7
    CHECK(g.inv(g.mul(5, g.inv(5))) == g.identity());

    // Broken table: constant row is not a group.
    std::vector<std::size_t> bad(4, 0);
    CHECK_THROWS_AS(IndexGroup::from_table(bad), precondition_error);
}

TEST_CASE("weyl basis: n=2 fixtures") {
    const auto basis = NiceErrorBasis::weyl(2);
    const CMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
    const CMatrix sigma_z{{1.0, 0.0}, {0.0, -1.0}};
    const CMatrix w11{{0.0, -1.0}, {1.0, 0.0}};
    CHECK(max_abs_diff(basis->unitary(basis->weyl_index(1, 0)), sigma_x) < 1e-15);
    CHECK(max_abs_diff(basis->unitary(basis->weyl_index(0, 1)), sigma_z) < 1e-15);
    CHECK(max_abs_diff(basis->unitary(basis->weyl_index(1, 1)), w11) < 1e-15);
    CHECK(max_abs_diff(basis->unitary(basis->weyl_index(0, 0)), CMatrix::identity(2)) == 0.0);
    CHECK_THROWS_AS(NiceErrorBasis::weyl(0), precondition_error);
}

TEST_CASE("weyl basis: commutation relations and adjoint identity") {
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{5}}) {
        const auto basis = NiceErrorBasis::weyl(n);
        const Bicharacter kappa(n);
        auto w = [&](std::size_t a, std::size_t b) -> const CMatrix& {
            return basis->unitary(basis->weyl_index(a % n, b % n));
        };
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                // U_a U_b = U_{a+b}, V_a V_b = V_{a+b}.
                CHECK(max_abs_diff(w(a, 0) * w(b, 0), w(a + b, 0)) < 1e-13);
                CHECK(max_abs_diff(w(0, a) * w(0, b), w(0, a + b)) < 1e-13);
                // V_b U_a = kappa(a,b) U_a V_b.
                const auto ai = static_cast<std::int64_t>(a);
                const auto bi = static_cast<std::int64_t>(b);
                CHECK(max_abs_diff(w(0, b) * w(a, 0), w(a, 0) * w(0, b) * kappa(ai, bi)) < 1e-13);
                // W_{a,b}^* = kappa(a,b) W_{-a,-b}.
                CHECK(max_abs_diff(w(a, b).adjoint(),
                                   w((n - a) % n, (n - b) % n) * kappa(ai, bi)) < 1e-13);
            }
    }
}

TEST_CASE("weyl basis: stored cocycle matches the projective relation") {
    const auto basis = NiceErrorBasis::weyl(3);
    const Bicharacter kappa(3);
    for (std::size_t g = 0; g < 9; ++g)
        for (std::size_t h = 0; h < 9; ++h) {
            const auto [a, b] = basis->weyl_pair(g);
            const auto [c, d] = basis->weyl_pair(h);
            (void)a;
            (void)d;
            CHECK(std::abs(basis->cocycle()(g, h) -
                           kappa(static_cast<std::int64_t>(b), static_cast<std::int64_t>(c))) <
                  1e-15);
        }
}

TEST_CASE("weyl basis: completeness (matrix units reconstructed from coordinates)") {
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        const auto basis = NiceErrorBasis::weyl(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const CMatrix target = CMatrix::unit(n, r, c);
                CMatrix rebuilt(n, n);
                for (std::size_t g = 0; g < n * n; ++g) {
                    const cplx coord =
                        hs_inner(basis->unitary(g), target) / static_cast<double>(n);
                    rebuilt += basis->unitary(g) * coord;
                }
                CHECK(max_abs_diff(rebuilt, target) < 1e-13);
            }
    }
}

TEST_CASE("quaternion basis: representation matrices and cocycle table") {
    const auto basis = NiceErrorBasis::quaternion();
    CHECK(basis->dim() == 2);
    CHECK(basis->group().order() == 4);

    const cplx i(0.0, 1.0);
    CHECK(max_abs_diff(basis->unitary(0), CMatrix::identity(2)) == 0.0);
    CHECK(max_abs_diff(basis->unitary(1), CMatrix{{0.0, i}, {i, 0.0}}) == 0.0);
    CHECK(max_abs_diff(basis->unitary(2), CMatrix{{0.0, -1.0}, {1.0, 0.0}}) == 0.0);
    CHECK(max_abs_diff(basis->unitary(3), CMatrix{{i, 0.0}, {0.0, -i}}) == 0.0);

    // Cocycle table in the order (+1,+1), (+1,-1), (-1,+1), (-1,-1).
    const double expected[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t h = 0; h < 4; ++h) {
            CHECK(std::abs(basis->cocycle()(g, h) - cplx(expected[g][h], 0.0)) < 1e-14);
        }

    // pi(+1,-1) pi(-1,+1) = +1 * pi(-1,-1).
    CHECK(max_abs_diff(basis->unitary(1) * basis->unitary(2), basis->unitary(3)) < 1e-15);
}

TEST_CASE("central type family: fixtures and trace axiom") {
    CHECK_THROWS_AS(NiceErrorBasis::central_type(2), precondition_error);

    const auto b3 = NiceErrorBasis::central_type(3);
    CHECK(b3->dim() == 2);
    // pi(tau) = diag(exp(2 pi i/8), exp(10 pi i/8)) at (k,l) = (1,0).
    const CMatrix& tau3 = b3->unitary(b3->group().order() == 4 ? 1 * 2 + 0 : 0);
    CHECK(std::abs(tau3(0, 0) - unit_phase(1.0 / 8.0)) < 1e-14);
    CHECK(std::abs(tau3(1, 1) - unit_phase(5.0 / 8.0)) < 1e-14);

    const auto b4 = NiceErrorBasis::central_type(4);
    CHECK(b4->dim() == 4);
    // pi(alpha) at (k,l) = (0,1): superdiagonal shift with corner 1.
    const CMatrix& alpha4 = b4->unitary(1);
    CMatrix shift(4, 4);
    for (std::size_t x = 0; x < 4; ++x) shift(x, (x + 1) % 4) = 1.0;
    CHECK(max_abs_diff(alpha4, shift) == 0.0);
    // Tr(pi(tau)^k pi(alpha)^l) = 0 away from the identity.
    for (std::size_t g = 1; g < b4->group().order(); ++g) {
        CHECK(std::abs(b4->unitary(g).trace()) < 1e-12);
    }
}

TEST_CASE("verify_neb: constructed families pass tightly") {
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        const auto verification = verify_neb(*NiceErrorBasis::weyl(n), 1e-12);
        CHECK(verification.pass);
        CHECK(verification.max_deviation < 1e-12);
    }
    CHECK(verify_neb(*NiceErrorBasis::quaternion(), 1e-12).pass);
    for (std::size_t n : {std::size_t{3}, std::size_t{4}, std::size_t{5}}) {
        const auto verification = verify_neb(*NiceErrorBasis::central_type(n), 1e-10);
        CHECK(verification.pass);
    }
}

TEST_CASE("verify_neb: perturbed basis fails on unitarity and orthogonality") {
    const auto good = NiceErrorBasis::weyl(2);
    std::vector<CMatrix> unitaries = good->unitaries();
    unitaries[good->weyl_index(1, 0)](0, 1) += 1e-3;
    const auto bad = NiceErrorBasis::from_components(2, IndexGroup::cyclic_pair(2),
                                                     std::move(unitaries));
    const auto verification = verify_neb(*bad, 1e-9);
    CHECK_FALSE(verification.pass);
    bool unitarity_failed = false, ortho_failed = false;
    for (const auto& check : verification.checks) {
        if (check.axiom == "unitarity") unitarity_failed = !check.pass;
        if (check.axiom == "hs orthogonality") ortho_failed = !check.pass;
    }
    CHECK(unitarity_failed);
    CHECK(ortho_failed);
}

TEST_CASE("all constructed bases are orthonormal after 1/sqrt(n) normalization") {
    std::vector<BasisPtr> bases = {NiceErrorBasis::weyl(2), NiceErrorBasis::weyl(3),
                                   NiceErrorBasis::quaternion(), NiceErrorBasis::central_type(4)};
    for (const auto& basis : bases) {
        const double n = static_cast<double>(basis->dim());
        for (std::size_t g = 0; g < basis->group().order(); ++g)
            for (std::size_t h = 0; h < basis->group().order(); ++h) {
                const cplx inner = hs_inner(basis->unitary(g), basis->unitary(h)) / n;
                const cplx expected = g == h ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
                CHECK(std::abs(inner - expected) < 1e-10);
            }
    }
}
