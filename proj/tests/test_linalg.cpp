#include <doctest.h>

#include <random>

#include "nebmap/linalg.hpp"
#include "nebmap/neb.hpp"
#include "test_util.hpp"

using namespace nebmap;
using testutil::random_hermitian;
using testutil::random_matrix;
using testutil::random_unit_vector;

TEST_CASE("hs_inner: identity, orthogonality and norm fixtures") {
    CHECK(std::abs(hs_inner(CMatrix::identity(2), CMatrix::identity(2)) - cplx(2.0, 0.0)) < 1e-15);

    const auto weyl2 = NiceErrorBasis::weyl(2);
    const cplx cross = hs_inner(weyl2->unitary(weyl2->weyl_index(1, 0)),
                                weyl2->unitary(weyl2->weyl_index(0, 1)));
    CHECK(std::abs(cross) < 1e-15);

    const auto weyl3 = NiceErrorBasis::weyl(3);
    const CMatrix& w11 = weyl3->unitary(weyl3->weyl_index(1, 1));
    CHECK(std::abs(hs_inner(w11, w11) - cplx(3.0, 0.0)) < 1e-12);
}

TEST_CASE("hs_inner: shape mismatch and sesquilinearity") {
    CHECK_THROWS_AS(hs_inner(CMatrix(2, 2), CMatrix(3, 3)), precondition_error);

    std::mt19937_64 rng(11);
    const CMatrix a = random_matrix(rng, 3, 3);
    const CMatrix b = random_matrix(rng, 3, 3);
    const cplx s(0.7, -1.3);
    // Conjugate-linear in the first slot, linear in the second.
    CHECK(std::abs(hs_inner(a * s, b) - std::conj(s) * hs_inner(a, b)) < 1e-12);
    CHECK(std::abs(hs_inner(a, b * s) - s * hs_inner(a, b)) < 1e-12);

    // <A,A> real, nonnegative, zero iff A = 0.
    const cplx aa = hs_inner(a, a);
    CHECK(std::abs(aa.imag()) < 1e-14);
    CHECK(aa.real() > 0.0);
    CHECK(std::abs(hs_inner(CMatrix(3, 3), CMatrix(3, 3))) == 0.0);
}

TEST_CASE("hermitian_eig: fixed spectra") {
    const CMatrix diag{{3.0, 0.0}, {0.0, 1.0}};
    const auto eig1 = hermitian_eig(diag);
    CHECK(eig1.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig1.eigenvalues[1] == doctest::Approx(3.0));

    const CMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
    const auto eig2 = hermitian_eig(sigma_x);
    CHECK(eig2.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(eig2.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig: reconstruction and orthonormality on random input") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const CMatrix h = random_hermitian(rng, 9);
        const auto eig = hermitian_eig(h);

        CMatrix reconstructed(9, 9);
        for (std::size_t k = 0; k < 9; ++k) {
            for (std::size_t i = 0; i < 9; ++i)
                for (std::size_t j = 0; j < 9; ++j) {
                    reconstructed(i, j) += eig.eigenvalues[k] * eig.eigenvectors(i, k) *
                                           std::conj(eig.eigenvectors(j, k));
                }
        }
        CHECK(max_abs_diff(reconstructed, h) < 1e-12);
        CHECK(max_abs_diff(eig.eigenvectors.adjoint() * eig.eigenvectors, CMatrix::identity(9)) <
              1e-12);

        // Eigenvalue sum against the trace.
        double sum = 0.0;
        for (double lambda : eig.eigenvalues) sum += lambda;
        CHECK(std::abs(sum - h.trace().real()) < 1e-10 * std::max(1.0, std::abs(h.trace().real())));
    }
}

TEST_CASE("hermitian_eig: determinant consistency on a full-rank input") {
    // 2x2 Hermitian: det = product of eigenvalues.
    const CMatrix h{{2.0, cplx(0.5, 0.25)}, {cplx(0.5, -0.25), -1.0}};
    const auto eig = hermitian_eig(h);
    const double det = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
    CHECK(eig.eigenvalues[0] * eig.eigenvalues[1] == doctest::Approx(det).epsilon(1e-10));
}

TEST_CASE("hermitian_eig: input validation") {
    CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), precondition_error);
    CMatrix not_herm{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(hermitian_eig(not_herm), precondition_error);
    // Within tolerance is fine.
    CMatrix nearly{{1.0, cplx(0.5, 1e-12)}, {cplx(0.5, -1e-12), 1.0}};
    CHECK_NOTHROW(hermitian_eig(nearly, 1e-9));
}

TEST_CASE("is_psd: fixtures") {
    const auto id4 = is_psd(CMatrix::identity(4));
    CHECK(id4.psd);
    CHECK(id4.min_eigenvalue == doctest::Approx(1.0));
    CHECK(id4.numeric_rank == 4);

    CMatrix transpose_kernel(4, 4);
    transpose_kernel(0, 0) = 0.5;
    transpose_kernel(1, 1) = 0.5;
    transpose_kernel(2, 2) = 0.5;
    transpose_kernel(3, 3) = -0.5;
    const auto tk = is_psd(transpose_kernel);
    CHECK_FALSE(tk.psd);
    CHECK(tk.min_eigenvalue == doctest::Approx(-0.5));
    CHECK(tk.numeric_rank == 4);

    const auto quarter = is_psd(CMatrix::identity(4) * cplx(0.25, 0.0));
    CHECK(quarter.psd);
    CHECK(quarter.min_eigenvalue == doctest::Approx(0.25));
    CHECK(quarter.numeric_rank == 4);
}

TEST_CASE("is_psd: agreement with brute-force quadratic forms") {
    std::mt19937_64 rng(23);
    std::vector<CMatrix> cases;
    cases.push_back(CMatrix::identity(4));
    CMatrix tk(4, 4);
    tk(0, 0) = tk(1, 1) = tk(2, 2) = 0.5;
    tk(3, 3) = -0.5;
    cases.push_back(tk);
    cases.push_back(CMatrix::identity(4) * cplx(0.25, 0.0));
    for (int i = 0; i < 3; ++i) cases.push_back(random_hermitian(rng, 4));
    {
        // A random PSD case too.
        const CMatrix a = random_matrix(rng, 4, 4);
        cases.push_back(a.adjoint() * a);
    }

    for (const CMatrix& h : cases) {
        const auto report = is_psd(h);
        bool found_negative = false;
        for (int k = 0; k < 1000; ++k) {
            const auto v = random_unit_vector(rng, 4);
            cplx q = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) q += std::conj(v[i]) * h(i, j) * v[j];
            if (q.real() < -1e-12 * std::max(1.0, h.max_abs())) {
                found_negative = true;
                break;
            }
        }
        if (report.psd) {
            CHECK_FALSE(found_negative);
        } else {
            // All non-PSD cases here have clearly negative directions.
            CHECK(found_negative);
        }
    }
}

TEST_CASE("kron: fixtures and mixed-product property") {
    CHECK(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) ==
          0.0);

    const CMatrix e00 = CMatrix::unit(2, 0, 0);
    CHECK(max_abs_diff(kron(e00, e00), CMatrix::unit(4, 0, 0)) == 0.0);

    const CMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
    const CMatrix sigma_z{{1.0, 0.0}, {0.0, -1.0}};
    const CMatrix expected{{0.0, 0.0, 1.0, 0.0},
                           {0.0, 0.0, 0.0, -1.0},
                           {1.0, 0.0, 0.0, 0.0},
                           {0.0, -1.0, 0.0, 0.0}};
    CHECK(max_abs_diff(kron(sigma_x, sigma_z), expected) == 0.0);

    std::mt19937_64 rng(31);
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        const CMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
        const CMatrix c = random_matrix(rng, n, n), d = random_matrix(rng, n, n);
        CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    }
}
