#include <doctest.h>

#include "oracle.hpp"
#include "qur/linalg.hpp"
#include "qur/states.hpp"

using namespace qur;

namespace {

ComplexMatrix random_matrix(std::size_t d, RngStream& rng) {
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("multiply: identity, Pauli algebra, trace cyclicity") {
    RngStream rng(11, 0);
    const ComplexMatrix a = random_matrix(3, rng);
    CHECK(max_abs_diff(multiply(ComplexMatrix::identity(3), a), a) == 0.0);

    const ComplexMatrix expect_isz = pauli_z() * cd(0.0, 1.0);
    CHECK(max_abs_diff(multiply(pauli_x(), pauli_y()), expect_isz) <= 1e-15);

    for (int rep = 0; rep < 50; ++rep) {
        const ComplexMatrix x = random_matrix(4, rng);
        const ComplexMatrix y = random_matrix(4, rng);
        CHECK(std::abs(trace(multiply(x, y)) - trace(multiply(y, x))) <= 1e-12);
    }

    CHECK_THROWS_AS(multiply(random_matrix(2, rng), random_matrix(3, rng)), validation_error);
}

TEST_CASE("multiply agrees with the naive oracle") {
    RngStream rng(12, 0);
    for (std::size_t d : {2u, 3u, 5u}) {
        const ComplexMatrix a = random_matrix(d, rng);
        const ComplexMatrix b = random_matrix(d, rng);
        const auto expected = oracle::to_qur(oracle::nmul(oracle::from_qur(a), oracle::from_qur(b)));
        CHECK(max_abs_diff(multiply(a, b), expected) <= 1e-12);
    }
}

TEST_CASE("adjoint: involution and scalar conjugation") {
    RngStream rng(13, 0);
    const ComplexMatrix a = random_matrix(4, rng);
    CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
    CHECK(max_abs_diff(adjoint(pauli_y()), pauli_y()) == 0.0);

    const ComplexMatrix i_id = ComplexMatrix::identity(3) * cd(0.0, 1.0);
    CHECK(max_abs_diff(adjoint(i_id), ComplexMatrix::identity(3) * cd(0.0, -1.0)) == 0.0);
}

TEST_CASE("trace: identity, sigma_z, linearity") {
    CHECK(trace(ComplexMatrix::identity(5)) == cd(5.0, 0.0));
    CHECK(trace(pauli_z()) == cd(0.0, 0.0));

    RngStream rng(14, 0);
    const ComplexMatrix a = random_matrix(4, rng);
    const ComplexMatrix b = random_matrix(4, rng);
    const cd alpha = rng.complex_gaussian();
    const cd beta = rng.complex_gaussian();
    const cd lhs = trace(a * alpha + b * beta);
    const cd rhs = alpha * trace(a) + beta * trace(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("commutator and anticommutator identities") {
    RngStream rng(15, 0);
    const ComplexMatrix a = random_matrix(3, rng);
    CHECK(frobenius_norm(commutator(a, a)) <= 1e-13);

    CHECK(max_abs_diff(commutator(pauli_x(), pauli_y()), pauli_z() * cd(0.0, 2.0)) <= 1e-15);
    CHECK(max_abs_diff(commutator(pauli_x(), pauli_z()), pauli_y() * cd(0.0, -2.0)) <= 1e-15);

    CHECK(frobenius_norm(anticommutator(pauli_x(), pauli_z())) == 0.0);
    CHECK(max_abs_diff(anticommutator(a, ComplexMatrix::identity(3)), a * cd(2.0, 0.0)) <= 1e-15);
    CHECK(max_abs_diff(anticommutator(pauli_x(), pauli_x()),
                       ComplexMatrix::identity(2) * cd(2.0, 0.0)) <= 1e-15);

    CHECK_THROWS_AS(commutator(random_matrix(2, rng), random_matrix(4, rng)), validation_error);
}

TEST_CASE("generalized commutator and anticommutator structure") {
    RngStream rng(16, 0);
    const ComplexMatrix a = random_matrix(3, rng);
    CHECK(frobenius_norm(generalized_commutator(a, a)) <= 1e-12);

    // Hermitian arguments reduce to the plain commutator / anticommutator
    CHECK(max_abs_diff(generalized_commutator(pauli_x(), pauli_y()),
                       commutator(pauli_x(), pauli_y())) <= 1e-15);
    CHECK(frobenius_norm(generalized_anticommutator(pauli_x(), pauli_z())) == 0.0);

    for (int rep = 0; rep < 40; ++rep) {
        const ComplexMatrix f = random_matrix(3, rng);
        const ComplexMatrix o = random_matrix(3, rng);
        const ComplexMatrix gc = generalized_commutator(f, o);
        const ComplexMatrix ga = generalized_anticommutator(f, o);
        CHECK(max_abs_diff(adjoint(gc), gc * cd(-1.0, 0.0)) <= 1e-12);  // anti-Hermitian
        CHECK(max_abs_diff(adjoint(ga), ga) <= 1e-12);                  // Hermitian
    }

    const ComplexMatrix f = random_matrix(4, rng);
    const ComplexMatrix two_ff = multiply(adjoint(f), f) * cd(2.0, 0.0);
    CHECK(max_abs_diff(generalized_anticommutator(f, f), two_ff) <= 1e-12);
}

TEST_CASE("expectations of generalized brackets are imaginary / real in a state") {
    RngStream rng(17, 0);
    for (int rep = 0; rep < 30; ++rep) {
        const DensityMatrix rho = random_mixed(3, rng);
        const ComplexMatrix f = random_matrix(3, rng);
        const ComplexMatrix o = random_matrix(3, rng);
        CHECK(std::abs(expectation(rho, generalized_commutator(f, o)).real()) <= 1e-10);
        CHECK(std::abs(expectation(rho, generalized_anticommutator(f, o)).imag()) <= 1e-10);
    }
}

TEST_CASE("hermitian_eigenvalues: fixed spectra and trace invariance") {
    const auto ev_z = hermitian_eigenvalues(pauli_z());
    REQUIRE(ev_z.size() == 2);
    CHECK(ev_z[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ev_z[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto ev_half = hermitian_eigenvalues(ComplexMatrix::identity(2) * cd(0.5, 0.0));
    CHECK(ev_half[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ev_half[1] == doctest::Approx(0.5).epsilon(1e-14));

    RngStream rng(18, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const Observable h = random_hermitian(4, rng);
        const auto ev = hermitian_eigenvalues(h.matrix());
        double sum = 0.0;
        for (double v : ev) sum += v;
        CHECK(std::abs(sum - trace(h.matrix()).real()) <= 1e-10);
    }
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
    RngStream rng(19, 0);
    const ComplexMatrix a = random_matrix(3, rng);
    CHECK_THROWS_AS(hermitian_eigenvalues(a), validation_error);
}

TEST_CASE("eigenvalues match characteristic-polynomial roots for d = 2, 3") {
    RngStream rng(20, 0);
    for (std::size_t d : {2u, 3u}) {
        for (int rep = 0; rep < 100; ++rep) {
            const Observable h = random_hermitian(d, rng);
            const auto jac = hermitian_eigenvalues(h.matrix());
            const auto roots = oracle::char_poly_eigs(oracle::from_qur(h.matrix()));
            REQUIRE(jac.size() == roots.size());
            for (std::size_t i = 0; i < jac.size(); ++i) {
                CHECK(std::abs(jac[i] - roots[i]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("hermitian_eigenvalues: clustered spectra, extreme scales, larger dimensions") {
    RngStream rng(22, 0);

    // nearly degenerate spectrum: I + small Hermitian perturbation
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix a = ComplexMatrix::identity(4);
        const Observable noise = random_hermitian(4, rng);
        a += noise.matrix() * cd(1e-9, 0.0);
        const auto ev = hermitian_eigenvalues(a);
        for (double v : ev) CHECK(std::abs(v - 1.0) <= 1e-8);
    }

    // scale invariance across 16 orders of magnitude
    const Observable base = random_hermitian(3, rng);
    const auto ref = hermitian_eigenvalues(base.matrix());
    for (double scale : {1e-8, 1e8}) {
        const auto scaled = hermitian_eigenvalues(base.matrix() * cd(scale, 0.0));
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(scaled[i] == doctest::Approx(ref[i] * scale).epsilon(1e-10));
        }
    }

    // d = 32: trace and Frobenius norm both reconstructed from the spectrum
    const Observable big = random_hermitian(32, rng);
    const auto ev = hermitian_eigenvalues(big.matrix());
    REQUIRE(ev.size() == 32);
    double sum = 0.0, sum_sq = 0.0;
    for (double v : ev) {
        sum += v;
        sum_sq += v * v;
    }
    CHECK(sum == doctest::Approx(trace(big.matrix()).real()).epsilon(1e-10));
    CHECK(sum_sq == doctest::Approx(frobenius_norm_sq(big.matrix())).epsilon(1e-10));
}

TEST_CASE("psd_check: states, negative identity, Gram matrices") {
    RngStream rng(21, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const DensityMatrix rho = random_mixed(2 + rep % 3, rng);
        CHECK(psd_check(rho.matrix()));
    }
    CHECK_FALSE(psd_check(ComplexMatrix::identity(3) * cd(-1.0, 0.0)));

    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix g = random_matrix(4, rng);
        const ComplexMatrix gram = multiply(adjoint(g), g);
        CHECK(psd_check(gram));
        const ComplexMatrix shifted = gram - ComplexMatrix::identity(4) * cd(1e3, 0.0);
        CHECK_FALSE(psd_check(shifted));
    }
}
