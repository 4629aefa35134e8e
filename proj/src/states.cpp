#include "qur/states.hpp"

#include <algorithm>
#include <cmath>

namespace qur {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m(0, 1) = cd(0.0, -1.0);
    m(1, 0) = cd(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Observable::Observable(ComplexMatrix m, double herm_tol) : mat_(std::move(m)) {
    if (!is_finite(mat_)) throw validation_error("Observable: non-finite entry");
    const auto defect = hermiticity_defect(mat_);
    if (defect.value > herm_tol) {
        throw validation_error("Observable: not Hermitian, entry (" + std::to_string(defect.row) +
                               "," + std::to_string(defect.col) + ") deviates by " +
                               std::to_string(defect.value));
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double herm_tol, double psd_tol)
    : mat_(std::move(m)) {
    if (!is_finite(mat_)) throw validation_error("DensityMatrix: non-finite entry");
    const auto defect = hermiticity_defect(mat_);
    if (defect.value > herm_tol) {
        throw validation_error("DensityMatrix: not Hermitian, entry (" + std::to_string(defect.row) +
                               "," + std::to_string(defect.col) + ") deviates by " +
                               std::to_string(defect.value));
    }
    const cd tr = trace(mat_);
    if (std::abs(tr - 1.0) > herm_tol) {
        throw validation_error("DensityMatrix: trace != 1 (got " + std::to_string(tr.real()) +
                               (tr.imag() >= 0 ? "+" : "") + std::to_string(tr.imag()) + "i)");
    }
    if (!psd_check(mat_, psd_tol)) {
        throw validation_error("DensityMatrix: not positive semidefinite");
    }
}

namespace {

// splitmix64; decorrelates (seed, stream) pairs before seeding the engine.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      eng_(mix64(mix64(master_seed) ^ mix64(~stream_index))) {}

double RngStream::uniform01() {
    // 53 random bits -> [0,1) double, bit-reproducible across platforms
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

cd RngStream::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

DensityMatrix maximally_mixed(std::size_t d) {
    if (d < 2) throw validation_error("maximally_mixed: dimension must be >= 2");
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0 / static_cast<double>(d);
    return DensityMatrix(std::move(m));
}

DensityMatrix from_bloch(double rx, double ry, double rz) {
    const double norm2 = rx * rx + ry * ry + rz * rz;
    if (norm2 > 1.0 + 1e-12) {
        throw validation_error("from_bloch: Bloch vector norm " + std::to_string(std::sqrt(norm2)) +
                               " exceeds 1 (not a state)");
    }
    ComplexMatrix m(2);
    m(0, 0) = 0.5 * (1.0 + rz);
    m(1, 1) = 0.5 * (1.0 - rz);
    m(0, 1) = 0.5 * cd(rx, -ry);
    m(1, 0) = 0.5 * cd(rx, ry);
    return DensityMatrix(std::move(m));
}

DensityMatrix fig_state(double theta, double phi) {
    const double half = 0.5 * theta;
    return from_bloch(std::cos(half), std::sin(half) * std::cos(phi),
                      std::sin(half) * std::sin(phi));
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = ||rho||_F^2 for Hermitian rho
    const double p = frobenius_norm_sq(rho.matrix());
    const double floor = 1.0 / static_cast<double>(rho.dim());
    return std::clamp(p, floor, 1.0);
}

cd expectation(const DensityMatrix& rho, const ComplexMatrix& x) {
    if (rho.dim() != x.dim()) throw validation_error("expectation: dimension mismatch");
    // Tr(rho X) without forming the product
    cd t{};
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) t += rho.matrix()(i, k) * x(k, i);
    return t;
}

ComplexMatrix centered(const DensityMatrix& rho, const Observable& a) {
    if (rho.dim() != a.dim()) throw validation_error("centered: dimension mismatch");
    const double mean = expectation(rho, a.matrix()).real();
    ComplexMatrix m = a.matrix();
    for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) -= mean;
    return m;
}

double variance(const DensityMatrix& rho, const Observable& a) {
    if (rho.dim() != a.dim()) throw validation_error("variance: dimension mismatch");
    const double mean_sq = expectation(rho, multiply(a.matrix(), a.matrix())).real();
    const double mean = expectation(rho, a.matrix()).real();
    return std::max(mean_sq - mean * mean, 0.0);
}

double covariance(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    if (rho.dim() != a.dim() || rho.dim() != b.dim()) {
        throw validation_error("covariance: dimension mismatch");
    }
    const double sym = 0.5 * expectation(rho, anticommutator(a.matrix(), b.matrix())).real();
    return sym - expectation(rho, a.matrix()).real() * expectation(rho, b.matrix()).real();
}

DensityMatrix random_pure(std::size_t d, RngStream& rng) {
    if (d < 2) throw validation_error("random_pure: dimension must be >= 2");
    std::vector<cd> psi(d);
    double norm2 = 0.0;
    for (auto& c : psi) {
        c = rng.complex_gaussian();
        norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]) * (inv * inv);
    return DensityMatrix(std::move(m));
}

DensityMatrix random_mixed(std::size_t d, RngStream& rng) {
    if (d < 2) throw validation_error("random_mixed: dimension must be >= 2");
    const ComplexMatrix g = random_ginibre(d, rng);
    ComplexMatrix m = multiply(g, adjoint(g));
    const double tr = trace(m).real();
    m *= cd(1.0 / tr, 0.0);
    // kill the tiny imaginary roundoff on the diagonal so validation stays exact
    for (std::size_t i = 0; i < d; ++i) m(i, i) = cd(m(i, i).real(), 0.0);
    return DensityMatrix(std::move(m));
}

Observable random_hermitian(std::size_t d, RngStream& rng) {
    const ComplexMatrix g = random_ginibre(d, rng);
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return Observable(std::move(m));
}

ComplexMatrix random_ginibre(std::size_t d, RngStream& rng) {
    ComplexMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

}  // namespace qur
