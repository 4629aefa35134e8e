// Validated density matrices and observables, expectation statistics,
// the Bloch-parameterized qubit family, and reproducible random sampling.

#pragma once

#include <cstdint>
#include <random>

#include "qur/linalg.hpp"

namespace qur {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Hermitian matrix validated on construction.
class Observable {
public:
    explicit Observable(ComplexMatrix m, double herm_tol = 1e-10);

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return mat_.dim(); }

private:
    ComplexMatrix mat_;
};

// Quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m, double herm_tol = 1e-10, double psd_tol = 1e-10);

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return mat_.dim(); }

private:
    ComplexMatrix mat_;
};

// Deterministic random stream: identical (master_seed, stream_index) pairs
// replay identical draws on any standard library (Gaussians are produced by
// an explicit Box-Muller transform, not std::normal_distribution).
class RngStream {
public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    double uniform01();   // [0, 1)
    double gaussian();    // standard normal
    cd complex_gaussian();  // independent N(0,1) real and imaginary parts

private:
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_index_ = 0;
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

DensityMatrix maximally_mixed(std::size_t d);

// (I + rx sx + ry sy + rz sz)/2; rejects Bloch vectors of norm > 1.
DensityMatrix from_bloch(double rx, double ry, double rz);

// Pure qubit with Bloch vector (cos(t/2), sin(t/2)cos(phi), sin(t/2)sin(phi)).
DensityMatrix fig_state(double theta, double phi);

// Tr(rho^2), clamped to [1/d, 1].
double purity(const DensityMatrix& rho);

// Tr(rho X)
cd expectation(const DensityMatrix& rho, const ComplexMatrix& x);

// A - <A> I
ComplexMatrix centered(const DensityMatrix& rho, const Observable& a);

// <A^2> - <A>^2, clamped to >= 0
double variance(const DensityMatrix& rho, const Observable& a);

// <{A,B}>/2 - <A><B>
double covariance(const DensityMatrix& rho, const Observable& a, const Observable& b);

// Haar-direction pure state |psi><psi| from normalized complex Gaussian entries.
DensityMatrix random_pure(std::size_t d, RngStream& rng);

// Ginibre construction G G† / Tr(G G†): full-rank mixed state with probability 1.
DensityMatrix random_mixed(std::size_t d, RngStream& rng);

// (G + G†)/2 with G complex Gaussian.
Observable random_hermitian(std::size_t d, RngStream& rng);

// d x d matrix of independent standard complex Gaussian entries.
ComplexMatrix random_ginibre(std::size_t d, RngStream& rng);

}  // namespace qur
