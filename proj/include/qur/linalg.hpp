// Dense complex-matrix arithmetic and spectral routines.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qur {

using cd = std::complex<double>;

// Invalid or inconsistent input (bad dimensions, failed validation).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An algorithm could not produce a trustworthy result.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    ComplexMatrix(std::size_t dim, std::vector<cd> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }

    cd& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * dim_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }

    const std::vector<cd>& entries() const noexcept { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cd scalar);

private:
    std::size_t dim_ = 0;
    std::vector<cd> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cd scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cd scalar);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
cd trace(const ComplexMatrix& a);

// AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
// AB + BA
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
// F†O - O†F (anti-Hermitian for any F, O)
ComplexMatrix generalized_commutator(const ComplexMatrix& f, const ComplexMatrix& o);
// F†O + O†F (Hermitian for any F, O)
ComplexMatrix generalized_anticommutator(const ComplexMatrix& f, const ComplexMatrix& o);

bool is_finite(const ComplexMatrix& a) noexcept;

double frobenius_norm(const ComplexMatrix& a) noexcept;
// sum of |a_ij|^2, i.e. Tr(A†A)
double frobenius_norm_sq(const ComplexMatrix& a) noexcept;

// Largest entrywise deviation from A = A†, with the offending index.
struct HermiticityDefect {
    double value = 0.0;
    std::size_t row = 0;
    std::size_t col = 0;
};
HermiticityDefect hermiticity_defect(const ComplexMatrix& a) noexcept;
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10) noexcept;

// All eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with complex
// rotations; iterates until the off-diagonal Frobenius norm falls below
// 1e-12 * (1 + ||a||_F), capped at 100 sweeps.
// Throws validation_error if a is not Hermitian within herm_tol,
// numerical_error on non-convergence.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol = 1e-10);

// True iff min eigenvalue >= -tol * max(1, max |eigenvalue|).
bool psd_check(const ComplexMatrix& a, double tol = 1e-10);

}  // namespace qur
