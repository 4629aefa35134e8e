#include "qur/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qur {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cd> entries)
    : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim_ * dim_) {
        throw validation_error("ComplexMatrix: entry count " + std::to_string(a_.size()) +
                               " does not match dim " + std::to_string(dim_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw validation_error(std::string(op) + ": dimension mismatch (" +
                               std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "add");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "subtract");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd scalar) {
    for (auto& x : a_) x *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cd scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, cd scalar) { return m *= scalar; }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "multiply");
    const std::size_t d = a.dim();
    ComplexMatrix c(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const cd aik = a(i, k);
            if (aik == cd{}) continue;
            for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    ComplexMatrix c(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

cd trace(const ComplexMatrix& a) {
    cd t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return multiply(a, b) - multiply(b, a);
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "anticommutator");
    return multiply(a, b) + multiply(b, a);
}

ComplexMatrix generalized_commutator(const ComplexMatrix& f, const ComplexMatrix& o) {
    require_same_dim(f, o, "generalized_commutator");
    const ComplexMatrix fd = adjoint(f);
    const ComplexMatrix od = adjoint(o);
    return multiply(fd, o) - multiply(od, f);
}

ComplexMatrix generalized_anticommutator(const ComplexMatrix& f, const ComplexMatrix& o) {
    require_same_dim(f, o, "generalized_anticommutator");
    const ComplexMatrix fd = adjoint(f);
    const ComplexMatrix od = adjoint(o);
    return multiply(fd, o) + multiply(od, f);
}

bool is_finite(const ComplexMatrix& a) noexcept {
    for (const cd& x : a.entries()) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    }
    return true;
}

double frobenius_norm_sq(const ComplexMatrix& a) noexcept {
    double s = 0.0;
    for (const cd& x : a.entries()) s += std::norm(x);
    return s;
}

double frobenius_norm(const ComplexMatrix& a) noexcept { return std::sqrt(frobenius_norm_sq(a)); }

HermiticityDefect hermiticity_defect(const ComplexMatrix& a) noexcept {
    HermiticityDefect worst;
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            const double dev = std::abs(a(i, j) - std::conj(a(j, i)));
            if (dev > worst.value) worst = {dev, i, j};
        }
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix& a, double tol) noexcept {
    return hermiticity_defect(a).value <= tol;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol) {
    const auto defect = hermiticity_defect(a);
    if (defect.value > herm_tol) {
        throw validation_error("hermitian_eigenvalues: matrix is not Hermitian, entry (" +
                               std::to_string(defect.row) + "," + std::to_string(defect.col) +
                               ") deviates by " + std::to_string(defect.value));
    }
    const std::size_t d = a.dim();
    if (d == 0) return {};

    // Work on the exactly symmetrized copy so roundoff in the input cannot drift.
    ComplexMatrix h(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    const double stop = 1e-12 * (1.0 + frobenius_norm(h));
    constexpr int max_sweeps = 100;

    bool converged = offdiag_norm(h) <= stop;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const cd apq = h(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq == 0.0) continue;

                // Phase factor turning the (p,q) block into a real symmetric one,
                // then the classical Jacobi angle for that block.
                const cd phase = apq / abs_apq;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * abs_apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: B = H U with U_pp = c*phase, U_qp = -s, U_pq = s*phase, U_qq = c.
                for (std::size_t k = 0; k < d; ++k) {
                    const cd hkp = h(k, p);
                    const cd hkq = h(k, q);
                    h(k, p) = c * phase * hkp - s * hkq;
                    h(k, q) = s * phase * hkp + c * hkq;
                }
                // Rows: H' = U† B.
                for (std::size_t k = 0; k < d; ++k) {
                    const cd hpk = h(p, k);
                    const cd hqk = h(q, k);
                    h(p, k) = c * std::conj(phase) * hpk - s * hqk;
                    h(q, k) = s * std::conj(phase) * hpk + c * hqk;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = cd(h(p, p).real(), 0.0);
                h(q, q) = cd(h(q, q).real(), 0.0);
            }
        }
        converged = offdiag_norm(h) <= stop;
    }
    if (!converged) {
        throw numerical_error("hermitian_eigenvalues: Jacobi iteration did not converge in 100 sweeps");
    }

    std::vector<double> ev(d);
    for (std::size_t i = 0; i < d; ++i) ev[i] = h(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

bool psd_check(const ComplexMatrix& a, double tol) {
    const auto ev = hermitian_eigenvalues(a, tol > 0 ? std::max(tol, 1e-10) : 1e-10);
    if (ev.empty()) return true;
    const double largest = std::max(std::abs(ev.front()), std::abs(ev.back()));
    return ev.front() >= -tol * std::max(1.0, largest);
}

}  // namespace qur
