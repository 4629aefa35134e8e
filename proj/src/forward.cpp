#include "qur/forward.hpp"

#include <cmath>

namespace qur {

BoundLedger ledger_recursion(const DensityMatrix& state, ComplexMatrix f1,
                             std::span<const ComplexMatrix> auxiliaries) {
    if (state.dim() != f1.dim()) throw validation_error("ledger_recursion: dimension mismatch");

    BoundLedger ledger;
    ledger.lhs = expectation(state, multiply(adjoint(f1), f1)).real();
    ledger.entries.reserve(auxiliaries.size());

    ComplexMatrix f = std::move(f1);
    std::size_t k = 1;
    for (const ComplexMatrix& o : auxiliaries) {
        if (o.dim() != f.dim()) throw validation_error("ledger_recursion: auxiliary dimension mismatch");
        LedgerEntry entry;
        entry.k = k++;
        entry.residual = f;
        entry.auxiliary = o;

        const double denom = std::abs(expectation(state, multiply(adjoint(o), o)));
        if (denom <= kLedgerSkipTol) {
            entry.skipped = true;
            ledger.entries.push_back(std::move(entry));
            continue;
        }

        const cd gc = expectation(state, generalized_commutator(f, o));
        const cd ga = expectation(state, generalized_anticommutator(f, o));
        entry.term = (std::norm(gc) + std::norm(ga)) / (4.0 * denom);
        ledger.total += entry.term;

        const cd coeff = expectation(state, multiply(adjoint(o), f)) / denom;
        f -= o * coeff;
        ledger.entries.push_back(std::move(entry));
    }
    return ledger;
}

BoundLedger unified_ledger(const DensityMatrix& rho, std::span<const cd> coefficients,
                           std::span<const Observable> observables,
                           std::span<const ComplexMatrix> auxiliaries) {
    if (observables.empty()) throw validation_error("unified_ledger: empty observable list");
    if (coefficients.size() != observables.size()) {
        throw validation_error("unified_ledger: coefficient/observable count mismatch");
    }
    ComplexMatrix f1(rho.dim());
    for (std::size_t n = 0; n < observables.size(); ++n) {
        if (observables[n].dim() != rho.dim()) {
            throw validation_error("unified_ledger: observable dimension mismatch");
        }
        f1 += centered(rho, observables[n]) * coefficients[n];
    }
    return ledger_recursion(rho, std::move(f1), auxiliaries);
}

namespace {

// i<[A,B]> as a real number; the expectation is purely imaginary for
// Hermitian A, B.
double commutator_term(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    const cd c = expectation(rho, commutator(a.matrix(), b.matrix()));
    return (cd(0.0, 1.0) * c).real();
}

}  // namespace

double robertson_bound(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    const cd c = expectation(rho, commutator(a.matrix(), b.matrix()));
    return 0.25 * std::norm(c);
}

double schrodinger_bound(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    const double cov = covariance(rho, a, b);
    return robertson_bound(rho, a, b) + cov * cov;
}

DensityMatrix orthogonal_qubit_state(const DensityMatrix& psi, double tol) {
    if (psi.dim() != 2) throw validation_error("orthogonal_qubit_state: requires dimension 2");
    if (purity(psi) < 1.0 - tol) {
        throw validation_error("orthogonal_qubit_state: state is not pure (purity " +
                               std::to_string(purity(psi)) + ")");
    }
    // I - psi is the rank-1 projector onto the zero-eigenvalue direction.
    return DensityMatrix(ComplexMatrix::identity(2) - psi.matrix());
}

double maccone_pati_bound(const DensityMatrix& psi, const DensityMatrix& psi_perp,
                          const Observable& a, const Observable& b) {
    if (psi.dim() != psi_perp.dim() || psi.dim() != a.dim() || psi.dim() != b.dim()) {
        throw validation_error("maccone_pati_bound: dimension mismatch");
    }
    constexpr double pure_tol = 1e-8;
    if (purity(psi) < 1.0 - pure_tol || purity(psi_perp) < 1.0 - pure_tol) {
        throw validation_error("maccone_pati_bound: both states must be pure");
    }
    const double overlap = expectation(psi, psi_perp.matrix()).real();
    if (std::abs(overlap) > 1e-8) {
        throw validation_error("maccone_pati_bound: states are not orthogonal (overlap " +
                               std::to_string(overlap) + ")");
    }

    const double comm = commutator_term(psi, a, b);  // i<[A,B]>
    double best = 0.0;
    bool first = true;
    for (const double s : {1.0, -1.0}) {
        // |<psi|A+siB|perp>|^2 = Tr(psi X perp X†)
        const ComplexMatrix x = a.matrix() + b.matrix() * cd(0.0, s);
        const double amp =
            expectation(psi, multiply(multiply(x, psi_perp.matrix()), adjoint(x))).real();
        const double branch = amp + s * comm;
        if (first || branch > best) best = branch;
        first = false;
    }
    return best;
}

double sum_variance_lower_bound(const DensityMatrix& rho, const Observable& a,
                                const Observable& b,
                                std::span<const ComplexMatrix> auxiliaries) {
    const double comm = commutator_term(rho, a, b);  // i<[A,B]>
    const std::vector<Observable> obs{a, b};
    double best = 0.0;
    bool first = true;
    for (const double s : {1.0, -1.0}) {
        const std::vector<cd> coeffs{cd(1.0, 0.0), cd(0.0, s)};
        const BoundLedger ledger = unified_ledger(rho, coeffs, obs, auxiliaries);
        const double branch = ledger.total - s * comm;
        if (first || branch > best) best = branch;
        first = false;
    }
    return best;
}

}  // namespace qur
