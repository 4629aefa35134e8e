// Lower uncertainty bounds: Robertson, Schrodinger, the orthogonal-state sum
// bound, and the auxiliary-operator ledger recursion they unify into.

#pragma once

#include <span>
#include <vector>

#include "qur/states.hpp"

namespace qur {

// One step of the auxiliary-operator recursion.
struct LedgerEntry {
    std::size_t k = 0;         // 1-based step index
    ComplexMatrix residual;    // F_k entering this step
    ComplexMatrix auxiliary;   // O_k
    double term = 0.0;         // L_k >= 0
    bool skipped = false;      // <O_k† O_k> below skip tolerance
};

struct BoundLedger {
    std::vector<LedgerEntry> entries;
    double total = 0.0;  // sum of terms
    double lhs = 0.0;    // <F_1† F_1>
};

// Auxiliaries with |<O†O>| at or below this are skipped rather than rejected.
inline constexpr double kLedgerSkipTol = 1e-14;

// Runs the recursion F_{k+1} = F_k - (<O_k† F_k>/<O_k† O_k>) O_k with all
// expectations in `state`, accumulating
// L_k = (|<[F_k,O_k]_G>|^2 + |<{F_k,O_k}_G>|^2) / (4 |<O_k† O_k>|).
BoundLedger ledger_recursion(const DensityMatrix& state, ComplexMatrix f1,
                             std::span<const ComplexMatrix> auxiliaries);

// Ledger for F_1 = sum_n x_n (A_n - <A_n>).
BoundLedger unified_ledger(const DensityMatrix& rho, std::span<const cd> coefficients,
                           std::span<const Observable> observables,
                           std::span<const ComplexMatrix> auxiliaries);

// |<[A,B]>/2i|^2
double robertson_bound(const DensityMatrix& rho, const Observable& a, const Observable& b);

// |<[A,B]>/2i|^2 + |<{A~,B~}>/2|^2
double schrodinger_bound(const DensityMatrix& rho, const Observable& a, const Observable& b);

// The unique qubit state orthogonal to a pure qubit state.
DensityMatrix orthogonal_qubit_state(const DensityMatrix& psi, double tol = 1e-8);

// max over sign branches of |<psi|A±iB|psi_perp>|^2 ± i<[A,B]>;
// lower-bounds the variance sum for orthogonal pure states.
double maccone_pati_bound(const DensityMatrix& psi, const DensityMatrix& psi_perp,
                          const Observable& a, const Observable& b);

// max over branches s of (ledger total with x = (1, s i)) - s i <[A,B]>;
// lower-bounds variance(A) + variance(B), never decreasing as auxiliaries are added.
double sum_variance_lower_bound(const DensityMatrix& rho, const Observable& a,
                                const Observable& b,
                                std::span<const ComplexMatrix> auxiliaries = {});

}  // namespace qur
