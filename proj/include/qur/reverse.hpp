// Reverse (upper) uncertainty bounds on the variance sum, their
// auxiliary-operator tightening, the N-observable generalization with phase
// optimization, and the purity lower bound they imply.

#pragma once

#include <array>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "qur/forward.hpp"

namespace qur {

// The ± choice in M_s = (A~ + s iB~)(A~ - s iB~). Branch s pairs with the
// +s i<[A,B]> correction so that Tr(rho M_s) = var(A) + var(B) - s i<[A,B]>.
enum class SignBranch : int { plus = 0, minus = 1 };

constexpr double branch_sign(SignBranch s) noexcept {
    return s == SignBranch::plus ? 1.0 : -1.0;
}

struct ReverseBoundResult {
    std::array<double, 2> per_branch{std::numeric_limits<double>::quiet_NaN(),
                                     std::numeric_limits<double>::quiet_NaN()};
    double value = std::numeric_limits<double>::quiet_NaN();  // min over branches
    SignBranch branch_chosen = SignBranch::plus;
    bool diverged = false;  // old-style bound only
    // raw 1 - cov/(dA dB) for the old-style bound, so sweeps can plot the
    // near-divergence instead of losing it to an exception
    double denominator = std::numeric_limits<double>::quiet_NaN();

    double branch(SignBranch s) const noexcept { return per_branch[static_cast<int>(s)]; }
};

// F(A,B) = Tr(rho A† B): positive semidefinite sesquilinear form on operators.
cd bilinear_form(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b);

// M_s = (A~ + s iB~)(A~ - s iB~), centered in rho. Hermitian and PSD.
ComplexMatrix m_operator(const DensityMatrix& rho, const Observable& a, const Observable& b,
                         SignBranch branch);

// Old-style bound 2 var(A-B) / (1 - cov/(dA dB)) - 2 dA dB. Degeneracy of the
// denominator is reported via `diverged`, never thrown.
ReverseBoundResult mondal_upper_bound(const DensityMatrix& rho, const Observable& a,
                                      const Observable& b, double eps = 1e-12);

// sqrt(Tr rho^2) sqrt(Tr M_s^2) + s i<[A,B]> per branch; min over branches.
ReverseBoundResult reverse_bound_cs(const DensityMatrix& rho, const Observable& a,
                                    const Observable& b);

// sqrt(Tr rho^2) Tr(M_s) + s i<[A,B]> per branch.
ReverseBoundResult reverse_bound_trace(const DensityMatrix& rho, const Observable& a,
                                       const Observable& b);

// Tr(M_s) + s i<[A,B]> per branch: state-independent prefactor, always finite.
ReverseBoundResult reverse_bound_stateless(const DensityMatrix& rho, const Observable& a,
                                           const Observable& b);

// sqrt(Tr rho^2) sqrt(Tr M_s^2 - d sum_{k>=2} L_k) + s i<[A,B]> where the
// ledger runs on F_1 = M_s with O_1 = rho and all expectations in I/d.
// Each appended auxiliary never increases the value; empty auxiliaries
// reduce exactly to reverse_bound_cs.
ReverseBoundResult tightened_reverse_bound(const DensityMatrix& rho, const Observable& a,
                                           const Observable& b,
                                           std::span<const ComplexMatrix> auxiliaries = {});

// Phase assignment for the N-observable bound. optimize_phases gauge-fixes
// thetas[0] = 0; evaluation accepts arbitrary phases (only differences enter).
struct PhaseVector {
    std::vector<double> thetas;
};

// Upper bound on sum_j var(A_j):
//   -sum_{k<l} <{e^{i t_k} A_k~, e^{i t_l} A_l~}_G>
//   + sqrt(d Tr(rho^2) (<F_1† F_1>_mx - sum_{k>=2} L_k^mx))
// with F_1 = (sum_k e^{-i t_k} A_k~)(sum_l e^{i t_l} A_l~) and O_1 = rho.
double multi_reverse_bound(const DensityMatrix& rho, std::span<const Observable> observables,
                           const PhaseVector& phases,
                           std::span<const ComplexMatrix> auxiliaries = {});

// Coarse per-phase grid search followed by cyclic golden-section coordinate
// descent; deterministic for fixed inputs. Returns the best phases (first
// fixed to 0) and the bound value there.
std::pair<PhaseVector, double> optimize_phases(const DensityMatrix& rho,
                                               std::span<const Observable> observables,
                                               std::span<const ComplexMatrix> auxiliaries = {},
                                               int grid = 64, double tol = 1e-8);

// max over branches of (Tr(rho M_s)/Tr(M_s))^2, clamped to [0,1]; a lower
// bound on Tr(rho^2) computable from variances and <[A,B]> alone.
// Throws validation_error when both branches are uninformative.
double purity_lower_bound(const DensityMatrix& rho, const Observable& a, const Observable& b);

}  // namespace qur
