#include "qur/reverse.hpp"

#include <cmath>

namespace qur {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// i<[A,B]> as a real number.
double commutator_term(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    const cd c = expectation(rho, commutator(a.matrix(), b.matrix()));
    return (cd(0.0, 1.0) * c).real();
}

void require_pair(const DensityMatrix& rho, const Observable& a, const Observable& b,
                  const char* op) {
    if (rho.dim() != a.dim() || rho.dim() != b.dim()) {
        throw validation_error(std::string(op) + ": dimension mismatch");
    }
}

ReverseBoundResult pick_min(double plus_value, double minus_value) {
    ReverseBoundResult r;
    r.per_branch = {plus_value, minus_value};
    if (minus_value < plus_value) {
        r.value = minus_value;
        r.branch_chosen = SignBranch::minus;
    } else {
        r.value = plus_value;
        r.branch_chosen = SignBranch::plus;
    }
    return r;
}

// Tr(M^2) - d * sum_{k>=2} L_k^mx for one branch operator, via the ledger
// recursion seeded with O_1 = rho in the maximally mixed state.
double tightened_radicand(const DensityMatrix& rho, const ComplexMatrix& m,
                          std::span<const ComplexMatrix> auxiliaries) {
    const double d = static_cast<double>(rho.dim());
    std::vector<ComplexMatrix> chain;
    chain.reserve(auxiliaries.size() + 1);
    chain.push_back(rho.matrix());
    chain.insert(chain.end(), auxiliaries.begin(), auxiliaries.end());

    const BoundLedger ledger = ledger_recursion(maximally_mixed(rho.dim()), m, chain);
    double tail = 0.0;
    for (const LedgerEntry& e : ledger.entries) {
        if (e.k >= 2) tail += e.term;
    }
    const double radicand = d * (ledger.lhs - tail);  // = Tr(M^2) - d * tail
    if (radicand < -1e-10) {
        throw numerical_error("tightened_reverse_bound: radicand " + std::to_string(radicand) +
                              " below roundoff tolerance; ledger exceeded its budget");
    }
    return std::max(radicand, 0.0);
}

}  // namespace

cd bilinear_form(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    if (rho.dim() != a.dim() || rho.dim() != b.dim()) {
        throw validation_error("bilinear_form: dimension mismatch");
    }
    return expectation(rho, multiply(adjoint(a), b));
}

ComplexMatrix m_operator(const DensityMatrix& rho, const Observable& a, const Observable& b,
                         SignBranch branch) {
    require_pair(rho, a, b, "m_operator");
    const double s = branch_sign(branch);
    const ComplexMatrix x = centered(rho, a) + centered(rho, b) * cd(0.0, s);
    return multiply(x, adjoint(x));  // (A~ + s iB~)(A~ - s iB~)
}

ReverseBoundResult mondal_upper_bound(const DensityMatrix& rho, const Observable& a,
                                      const Observable& b, double eps) {
    require_pair(rho, a, b, "mondal_upper_bound");
    const double da = std::sqrt(variance(rho, a));
    const double db = std::sqrt(variance(rho, b));
    const double cov = covariance(rho, a, b);
    const Observable diff(a.matrix() - b.matrix());
    const double var_diff = variance(rho, diff);

    ReverseBoundResult r;
    const double product = da * db;
    if (product <= eps) {
        r.diverged = true;
        return r;
    }
    r.denominator = 1.0 - cov / product;
    if (std::abs(r.denominator) <= eps) {
        r.diverged = true;
        return r;
    }
    const double value = 2.0 * var_diff / r.denominator - 2.0 * product;
    r.per_branch = {value, value};
    r.value = value;
    return r;
}

ReverseBoundResult reverse_bound_cs(const DensityMatrix& rho, const Observable& a,
                                    const Observable& b) {
    require_pair(rho, a, b, "reverse_bound_cs");
    const double root_purity = std::sqrt(purity(rho));
    double vals[2];
    for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
        const ComplexMatrix m = m_operator(rho, a, b, s);
        const double tr_m2 = frobenius_norm_sq(m);  // Tr(M† M), M Hermitian
        vals[static_cast<int>(s)] =
            root_purity * std::sqrt(tr_m2) + branch_sign(s) * commutator_term(rho, a, b);
    }
    return pick_min(vals[0], vals[1]);
}

ReverseBoundResult reverse_bound_trace(const DensityMatrix& rho, const Observable& a,
                                       const Observable& b) {
    require_pair(rho, a, b, "reverse_bound_trace");
    const double root_purity = std::sqrt(purity(rho));
    double vals[2];
    for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
        const ComplexMatrix m = m_operator(rho, a, b, s);
        vals[static_cast<int>(s)] =
            root_purity * trace(m).real() + branch_sign(s) * commutator_term(rho, a, b);
    }
    return pick_min(vals[0], vals[1]);
}

ReverseBoundResult reverse_bound_stateless(const DensityMatrix& rho, const Observable& a,
                                           const Observable& b) {
    require_pair(rho, a, b, "reverse_bound_stateless");
    double vals[2];
    for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
        const ComplexMatrix m = m_operator(rho, a, b, s);
        vals[static_cast<int>(s)] = trace(m).real() + branch_sign(s) * commutator_term(rho, a, b);
    }
    return pick_min(vals[0], vals[1]);
}

ReverseBoundResult tightened_reverse_bound(const DensityMatrix& rho, const Observable& a,
                                           const Observable& b,
                                           std::span<const ComplexMatrix> auxiliaries) {
    require_pair(rho, a, b, "tightened_reverse_bound");
    const double root_purity = std::sqrt(purity(rho));
    double vals[2];
    for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
        const ComplexMatrix m = m_operator(rho, a, b, s);
        const double radicand = tightened_radicand(rho, m, auxiliaries);
        vals[static_cast<int>(s)] =
            root_purity * std::sqrt(radicand) + branch_sign(s) * commutator_term(rho, a, b);
    }
    return pick_min(vals[0], vals[1]);
}

double multi_reverse_bound(const DensityMatrix& rho, std::span<const Observable> observables,
                           const PhaseVector& phases,
                           std::span<const ComplexMatrix> auxiliaries) {
    const std::size_t n = observables.size();
    if (n < 2) throw validation_error("multi_reverse_bound: need at least 2 observables");
    if (phases.thetas.size() != n) {
        throw validation_error("multi_reverse_bound: phase count does not match observable count");
    }
    for (const Observable& obs : observables) {
        if (obs.dim() != rho.dim()) {
            throw validation_error("multi_reverse_bound: observable dimension mismatch");
        }
    }
    const double d = static_cast<double>(rho.dim());

    std::vector<ComplexMatrix> cent;
    cent.reserve(n);
    for (const Observable& obs : observables) cent.push_back(centered(rho, obs));

    // G = sum_k e^{i t_k} A_k~; F_1 = G† G
    ComplexMatrix g(rho.dim());
    for (std::size_t k = 0; k < n; ++k) {
        g += cent[k] * std::polar(1.0, phases.thetas[k]);
    }
    const ComplexMatrix f1 = multiply(adjoint(g), g);

    // -sum_{k<l} <{e^{i t_k} A_k~, e^{i t_l} A_l~}_G>; each term is
    // 2 Re(e^{i(t_l - t_k)} <A_k~ A_l~>), so only phase differences enter.
    double cross = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            const cd z = expectation(rho, multiply(cent[k], cent[l]));
            const cd rotated = std::polar(1.0, phases.thetas[l] - phases.thetas[k]) * z;
            cross -= 2.0 * rotated.real();
        }
    }

    std::vector<ComplexMatrix> chain;
    chain.reserve(auxiliaries.size() + 1);
    chain.push_back(rho.matrix());
    chain.insert(chain.end(), auxiliaries.begin(), auxiliaries.end());

    const BoundLedger ledger = ledger_recursion(maximally_mixed(rho.dim()), f1, chain);
    double tail = 0.0;
    for (const LedgerEntry& e : ledger.entries) {
        if (e.k >= 2) tail += e.term;
    }
    const double radicand = d * purity(rho) * (ledger.lhs - tail);
    if (radicand < -1e-10) {
        throw numerical_error("multi_reverse_bound: radicand " + std::to_string(radicand) +
                              " below roundoff tolerance; ledger exceeded its budget");
    }
    return cross + std::sqrt(std::max(radicand, 0.0));
}

std::pair<PhaseVector, double> optimize_phases(const DensityMatrix& rho,
                                               std::span<const Observable> observables,
                                               std::span<const ComplexMatrix> auxiliaries,
                                               int grid, double tol) {
    const std::size_t n = observables.size();
    if (n < 2) throw validation_error("optimize_phases: need at least 2 observables");
    if (grid < 8) throw validation_error("optimize_phases: grid must be >= 8");

    const auto eval = [&](const PhaseVector& pv) {
        return multi_reverse_bound(rho, observables, pv, auxiliaries);
    };

    const double step = kTwoPi / grid;
    PhaseVector best{std::vector<double>(n, 0.0)};
    double best_value = eval(best);

    // coarse Cartesian grid over the free phases
    std::vector<int> odometer(n - 1, 0);
    PhaseVector trial{std::vector<double>(n, 0.0)};
    for (;;) {
        for (std::size_t j = 0; j + 1 < n; ++j) trial.thetas[j + 1] = odometer[j] * step;
        const double v = eval(trial);
        if (v < best_value) {
            best_value = v;
            best = trial;
        }
        std::size_t j = 0;
        while (j + 1 < n && ++odometer[j] == grid) odometer[j++] = 0;
        if (j + 1 == n) break;
    }

    // cyclic coordinate descent, golden-section over one grid cell each side
    constexpr double golden = 0.61803398874989484820;
    constexpr int max_passes = 200;
    for (int pass = 0; pass < max_passes; ++pass) {
        const double before = best_value;
        for (std::size_t j = 1; j < n; ++j) {
            double lo = best.thetas[j] - step;
            double hi = best.thetas[j] + step;
            const auto eval_at = [&](double theta) {
                PhaseVector pv = best;
                pv.thetas[j] = theta;
                return eval(pv);
            };
            double x1 = hi - golden * (hi - lo);
            double x2 = lo + golden * (hi - lo);
            double f1 = eval_at(x1);
            double f2 = eval_at(x2);
            while (hi - lo > 1e-12) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = eval_at(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = eval_at(x2);
                }
            }
            const double candidate = 0.5 * (lo + hi);
            const double v = eval_at(candidate);
            if (v < best_value) {
                best_value = v;
                best.thetas[j] = candidate;
            }
        }
        if (before - best_value < tol) break;
    }

    // wrap into [0, 2pi)
    for (double& t : best.thetas) {
        t = std::fmod(t, kTwoPi);
        if (t < 0) t += kTwoPi;
    }
    best.thetas[0] = 0.0;
    return {best, best_value};
}

double purity_lower_bound(const DensityMatrix& rho, const Observable& a, const Observable& b) {
    require_pair(rho, a, b, "purity_lower_bound");
    const double comm = commutator_term(rho, a, b);
    const double var_sum = variance(rho, a) + variance(rho, b);

    double best = -1.0;
    double max_numer = 0.0;
    double denom = 0.0;
    for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
        const ComplexMatrix m = m_operator(rho, a, b, s);
        denom = trace(m).real();  // identical for both branches
        const double numer = var_sum - branch_sign(s) * comm;  // = Tr(rho M_s) >= 0
        max_numer = std::max(max_numer, numer);
        if (denom > 1e-12) {
            const double est = (numer / denom) * (numer / denom);
            best = std::max(best, est);
        }
    }
    if (denom <= 1e-12 || max_numer <= 1e-12) {
        throw validation_error(
            "purity_lower_bound: estimate undefined (state carries no uncertainty in either "
            "observable combination)");
    }
    return std::clamp(best, 0.0, 1.0);
}

}  // namespace qur
