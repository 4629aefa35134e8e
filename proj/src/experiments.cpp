#include "qur/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace qur {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_points(int points) {
    if (points < 2) throw validation_error("sweep: points must be >= 2");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot open output path: " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> theta_grid(int points) {
    require_points(points);
    std::vector<double> grid(points);
    for (int j = 1; j <= points; ++j) {
        grid[j - 1] = kTwoPi * j / static_cast<double>(points + 1);
    }
    return grid;
}

std::vector<Fig1Row> sweep_fig1(int points, double phi, ExecPolicy policy) {
    const std::vector<double> grid = theta_grid(points);
    std::vector<Fig1Row> rows(grid.size());
    const bool parallel = policy == ExecPolicy::parallel;
    std::string error;

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
        try {
            const Observable a(pauli_x());
            const Observable b(pauli_z());
            const DensityMatrix rho = fig_state(grid[i], phi);
            const ReverseBoundResult old_bound = mondal_upper_bound(rho, a, b);
            const ReverseBoundResult new_bound = reverse_bound_stateless(rho, a, b);
            rows[i] = {grid[i], old_bound.value, old_bound.diverged, new_bound.value,
                       variance(rho, a) + variance(rho, b)};
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw numerical_error("sweep_fig1: " + error);
    return rows;
}

std::vector<Fig2Row> sweep_fig2(int points, ExecPolicy policy) {
    const std::vector<double> grid = theta_grid(points);
    const double phi = M_PI / 2 - 0.1;
    std::vector<Fig2Row> rows(grid.size());
    const bool parallel = policy == ExecPolicy::parallel;
    std::string error;

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
        try {
            const Observable a(pauli_x());
            const Observable b(pauli_z());
            const DensityMatrix rho = fig_state(grid[i], phi);
            const std::vector<ComplexMatrix> aux{pauli_x(), pauli_y(), pauli_z()};
            Fig2Row row;
            row.theta = grid[i];
            row.u0 = tightened_reverse_bound(rho, a, b).value;
            row.u1 = tightened_reverse_bound(rho, a, b, {aux.data(), 1}).value;
            row.u2 = tightened_reverse_bound(rho, a, b, {aux.data(), 2}).value;
            row.u3 = tightened_reverse_bound(rho, a, b, {aux.data(), 3}).value;
            row.sum_var = variance(rho, a) + variance(rho, b);
            rows[i] = row;
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw numerical_error("sweep_fig2: " + error);
    return rows;
}

void write_fig1_csv(const std::vector<Fig1Row>& rows, std::ostream& out) {
    out << "theta,u_old,u_old_diverged,u_new,sum_var\n";
    for (const Fig1Row& r : rows) {
        out << format_double(r.theta) << ',' << format_double(r.u_old) << ','
            << (r.u_old_diverged ? 1 : 0) << ',' << format_double(r.u_new) << ','
            << format_double(r.sum_var) << '\n';
    }
}

void write_fig2_csv(const std::vector<Fig2Row>& rows, std::ostream& out) {
    out << "theta,u_0,u_1,u_2,u_3,sum_var\n";
    for (const Fig2Row& r : rows) {
        out << format_double(r.theta) << ',' << format_double(r.u0) << ',' << format_double(r.u1)
            << ',' << format_double(r.u2) << ',' << format_double(r.u3) << ','
            << format_double(r.sum_var) << '\n';
    }
}

void write_fig1_csv(const std::vector<Fig1Row>& rows, const std::string& path) {
    auto out = open_output(path);
    write_fig1_csv(rows, out);
}

void write_fig2_csv(const std::vector<Fig2Row>& rows, const std::string& path) {
    auto out = open_output(path);
    write_fig2_csv(rows, out);
}

namespace {

// One verification trial; checks are appended in a fixed order so reports
// are deterministic. Inequality checks pass iff lhs >= rhs - tol; equality
// checks store gap = -|lhs - rhs| and pass iff gap >= -tol.
class TrialChecker {
public:
    TrialChecker(long long trial, double tol, std::vector<Violation>& sink)
        : trial_(trial), tol_(tol), sink_(sink) {}

    void require_ge(const char* name, double lhs, double rhs) {
        const double gap = lhs - rhs;
        if (!(gap >= -tol_)) sink_.push_back({trial_, name, lhs, rhs, gap});
    }

    void require_eq(const char* name, double lhs, double rhs) {
        const double gap = -std::abs(lhs - rhs);
        if (!(gap >= -tol_)) sink_.push_back({trial_, name, lhs, rhs, gap});
    }

private:
    long long trial_;
    double tol_;
    std::vector<Violation>& sink_;
};

void run_trial(long long trial, int dim, std::uint64_t seed, double tol,
               std::vector<Violation>& sink) {
    RngStream rng(seed, static_cast<std::uint64_t>(trial));
    const DensityMatrix rho = random_mixed(dim, rng);
    const Observable a = random_hermitian(dim, rng);
    const Observable b = random_hermitian(dim, rng);
    const ComplexMatrix x = random_ginibre(dim, rng);
    const ComplexMatrix y = random_ginibre(dim, rng);
    const std::vector<ComplexMatrix> aux{random_hermitian(dim, rng).matrix(),
                                         random_hermitian(dim, rng).matrix()};

    TrialChecker check(trial, tol, sink);

    // bilinear form: positivity and Cauchy-Schwarz on non-Hermitian operators
    const double fxx = bilinear_form(rho, x, x).real();
    const double fyy = bilinear_form(rho, y, y).real();
    const cd fxy = bilinear_form(rho, x, y);
    check.require_ge("eq7a_positivity", fxx, 0.0);
    check.require_ge("eq7b_cauchy_schwarz", fxx * fyy, std::norm(fxy));

    // lower-bound chain
    const double robertson = robertson_bound(rho, a, b);
    const double schrodinger = schrodinger_bound(rho, a, b);
    const double product = variance(rho, a) * variance(rho, b);
    check.require_ge("robertson_le_schrodinger", schrodinger, robertson);
    check.require_ge("schrodinger_le_product", product, schrodinger);

    // upper-bound chain, branch-wise and after branch minimization
    const double sum_var = variance(rho, a) + variance(rho, b);
    const ReverseBoundResult cs = reverse_bound_cs(rho, a, b);
    const ReverseBoundResult tr = reverse_bound_trace(rho, a, b);
    const ReverseBoundResult stateless = reverse_bound_stateless(rho, a, b);
    check.require_ge("sum_le_cs", cs.value, sum_var);
    check.require_ge("cs_le_trace_plus", tr.branch(SignBranch::plus), cs.branch(SignBranch::plus));
    check.require_ge("cs_le_trace_minus", tr.branch(SignBranch::minus),
                     cs.branch(SignBranch::minus));
    check.require_ge("trace_le_stateless_plus", stateless.branch(SignBranch::plus),
                     tr.branch(SignBranch::plus));
    check.require_ge("trace_le_stateless_minus", stateless.branch(SignBranch::minus),
                     tr.branch(SignBranch::minus));

    // PSD trace inequality sqrt(Tr M^2) <= Tr M for both branch operators
    for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
        const ComplexMatrix m = m_operator(rho, a, b, s);
        const char* name =
            s == SignBranch::plus ? "psd_trace_ineq_plus" : "psd_trace_ineq_minus";
        check.require_ge(name, trace(m).real(), std::sqrt(frobenius_norm_sq(m)));
    }

    // auxiliary tightening: empty reduction, monotonicity, validity
    const ReverseBoundResult tight0 = tightened_reverse_bound(rho, a, b);
    const ReverseBoundResult tight1 = tightened_reverse_bound(rho, a, b, {aux.data(), 1});
    const ReverseBoundResult tight2 = tightened_reverse_bound(rho, a, b, {aux.data(), 2});
    check.require_eq("tightened_empty_matches_cs", tight0.value, cs.value);
    check.require_ge("tightened_monotone_1", tight0.value, tight1.value);
    check.require_ge("tightened_monotone_2", tight1.value, tight2.value);
    check.require_ge("tightened_validity", tight2.value, sum_var);

    // N = 2 multi-observable bound at phases (0, pi/2) reduces to the
    // minus branch of the Cauchy-Schwarz bound
    const std::vector<Observable> pair{a, b};
    const PhaseVector reduction_phases{{0.0, M_PI / 2}};
    const double multi = multi_reverse_bound(rho, pair, reduction_phases);
    check.require_eq("multi_reduces_to_cs_minus", multi, cs.branch(SignBranch::minus));

    // purity estimate never exceeds the true purity
    check.require_ge("purity_bound", purity(rho), purity_lower_bound(rho, a, b));

    // old-style bound validity away from its divergence (low dimensions)
    if (dim <= 3) {
        const ReverseBoundResult old_bound = mondal_upper_bound(rho, a, b);
        const double da_db = std::sqrt(variance(rho, a) * variance(rho, b));
        if (!old_bound.diverged && da_db >= 0.1 && std::abs(old_bound.denominator) >= 0.1) {
            check.require_ge("u_old_validity", old_bound.value, sum_var);
        }
    }
}

}  // namespace

VerifyReport run_verify(long long trials, const std::vector<int>& dims, std::uint64_t seed,
                        double tol, ExecPolicy policy) {
    if (trials < 1) throw validation_error("verify: trials must be >= 1");
    if (dims.empty()) throw validation_error("verify: dims list is empty");
    for (int d : dims) {
        if (d < 2 || d > 8) {
            throw validation_error("verify: dimension " + std::to_string(d) +
                                   " outside supported range 2..8");
        }
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<Violation>> per_trial(static_cast<std::size_t>(trials));
    const bool parallel = policy == ExecPolicy::parallel;

#pragma omp parallel for schedule(dynamic, 64) if (parallel)
    for (long long t = 0; t < trials; ++t) {
        const int dim = dims[static_cast<std::size_t>(t) % dims.size()];
        auto& sink = per_trial[static_cast<std::size_t>(t)];
        try {
            run_trial(t, dim, seed, tol, sink);
        } catch (const std::exception& e) {
            sink.push_back({t, std::string("unexpected_error: ") + e.what(), 0.0, 0.0,
                            -std::numeric_limits<double>::infinity()});
        }
    }

    VerifyReport report;
    report.trials = trials;
    report.dims = dims;
    report.seed = seed;
    report.tol = tol;
    for (auto& sink : per_trial) {
        report.failures.insert(report.failures.end(), sink.begin(), sink.end());
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void write_verify_report(const VerifyReport& report, std::ostream& out) {
    out << "trials: " << report.trials << '\n';
    out << "dims: ";
    for (std::size_t i = 0; i < report.dims.size(); ++i) {
        if (i) out << ',';
        out << report.dims[i];
    }
    out << '\n';
    out << "seed: " << report.seed << '\n';
    char tolbuf[32];
    std::snprintf(tolbuf, sizeof tolbuf, "%g", report.tol);
    out << "tol: " << tolbuf << '\n';
    out << "failures: " << report.failures.size() << '\n';
    for (const Violation& v : report.failures) {
        out << "violation: trial=" << v.trial << " check=" << v.check
            << " lhs=" << format_double(v.lhs) << " rhs=" << format_double(v.rhs)
            << " gap=" << format_double(v.gap) << '\n';
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", report.elapsed_seconds);
    out << "elapsed: " << buf << " s\n";
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_object()) throw validation_error(what + ": expected a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw validation_error(what + ": missing or non-integer \"dim\"");
    }
    const long long dim_ll = j["dim"].get<long long>();
    if (dim_ll < 1) throw validation_error(what + ": \"dim\" must be positive");
    const std::size_t d = static_cast<std::size_t>(dim_ll);

    const auto read_part = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != d) {
            throw validation_error(what + ": \"" + key + "\" must be a " + std::to_string(d) +
                                   "x" + std::to_string(d) + " array");
        }
        std::vector<std::vector<double>> rows;
        rows.reserve(d);
        for (const auto& row : j[key]) {
            if (!row.is_array() || row.size() != d) {
                throw validation_error(what + ": \"" + key + "\" must be a " + std::to_string(d) +
                                       "x" + std::to_string(d) + " array");
            }
            rows.push_back(row.get<std::vector<double>>());
        }
        return rows;
    };

    const auto re = read_part("re");
    const auto im = read_part("im");
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) m(i, k) = cd(re[i][k], im[i][k]);
    if (!is_finite(m)) throw validation_error(what + ": non-finite entry");
    return m;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    const std::size_t d = m.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t i = 0; i < d; ++i) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (std::size_t k = 0; k < d; ++k) {
            re_row.push_back(m(i, k).real());
            im_row.push_back(m(i, k).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return nlohmann::json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(path + ": JSON parse error: " + e.what());
    }
    return matrix_from_json(j, path);
}

void save_matrix(const ComplexMatrix& m, const std::string& path) {
    auto out = open_output(path);
    out << matrix_to_json(m).dump(2) << '\n';
}

Observable load_observable(const std::string& path) {
    try {
        return Observable(load_matrix(path));
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

DensityMatrix load_density_matrix(const std::string& path) {
    try {
        return DensityMatrix(load_matrix(path));
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

nlohmann::json branch_json(const ReverseBoundResult& r) {
    return {{"plus", finite_or_null(r.branch(SignBranch::plus))},
            {"minus", finite_or_null(r.branch(SignBranch::minus))},
            {"value", finite_or_null(r.value)}};
}

nlohmann::json ledger_json(const BoundLedger& ledger) {
    nlohmann::json terms = nlohmann::json::array();
    for (const LedgerEntry& e : ledger.entries) {
        terms.push_back({{"k", e.k}, {"term", e.term}, {"skipped", e.skipped}});
    }
    return {{"lhs", ledger.lhs}, {"total", ledger.total}, {"terms", std::move(terms)}};
}

}  // namespace

nlohmann::json bound_report(const DensityMatrix& rho, const std::vector<Observable>& observables,
                            const std::vector<ComplexMatrix>& auxiliaries) {
    if (observables.size() < 2) throw validation_error("bound report: need at least 2 observables");
    for (const Observable& obs : observables) {
        if (obs.dim() != rho.dim()) throw validation_error("bound report: dimension mismatch");
    }
    for (const ComplexMatrix& auxiliary : auxiliaries) {
        if (auxiliary.dim() != rho.dim()) {
            throw validation_error("bound report: auxiliary dimension mismatch");
        }
    }
    const Observable& a = observables[0];
    const Observable& b = observables[1];

    nlohmann::json report;
    report["dim"] = rho.dim();
    report["purity"] = purity(rho);

    nlohmann::json variances = nlohmann::json::array();
    for (const Observable& obs : observables) variances.push_back(variance(rho, obs));
    report["variances"] = std::move(variances);

    const double var_a = variance(rho, a);
    const double var_b = variance(rho, b);
    report["covariance"] = covariance(rho, a, b);
    report["product_of_variances"] = var_a * var_b;
    report["sum_of_variances"] = var_a + var_b;

    nlohmann::json lower;
    lower["robertson"] = robertson_bound(rho, a, b);
    lower["schrodinger"] = schrodinger_bound(rho, a, b);
    if (rho.dim() == 2 && purity(rho) >= 1.0 - 1e-8) {
        const DensityMatrix perp = orthogonal_qubit_state(rho);
        lower["maccone_pati"] = maccone_pati_bound(rho, perp, a, b);
    } else {
        lower["maccone_pati"] = nullptr;
    }
    {
        nlohmann::json ledgers;
        const std::vector<Observable> pair{a, b};
        for (const double s : {1.0, -1.0}) {
            const std::vector<cd> coeffs{cd(1.0, 0.0), cd(0.0, s)};
            ledgers[s > 0 ? "plus" : "minus"] = ledger_json(
                unified_ledger(rho, coeffs, pair, auxiliaries));
        }
        ledgers["bound"] = sum_variance_lower_bound(rho, a, b, auxiliaries);
        lower["sum_variance_ledger"] = std::move(ledgers);
    }
    report["lower_bounds"] = std::move(lower);

    nlohmann::json upper;
    {
        const ReverseBoundResult old_bound = mondal_upper_bound(rho, a, b);
        upper["u_old"] = {{"value", finite_or_null(old_bound.value)},
                          {"diverged", old_bound.diverged},
                          {"denominator", finite_or_null(old_bound.denominator)}};
    }
    upper["cauchy_schwarz"] = branch_json(reverse_bound_cs(rho, a, b));
    upper["trace"] = branch_json(reverse_bound_trace(rho, a, b));
    upper["stateless"] = branch_json(reverse_bound_stateless(rho, a, b));
    {
        nlohmann::json tight = branch_json(tightened_reverse_bound(rho, a, b, auxiliaries));
        tight["auxiliaries"] = auxiliaries.size();
        upper["tightened"] = std::move(tight);
    }
    report["upper_bounds"] = std::move(upper);

    nlohmann::json purity_block;
    purity_block["purity"] = purity(rho);
    try {
        purity_block["lower_bound"] = purity_lower_bound(rho, a, b);
    } catch (const validation_error&) {
        purity_block["lower_bound"] = nullptr;
    }
    report["purity_bound"] = std::move(purity_block);
    return report;
}

PurityEstimate purity_estimate(const DensityMatrix& rho, const Observable& a,
                               const Observable& b) {
    PurityEstimate est;
    est.lower_bound = purity_lower_bound(rho, a, b);
    est.true_purity = purity(rho);
    est.gap = est.true_purity - est.lower_bound;
    return est;
}

}  // namespace qur
