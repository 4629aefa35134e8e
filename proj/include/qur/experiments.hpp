// Figure sweeps, the randomized inequality-verification harness, matrix file
// I/O, and the structured bound report behind the CLI.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qur/reverse.hpp"

namespace qur {

// Sweep and trial loops run either serially or OpenMP-parallel; rows are
// independent, so both policies produce identical output.
enum class ExecPolicy { serial, parallel };

struct Fig1Row {
    double theta = 0.0;
    double u_old = 0.0;
    bool u_old_diverged = false;
    double u_new = 0.0;
    double sum_var = 0.0;
};

struct Fig2Row {
    double theta = 0.0;
    double u0 = 0.0, u1 = 0.0, u2 = 0.0, u3 = 0.0;
    double sum_var = 0.0;
};

// theta_j = 2 pi j / (points + 1), j = 1..points: open interval, endpoints excluded.
std::vector<double> theta_grid(int points);

std::vector<Fig1Row> sweep_fig1(int points, double phi, ExecPolicy policy = ExecPolicy::parallel);
std::vector<Fig2Row> sweep_fig2(int points, ExecPolicy policy = ExecPolicy::parallel);

void write_fig1_csv(const std::vector<Fig1Row>& rows, std::ostream& out);
void write_fig2_csv(const std::vector<Fig2Row>& rows, std::ostream& out);
void write_fig1_csv(const std::vector<Fig1Row>& rows, const std::string& path);
void write_fig2_csv(const std::vector<Fig2Row>& rows, const std::string& path);

struct Violation {
    long long trial = 0;
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

struct VerifyReport {
    long long trials = 0;
    std::vector<int> dims;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<Violation> failures;  // sorted by (trial, check order)
    double elapsed_seconds = 0.0;
};

// Per trial t: dimension dims[t mod |dims|], RNG stream index t. Draws a
// random mixed state, two Gaussian Hermitian observables, two non-Hermitian
// operators and two Hermitian auxiliaries, then checks the full inequality
// chain. Violations beyond tol are reported as data, never thrown.
VerifyReport run_verify(long long trials, const std::vector<int>& dims, std::uint64_t seed,
                        double tol, ExecPolicy policy = ExecPolicy::parallel);

// Deterministic except for the trailing elapsed line.
void write_verify_report(const VerifyReport& report, std::ostream& out);

// JSON matrix format: {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& what);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const ComplexMatrix& m, const std::string& path);
Observable load_observable(const std::string& path);
DensityMatrix load_density_matrix(const std::string& path);

// Full bound report for one state and >= 2 observables: variances, the
// covariance and lower bounds for the first pair, every reverse bound per
// branch, the tightened bound over the supplied auxiliaries, and the purity
// estimate.
nlohmann::json bound_report(const DensityMatrix& rho, const std::vector<Observable>& observables,
                            const std::vector<ComplexMatrix>& auxiliaries);

struct PurityEstimate {
    double lower_bound = 0.0;
    double true_purity = 0.0;
    double gap = 0.0;
};

PurityEstimate purity_estimate(const DensityMatrix& rho, const Observable& a, const Observable& b);

// 17 significant digits: enough for exact double round-trips.
std::string format_double(double v);

}  // namespace qur
