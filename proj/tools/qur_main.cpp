// qur: variance-based uncertainty bounds for finite-dimensional quantum
// systems. Subcommands: fig1, fig2, verify, bound, purity.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qur/experiments.hpp"

namespace {

// exit codes: 0 ok, 1 invalid input, 2 verification failures, 3 numerical failure
constexpr int kOk = 0;
constexpr int kInvalidInput = 1;
constexpr int kVerifyFailures = 2;
constexpr int kNumericalFailure = 3;

std::vector<int> parse_dims(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            dims.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw qur::validation_error("verify: cannot parse dimension '" + item + "'");
        }
    }
    return dims;
}

int run_fig1(int points, double phi, const std::string& out_path) {
    const auto rows = qur::sweep_fig1(points, phi);
    qur::write_fig1_csv(rows, out_path);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
    return kOk;
}

int run_fig2(int points, const std::string& out_path) {
    const auto rows = qur::sweep_fig2(points);
    qur::write_fig2_csv(rows, out_path);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
    return kOk;
}

int run_verify(long long trials, const std::string& dims_spec, std::uint64_t seed, double tol) {
    const auto report = qur::run_verify(trials, parse_dims(dims_spec), seed, tol);
    qur::write_verify_report(report, std::cout);
    return report.failures.empty() ? kOk : kVerifyFailures;
}

int run_bound(const std::string& state_path, const std::vector<std::string>& obs_paths,
              const std::vector<std::string>& aux_paths, const std::string& out_path) {
    const qur::DensityMatrix rho = qur::load_density_matrix(state_path);
    std::vector<qur::Observable> observables;
    observables.reserve(obs_paths.size());
    for (const auto& p : obs_paths) observables.push_back(qur::load_observable(p));
    std::vector<qur::ComplexMatrix> auxiliaries;
    auxiliaries.reserve(aux_paths.size());
    for (const auto& p : aux_paths) auxiliaries.push_back(qur::load_matrix(p));

    const nlohmann::json report = qur::bound_report(rho, observables, auxiliaries);
    if (out_path.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw qur::validation_error("cannot open output path: " + out_path);
        out << report.dump(2) << '\n';
        std::cout << "wrote report to " << out_path << '\n';
    }
    return kOk;
}

int run_purity(const std::string& state_path, const std::vector<std::string>& obs_paths) {
    const qur::DensityMatrix rho = qur::load_density_matrix(state_path);
    const qur::Observable a = qur::load_observable(obs_paths[0]);
    const qur::Observable b = qur::load_observable(obs_paths[1]);
    const qur::PurityEstimate est = qur::purity_estimate(rho, a, b);
    std::cout << "purity_lower_bound = " << qur::format_double(est.lower_bound) << '\n';
    std::cout << "purity = " << qur::format_double(est.true_purity) << '\n';
    std::cout << "gap = " << qur::format_double(est.gap) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variance-based uncertainty bounds and reverse bounds for "
                 "finite-dimensional quantum states"};
    app.require_subcommand(1);

    int fig_points = 1000;
    double fig_phi = 1.4707963267948966;  // pi/2 - 1/10
    std::string fig1_out = "fig1.csv";
    std::string fig2_out = "fig2.csv";
    auto* fig1 = app.add_subcommand("fig1", "sweep the qubit figure state: old vs new upper bound");
    fig1->add_option("--points", fig_points, "grid points in the open interval (0, 2pi)");
    fig1->add_option("--phi", fig_phi, "azimuthal parameter phi");
    fig1->add_option("--out", fig1_out, "output CSV path");

    int fig2_points = 1000;
    auto* fig2 = app.add_subcommand("fig2", "sweep the tightened upper bounds U_0..U_3");
    fig2->add_option("--points", fig2_points, "grid points in the open interval (0, 2pi)");
    fig2->add_option("--out", fig2_out, "output CSV path");

    long long trials = 10000;
    std::string dims_spec = "2,3,4";
    std::uint64_t seed = 42;
    double tol = 1e-9;
    auto* verify = app.add_subcommand("verify", "fuzz-verify every bound inequality");
    verify->add_option("--trials", trials, "number of random trials");
    verify->add_option("--dims", dims_spec, "comma-separated dimensions (2..8)");
    verify->add_option("--seed", seed, "master RNG seed");
    verify->add_option("--tol", tol, "violation tolerance");

    std::string state_path;
    std::vector<std::string> obs_paths;
    std::vector<std::string> aux_paths;
    std::string bound_out;
    auto* bound = app.add_subcommand("bound", "full bound report for a state and observables");
    bound->add_option("--state", state_path, "density matrix JSON file")->required();
    bound->add_option("--obs", obs_paths, "observable JSON file (repeat; at least two)")
        ->required()
        ->expected(-2);
    bound->add_option("--aux", aux_paths, "auxiliary operator JSON file (repeatable)");
    bound->add_option("--out", bound_out, "output JSON path (default stdout)");

    std::string purity_state;
    std::vector<std::string> purity_obs;
    auto* purity = app.add_subcommand("purity", "purity lower bound vs true purity");
    purity->add_option("--state", purity_state, "density matrix JSON file")->required();
    purity->add_option("--obs", purity_obs, "observable JSON file (exactly two)")
        ->required()
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (fig1->parsed()) return run_fig1(fig_points, fig_phi, fig1_out);
        if (fig2->parsed()) return run_fig2(fig2_points, fig2_out);
        if (verify->parsed()) return run_verify(trials, dims_spec, seed, tol);
        if (bound->parsed()) return run_bound(state_path, obs_paths, aux_paths, bound_out);
        if (purity->parsed()) return run_purity(purity_state, purity_obs);
    } catch (const qur::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const qur::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kOk;
}
