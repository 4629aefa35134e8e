// Timing comparison of the serial reference loops against the OpenMP path.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qur/experiments.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_seconds(F&& f) {
    const auto start = clock_type::now();
    f();
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    long long trials = 4000;
    int points = 20000;
    if (argc > 1) trials = std::stoll(argv[1]);
    if (argc > 2) points = std::stoi(argv[2]);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel policy falls back to serial\n");
#endif
    std::printf("workload: verify trials=%lld, sweep points=%d\n\n", trials, points);

    const std::vector<int> dims{2, 3, 4};
    const double t_verify_serial = time_seconds(
        [&] { qur::run_verify(trials, dims, 42, 1e-9, qur::ExecPolicy::serial); });
    const double t_verify_parallel = time_seconds(
        [&] { qur::run_verify(trials, dims, 42, 1e-9, qur::ExecPolicy::parallel); });
    report("verify", t_verify_serial, t_verify_parallel);

    const double t_fig1_serial =
        time_seconds([&] { qur::sweep_fig1(points, 1.4707963267948966, qur::ExecPolicy::serial); });
    const double t_fig1_parallel = time_seconds(
        [&] { qur::sweep_fig1(points, 1.4707963267948966, qur::ExecPolicy::parallel); });
    report("fig1 sweep", t_fig1_serial, t_fig1_parallel);

    const double t_fig2_serial =
        time_seconds([&] { qur::sweep_fig2(points, qur::ExecPolicy::serial); });
    const double t_fig2_parallel =
        time_seconds([&] { qur::sweep_fig2(points, qur::ExecPolicy::parallel); });
    report("fig2 sweep", t_fig2_serial, t_fig2_parallel);

    return 0;
}
