// Serial vs OpenMP comparison for the two hot kernels: batch DTW scoring
// and exact Wilcoxon sign-assignment enumeration.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gp/dtw.hpp"
#include "gp/reference.hpp"
#include "gp/rng.hpp"
#include "gp/segment.hpp"
#include "gp/sim.hpp"
#include "gp/stats.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int n_steps = 400;
    int reps = 5;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--steps") n_steps = std::atoi(argv[i + 1]);
        if (flag == "--reps") reps = std::atoi(argv[i + 1]);
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif

    // DTW workload: simulated steps against a reference of similar length
    gp::Rng rng(7);
    const gp::sim::GaitProfile profile = gp::sim::default_gait_profile();
    gp::sim::GeneratedPass pass = gp::sim::generate_pass(profile, n_steps + 2, rng, 100.0);
    gp::SegmentationConfig seg;
    const auto strikes = gp::detect_heel_strikes(pass.recording, seg);
    const auto steps = gp::split_steps(pass.recording, strikes, seg);
    const gp::ReferenceWaveform ref =
        gp::build_reference({steps.begin(), steps.begin() + 8});

    std::vector<double> serial_out;
    std::vector<double> parallel_out;
    const double t_dtw_serial = time_best_of(reps, [&] {
        serial_out = gp::dtw::step_distances_serial(steps, ref, gp::Channel::AngY, {});
    });
    const double t_dtw_parallel = time_best_of(reps, [&] {
        parallel_out = gp::dtw::step_distances(steps, ref, gp::Channel::AngY, {});
    });
    if (serial_out != parallel_out) {
        std::fprintf(stderr, "FATAL: serial and parallel DTW results differ\n");
        return 1;
    }

    // Wilcoxon workload: exact enumeration at the n = 20 boundary
    std::vector<double> diffs(20);
    for (double& d : diffs) d = rng.normal();
    const auto ranks2 = gp::stats::double_ranks_of_abs(diffs);
    const std::int64_t stat2 = 60;
    std::uint64_t count_serial = 0;
    std::uint64_t count_parallel = 0;
    const double t_wx_serial = time_best_of(reps, [&] {
        count_serial = gp::stats::sign_assignments_at_or_below_serial(ranks2, stat2);
    });
    const double t_wx_parallel = time_best_of(reps, [&] {
        count_parallel = gp::stats::sign_assignments_at_or_below(ranks2, stat2);
    });
    if (count_serial != count_parallel) {
        std::fprintf(stderr, "FATAL: serial and parallel enumeration counts differ\n");
        return 1;
    }

    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");
    std::printf("%-34s %12.3f %12.3f %8.2fx\n",
                ("dtw batch (" + std::to_string(steps.size()) + " steps)").c_str(),
                t_dtw_serial * 1e3, t_dtw_parallel * 1e3, t_dtw_serial / t_dtw_parallel);
    std::printf("%-34s %12.3f %12.3f %8.2fx\n", "wilcoxon exact enumeration (n=20)",
                t_wx_serial * 1e3, t_wx_parallel * 1e3, t_wx_serial / t_wx_parallel);
    return 0;
}
