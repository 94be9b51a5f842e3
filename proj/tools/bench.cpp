// Times the OpenMP kernels against their serial reference implementations.

#include <chrono>
#include <cstdio>

#include "fran/analysis.hpp"
#include "fran/parallel.hpp"
#include "fran/placement.hpp"

namespace {

template <typename F>
double time_once(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    using namespace fran;

    std::printf("worker threads: %d\n", max_worker_threads());

    {
        analysis::GapSweepResult parallel_result, serial_result;
        const double tp = time_once([&] { parallel_result = analysis::gap_sweep(100, 1.0, 0.01); });
        const double ts =
            time_once([&] { serial_result = analysis::gap_sweep_serial(100, 1.0, 0.01); });
        const bool match = parallel_result.rows.size() == serial_result.rows.size();
        std::printf("gap_sweep kr=100 step=0.01: parallel %.3fs, serial %.3fs, speedup %.2fx%s\n",
                    tp, ts, ts / tp, match ? "" : " (SIZE MISMATCH)");
    }

    {
        SystemConfig cfg;
        cfg.kt = 2;
        cfg.kr = 4;
        cfg.n_files = 4;
        cfg.mu_t = 0.5;
        cfg.mu_r = 0.5;
        cfg.file_bits = 1u << 21;
        cfg.seed = 42;
        const placement::CacheState state = placement::place_caches(cfg);
        placement::FragmentPartition pp, ps;
        const double tp = time_once([&] { pp = placement::partition_files(state); });
        const double ts = time_once([&] { ps = placement::partition_files_serial(state); });
        std::printf("partition_files F=2^21 N=4: parallel %.3fs, serial %.3fs, speedup %.2fx\n",
                    tp, ts, ts / tp);
    }

    return 0;
}
