// Serial vs OpenMP kernel comparison on synthetic panels.
//
//   fxnet_bench [N] [T] [windows]
//
// Times the correlation kernel, the clustering cube kernel against the
// triple-loop reference, tree path length against BFS enumeration, and the
// rolling driver at 1 thread vs all threads. Prints one table row per case
// and cross-checks that both routes agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "fxnet/correlation.hpp"
#include "fxnet/metrics.hpp"
#include "fxnet/oracle.hpp"
#include "fxnet/returns.hpp"
#include "fxnet/rolling.hpp"
#include "fxnet/synth.hpp"
#include "fxnet/tree.hpp"

using namespace fxnet;
namespace chrono = std::chrono;

namespace {

double time_ms(const std::function<void()>& fn, int repeats = 3) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = chrono::steady_clock::now();
        fn();
        auto t1 = chrono::steady_clock::now();
        best = std::min(best, chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, double max_diff) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   max|diff| %.3g\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, max_diff);
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 46;
    const int t = argc > 2 ? std::atoi(argv[2]) : 2394;
    const int windows = argc > 3 ? std::atoi(argv[3]) : 0;

    std::printf("fxnet kernel benchmark: N=%zu T=%d threads=%d\n", n, t, omp_get_max_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    BlockModelSpec spec;
    spec.blocks = {{static_cast<int>(n / 2), 0.7}, {static_cast<int>(n - n / 2), 0.4}};
    spec.inter_correlation = 0.1;
    spec.days = t;
    spec.seed = 7;
    RatePanel panel = generate_panel(spec);
    ReturnMatrix returns = build_return_matrix(panel, panel.currencies[0]);

    const std::size_t rows = returns.size();
    const std::size_t cols = returns.days();
    std::vector<double> r_serial(rows * rows), r_parallel(rows * rows);
    double corr_s = time_ms([&] {
        kernels::correlation_serial(returns.values.data(), rows, cols, r_serial.data());
    });
    double corr_p = time_ms([&] {
        kernels::correlation_parallel(returns.values.data(), rows, cols, r_parallel.data());
    });
    double corr_diff = 0.0;
    for (std::size_t i = 0; i < rows * rows; ++i)
        corr_diff = std::max(corr_diff, std::abs(r_serial[i] - r_parallel[i]));
    row("correlation matrix", corr_s, corr_p, corr_diff);

    CorrelationNetwork net = correlation_matrix(returns);
    ClusteringResult fast;
    ClusteringResult reference;
    double clus_s = time_ms([&] { reference = oracle::weighted_clustering(net); });
    double clus_p = time_ms([&] { fast = weighted_clustering(net); });
    row("weighted clustering", clus_s, clus_p, std::abs(fast.average - reference.average));

    SpanningTree tree = build_mst(net);
    double pl_fast = 0.0, pl_bfs = 0.0;
    double pl_s = time_ms([&] { pl_bfs = oracle::path_length_bfs(tree); }, 10);
    double pl_p = time_ms([&] { pl_fast = path_length(tree); }, 10);
    row("tree path length", pl_s, pl_p, std::abs(pl_fast - pl_bfs));

    if (windows > 0) {
        WindowSpec wspec;
        wspec.length_days = 126;
        wspec.step_days = std::max(1, (t - 126) / windows);
        int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
        double roll_s =
            time_ms([&] { rolling_metrics(panel, panel.currencies[0], wspec); }, 1);
        omp_set_num_threads(max_threads);
        double roll_p =
            time_ms([&] { rolling_metrics(panel, panel.currencies[0], wspec); }, 1);
        row("rolling windows", roll_s, roll_p, 0.0);
    }
    return 0;
}
