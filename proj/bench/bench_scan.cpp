#include <benchmark/benchmark.h>

#include "k3pq/curves.hpp"
#include "k3pq/parallel.hpp"
#include "k3pq/surfaces.hpp"
#include "k3pq/tables.hpp"
#include "k3pq/verify.hpp"

using namespace k3pq;

namespace {

const EnumerationRequest kEnum{GroupSpec(3, true), 3, 12, true, true};
const ScanRequest kScan{GroupSpec(3, true), 12, 3, true};

void BM_enumerate_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_curves_serial(kEnum));
}

void BM_enumerate_parallel(benchmark::State& st) {
    set_worker_count(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_curves(kEnum));
}

void BM_scan_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(scan_serial(kScan));
}

void BM_scan_parallel(benchmark::State& st) {
    set_worker_count(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(scan(kScan));
}

void BM_full_scan_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(full_scan_serial(GroupSpec(5, false)));
}

void BM_full_scan_parallel(benchmark::State& st) {
    set_worker_count(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(full_scan(GroupSpec(5, false)));
}

void BM_verify_serial(benchmark::State& st) {
    auto f = load_table(std::string(K3PQ_TABLES_DIR) + "/table2.json");
    for (auto _ : st) benchmark::DoNotOptimize(verify_rows_serial(f, {}));
}

void BM_verify_parallel(benchmark::State& st) {
    set_worker_count(static_cast<int>(st.range(0)));
    auto f = load_table(std::string(K3PQ_TABLES_DIR) + "/table2.json");
    for (auto _ : st) benchmark::DoNotOptimize(verify_rows(f, {}));
}

}  // namespace

BENCHMARK(BM_enumerate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_full_scan_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_full_scan_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
