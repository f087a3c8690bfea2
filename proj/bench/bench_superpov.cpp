// Optimised kernels against their reference versions:
//   reduce (twist clearing, flat columns) vs reduce_naive (set columns, no clearing)
//   score_tasks (OpenMP over days) vs score_tasks_serial

#include "superpov/complex.hpp"
#include "superpov/persistence.hpp"
#include "superpov/scores.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>

using namespace superpov;

namespace {

GphField bench_field(std::size_t nlat, std::size_t nlon, int k = 0) {
    SynthSpec spec = k % 3 == 1 ? SynthSpec::split(450.0, 400.0) : SynthSpec::displaced(25.0, 10.0 * k, 480.0);
    spec.nlat = nlat;
    spec.nlon = nlon;
    spec.noise_amplitude = 5.0;
    spec.seed = static_cast<std::uint64_t>(k) + 1;
    spec.date = Date{2000, 1, 1} + k;
    return synth_field(spec);
}

// nlat, nlon, topology (0 grid, 1 polar)
void grid_args(benchmark::internal::Benchmark* b, bool large) {
    for (auto [nlat, nlon] : {std::pair{19, 36}, std::pair{46, 90}}) {
        b->Args({nlat, nlon, 0});
        b->Args({nlat, nlon, 1});
    }
    if (large) {
        b->Args({91, 360, 0});
        b->Args({91, 360, 1});
    }
}

template <PersistenceDiagram (*Reduce)(const FilteredComplex&)>
void BM_reduce(benchmark::State& state) {
    const auto field = bench_field(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const auto complex = build_complex(field, state.range(2) == 0 ? Topology::grid : Topology::polar);
    for (auto _ : state) benchmark::DoNotOptimize(Reduce(complex));
    state.counters["simplices"] = static_cast<double>(complex.size());
}

BENCHMARK(BM_reduce<reduce>)->Name("reduce/clearing")->Apply([](auto* b) { grid_args(b, true); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reduce<reduce_naive>)->Name("reduce/naive")->Apply([](auto* b) { grid_args(b, false); })->Unit(benchmark::kMillisecond);

void BM_score_day(benchmark::State& state) {
    const auto field = bench_field(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(score_day(field));
}
BENCHMARK(BM_score_day)->Args({19, 36})->Args({91, 360})->Unit(benchmark::kMillisecond);

// A directory of day files shared by the task benchmarks.
class Days {
public:
    Days(int count, std::size_t nlat, std::size_t nlon) {
        dir_ = std::filesystem::temp_directory_path() / ("superpov_bench_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(dir_);
        for (int k = 0; k < count; ++k) {
            auto f = bench_field(nlat, nlon, k);
            auto path = dir_ / (f.date().iso() + ".sppv");
            save_field(path, f);
            tasks_.push_back({f.date(), f.pressure_hpa(), path});
        }
    }
    ~Days() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::vector<DayTask>& tasks() const { return tasks_; }

private:
    std::filesystem::path dir_;
    std::vector<DayTask> tasks_;
};

const Days& days() {
    static const Days d{16, 46, 180};
    return d;
}

void BM_tasks_serial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(score_tasks_serial(days().tasks(), {}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(days().tasks().size()));
}
BENCHMARK(BM_tasks_serial)->Name("score_tasks/serial")->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_tasks_parallel(benchmark::State& state) {
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(score_tasks(days().tasks(), {}, jobs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(days().tasks().size()));
}
BENCHMARK(BM_tasks_parallel)->Name("score_tasks/openmp")->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
