#include <algorithm>
#include <random>

#include <benchmark/benchmark.h>

#include "bardsl/metrics/image_metrics.hpp"
#include "bardsl/metrics/score.hpp"
#include "support.hpp"

using namespace bardsl;

namespace {

render::GrayImage noise(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    render::GrayImage img(w, h, 0);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() % 256);
    return img;
}

void BM_SsimParallel(benchmark::State& st) {
    const auto a = noise(int(st.range(0)), int(st.range(0)), 1), b = noise(int(st.range(0)), int(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(metrics::ssim_index(a, b));
}

void BM_SsimReference(benchmark::State& st) {
    const auto a = noise(int(st.range(0)), int(st.range(0)), 1), b = noise(int(st.range(0)), int(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(metrics::reference::ssim_index(a, b));
}

void BM_MseParallel(benchmark::State& st) {
    const auto a = noise(int(st.range(0)), int(st.range(0)), 3), b = noise(int(st.range(0)), int(st.range(0)), 4);
    for (auto _ : st) benchmark::DoNotOptimize(metrics::mse(a, b));
}

void BM_MseReference(benchmark::State& st) {
    const auto a = noise(int(st.range(0)), int(st.range(0)), 3), b = noise(int(st.range(0)), int(st.range(0)), 4);
    for (auto _ : st) benchmark::DoNotOptimize(metrics::reference::mse(a, b));
}

struct Corpus {
    std::vector<dsl::Program> programs;
    std::vector<metrics::ScoreJob> jobs;
    Corpus() {
        for (const auto& p : support::fixture_programs()) programs.push_back(support::load(p));
        for (std::size_t i = 0; i < std::min<std::size_t>(16, programs.size()); ++i)
            jobs.push_back({&programs[i], &programs[(i + 1) % programs.size()], std::nullopt});
    }
};

const Corpus& corpus() {
    static const Corpus c;
    return c;
}

void BM_ScoreBatchParallel(benchmark::State& st) {
    const auto& c = corpus();
    for (auto _ : st) benchmark::DoNotOptimize(metrics::score_batch(c.jobs, {}, int(st.range(0))));
}

void BM_ScoreBatchSerial(benchmark::State& st) {
    const auto& c = corpus();
    for (auto _ : st) benchmark::DoNotOptimize(metrics::score_batch_serial(c.jobs));
}

}  // namespace

BENCHMARK(BM_SsimParallel)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SsimReference)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MseParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MseReference)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScoreBatchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreBatchSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
