// Microbenchmarks for the per-stage kernels and the full pipeline. Bytes
// processed are counted in uncompressed input, so MB/s matches the CLI.
#include <benchmark/benchmark.h>

#include "wise/bitplane.hpp"
#include "wise/lzw.hpp"
#include "wise/pipeline.hpp"
#include "wise/synthetic.hpp"
#include "wise/transform.hpp"

namespace {

const wise::Image& patch(std::size_t edge) {
  static const wise::Image p256 = wise::synthetic::wsi_patch(256, 256, 1);
  static const wise::Image p1024 = wise::synthetic::wsi_patch(1024, 1024, 1);
  return edge == 256 ? p256 : p1024;
}

void BM_Project(benchmark::State& state) {
  const auto& img = patch(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wise::project(img));
  state.SetBytesProcessed(state.iterations() * img.samples().size());
}
BENCHMARK(BM_Project)->Arg(256)->Arg(1024);

void BM_Bitplanes(benchmark::State& state) {
  const auto residuals = wise::project(patch(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wise::to_bitplanes(residuals));
  state.SetBytesProcessed(state.iterations() * residuals.samples().size());
}
BENCHMARK(BM_Bitplanes)->Arg(256)->Arg(1024);

void BM_LzwEncode(benchmark::State& state) {
  const auto stream = wise::to_bitplanes(wise::project(patch(256)));
  for (auto _ : state) benchmark::DoNotOptimize(wise::lzw::encode(stream, static_cast<unsigned>(state.range(0))));
  state.SetBytesProcessed(state.iterations() * stream.size());
}
BENCHMARK(BM_LzwEncode)->Arg(12)->Arg(16)->Arg(20);

void BM_LzwDecode(benchmark::State& state) {
  const auto stream = wise::to_bitplanes(wise::project(patch(256)));
  const auto packed = wise::lzw::encode(stream).packed;
  for (auto _ : state) benchmark::DoNotOptimize(wise::lzw::decode(packed));
  state.SetBytesProcessed(state.iterations() * stream.size());
}
BENCHMARK(BM_LzwDecode);

// Arg 0: stage combination (bit 0 projection, bit 1 bitplane); arg 1: threads.
void BM_Compress(benchmark::State& state) {
  const auto& img = patch(1024);
  wise::CompressionConfig cfg;
  cfg.patch_size = 256;
  cfg.enable_projection = state.range(0) & 1;
  cfg.enable_bitplane = state.range(0) & 2;
  cfg.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(wise::compress(img, cfg));
  state.SetBytesProcessed(state.iterations() * img.samples().size());
}
BENCHMARK(BM_Compress)->Args({0, 1})->Args({1, 1})->Args({3, 1})->Args({3, 0})->UseRealTime();

void BM_Decompress(benchmark::State& state) {
  const auto& img = patch(1024);
  wise::CompressionConfig cfg;
  cfg.patch_size = 256;
  const auto bytes = wise::compress(img, cfg).bytes;
  for (auto _ : state) benchmark::DoNotOptimize(wise::decompress(bytes, static_cast<unsigned>(state.range(0))));
  state.SetBytesProcessed(state.iterations() * img.samples().size());
}
BENCHMARK(BM_Decompress)->Arg(1)->Arg(0)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
