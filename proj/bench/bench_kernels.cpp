// Serial reference vs OpenMP kernels. Arg 0 runs the serial twin, 1 the parallel one.

#include <benchmark/benchmark.h>

#include "thickpat/appendix.hpp"
#include "thickpat/game.hpp"
#include "thickpat/patterns.hpp"
#include "thickpat/thickness.hpp"

using namespace thickpat;

namespace {

const SetDescriptor& third() {
  static const SetDescriptor d = SetDescriptor::middle_epsilon(make_rational(1, 3));
  return d;
}

std::vector<Rational> delta_grid() {
  std::vector<Rational> ds;
  for (int k = 1; k <= 64; ++k) ds.push_back(make_rational(k, 128));
  return ds;
}

void BM_chunk_thickness(benchmark::State& st) {
  const auto d = SetDescriptor::middle_epsilon(make_rational(1, 5));
  for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? thickness_chunk(d, 6) : thickness_chunk_serial(d, 6));
}

void BM_ap_grid(benchmark::State& st) {
  const auto ds = delta_grid();
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? ap_search_grid(third(), 3, ds, 8)
                                         : ap_search_grid_serial(third(), 3, ds, 8));
}

void BM_homothety(benchmark::State& st) {
  const std::vector<Rational> pts = {Rational(0), make_rational(1, 3), Rational(1)};
  std::vector<Rational> ls;
  for (int k = 1; k <= 32; ++k) ls.push_back(make_rational(k, 40));
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? homothety_search(third(), pts, ls, 7)
                                         : homothety_search_serial(third(), pts, ls, 7));
}

void BM_longest_ap(benchmark::State& st) {
  const auto d = SetDescriptor::middle_epsilon(make_rational(1, 5));
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? longest_ap(d, 4, 32, 5000) : longest_ap_serial(d, 4, 32, 5000));
}

void BM_minkowski(benchmark::State& st) {
  const auto d = SetDescriptor::middle_epsilon(make_rational(1, 2));
  for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? sumset_cover({d, d}, 7) : sumset_cover_serial({d, d}, 7));
}

void BM_play_batch(benchmark::State& st) {
  const auto d = SetDescriptor::middle_epsilon(make_rational(1, 5));
  const Rational beta(1, 5), stop(1, 100000);
  const auto p = cantor_params(d, beta);
  const auto alice = alice_cantor_strategy(d, p, stop);
  const auto cover = target_cover(d, stop, beta);
  auto make = [&](std::uint64_t s) { return bob_uniform_random(s, p, Rational(0), Rational(1)); };
  for (auto _ : st)
    benchmark::DoNotOptimize(st.range(0) ? play_batch(make, alice, stop, cover, 64, 0)
                                         : play_batch_serial(make, alice, stop, cover, 64, 0));
}

void BM_build_fractal(benchmark::State& st) {
  ConstructionParams p;
  p.beta = make_rational(1, 4);
  p.N = 2;
  p.J = 4;
  const auto oracle = no_erasure_oracle();
  for (auto _ : st) benchmark::DoNotOptimize(st.range(0) ? build_fractal(p, oracle) : build_fractal_serial(p, oracle));
}

}  // namespace

BENCHMARK(BM_chunk_thickness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ap_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_homothety)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_longest_ap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_minkowski)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_play_batch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_fractal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
