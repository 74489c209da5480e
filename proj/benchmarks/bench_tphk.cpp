#include <benchmark/benchmark.h>

#include "tphk/kernel.hpp"
#include "tphk/matching.hpp"
#include "tphk/oracle.hpp"
#include "tphk/pc.hpp"
#include "tphk/wiener_hopf.hpp"

using namespace tphk;

namespace {

const ShiftParams& shift() {
  static const ShiftParams sh = make_shift(2.0);
  return sh;
}

void BM_Factorize(benchmark::State& state) {
  const auto gp = RationalSymbol::from_roots(1.5, {{cplx(2.0, 1.0), 1}, {cplx(-3.0, 0.5), -1}, {cplx(0.0, 4.0), 1}});
  const auto g = generate_matching_function(gp, static_cast<int>(state.range(0)), 1, shift());
  for (auto _ : state) benchmark::DoNotOptimize(factorize(g));
}
BENCHMARK(BM_Factorize)->Arg(1)->Arg(4);

void BM_AlphaSignature(benchmark::State& state) {
  const auto g = power(invert(shift().chi), 3);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_signature(g, shift()));
}
BENCHMARK(BM_AlphaSignature);

void BM_JAlphaSeries(benchmark::State& state) {
  std::vector<cplx> c(static_cast<std::size_t>(state.range(0)), cplx(1.0, 0.5));
  const TruncatedSeries f(0, c);
  for (auto _ : state) benchmark::DoNotOptimize(apply_J_alpha(f, shift()));
}
BENCHMARK(BM_JAlphaSeries)->Arg(32)->Arg(256);

void BM_HankelSection(benchmark::State& state) {
  const auto b = power(invert(shift().chi), 2);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hankel_section(b, shift(), N, N));
}
BENCHMARK(BM_HankelSection)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_OracleDefects(benchmark::State& state) {
  const auto a = power(invert(shift().chi), 2);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_defects(a, a, shift(), N));
}
BENCHMARK(BM_OracleDefects)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DefectNumbers(benchmark::State& state) {
  const auto one = RationalSymbol::constant(1.0);
  const auto pair = state.range(0) == 0 ? make_matching_pair(power(invert(shift().chi), 2), power(invert(shift().chi), 2), shift())
                                        : make_matching_pair(one, invert(shift().chi), shift());
  for (auto _ : state) benchmark::DoNotOptimize(defect_numbers(pair, shift()));
}
BENCHMARK(BM_DefectNumbers)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FredholmSymbolCheck(benchmark::State& state) {
  const PCSymbol a{RationalSymbol::constant(1.0), {{1.0, 0.3}}, {{FixedPoint::Plus, cplx(0.2, 0.1)}}};
  const auto b = PCSymbol::from_rational(invert(shift().chi));
  for (auto _ : state) benchmark::DoNotOptimize(fredholm_symbol_check(a, b, 2.0, shift()));
}
BENCHMARK(BM_FredholmSymbolCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
