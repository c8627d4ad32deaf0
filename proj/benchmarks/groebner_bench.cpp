#include <benchmark/benchmark.h>

#include "endorank/chains.hpp"
#include "endorank/groebner.hpp"

using namespace endorank;

namespace {

Endomorphism cusp(const Field& f) {
  const auto x1 = MultiPoly::variable(f, 2, 0);
  return Endomorphism(f, 2, {x1.pow(2), x1.pow(3)});
}

// (x1^2 - x1)(x2^2 - x2) x_i over GF(2)
Endomorphism gf2_counterexample() {
  const Field f = Field::prime(2);
  const auto x1 = MultiPoly::variable(f, 2, 0), x2 = MultiPoly::variable(f, 2, 1);
  const MultiPoly c = (x1.pow(2) - x1) * (x2.pow(2) - x2);
  return Endomorphism(f, 2, {c * x1, c * x2});
}

std::vector<Endomorphism> corpus(const Field& f, std::size_t n, unsigned degree, std::size_t count) {
  std::mt19937_64 rng(12345);
  std::vector<Endomorphism> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_endomorphism(f, n, degree, 2, rng));
  return out;
}

void BM_RelationIdealCusp(benchmark::State& state) {
  const auto phi = cusp(Field::rationals());
  for (auto _ : state) benchmark::DoNotOptimize(relation_ideal(phi));
}
BENCHMARK(BM_RelationIdealCusp);

void BM_RankRandom(benchmark::State& state) {
  const Field f = state.range(0) == 0 ? Field::rationals() : Field::prime(static_cast<std::uint64_t>(state.range(0)));
  const auto maps = corpus(f, static_cast<std::size_t>(state.range(1)), 2, 8);
  for (auto _ : state)
    for (const auto& m : maps) benchmark::DoNotOptimize(rank(m).rank);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(maps.size()));
}
BENCHMARK(BM_RankRandom)->Args({0, 2})->Args({2, 2})->Args({3, 3})->Args({0, 3})->Unit(benchmark::kMillisecond);

void BM_GroebnerKatsura3(benchmark::State& state) {
  const Field f = Field::prime(32003);
  const std::size_t n = 3;
  auto x = [&](std::size_t i) { return MultiPoly::variable(f, n, i); };
  auto c = [&](std::int64_t v) { return MultiPoly::constant(f, n, f.from_int(v)); };
  // katsura-3 in three unknowns
  const Ideal ideal(f, n,
                    {x(0) + c(2) * x(1) + c(2) * x(2) - c(1),
                     x(0) * x(0) + c(2) * x(1) * x(1) + c(2) * x(2) * x(2) - x(0),
                     c(2) * x(0) * x(1) + c(2) * x(1) * x(2) - x(1)});
  for (auto _ : state) benchmark::DoNotOptimize(groebner_basis(ideal, MonomialOrder::grevlex()));
}
BENCHMARK(BM_GroebnerKatsura3);

void BM_FullChainGf2(benchmark::State& state) {
  const auto phi = gf2_counterexample();
  for (auto _ : state) benchmark::DoNotOptimize(build_full_chain(phi).length());
}
BENCHMARK(BM_FullChainGf2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
