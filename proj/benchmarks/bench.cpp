#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ulim/enumerate.hpp"
#include "ulim/interpolate.hpp"
#include "ulim/parse.hpp"
#include "ulim/prover.hpp"
#include "ulim/sequent.hpp"

using namespace ulim;

namespace {

// Conjunction reassociation: right-nested to left-nested over n atoms.
// Exercises the invertible left/right conjunction rules and the cache.
Sequent assoc_sequent(int n) {
  std::vector<Formula> atoms;
  for (int i = 0; i < n; ++i)
    atoms.push_back(Formula::atom("x" + std::to_string(i)));
  Formula right = atoms.back();
  for (int i = n - 2; i >= 0; --i) right = Formula::conj(atoms[i], right);
  Formula left = atoms.front();
  for (int i = 1; i < n; ++i) left = Formula::conj(left, atoms[i]);
  return Sequent(FormulaBag::of({right}), left);
}

Formula sized_formula(std::uint32_t weight) {
  FormulaSampler sampler({"p", "q", "r"}, 0xbe7c4 + weight);
  return sampler.sample_exact(weight);
}

void BM_prove_cold(benchmark::State& state) {
  Sequent s = assoc_sequent(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ProofCache cache;
    benchmark::DoNotOptimize(derivable(s, cache));
  }
}
BENCHMARK(BM_prove_cold)->DenseRange(2, 8, 2);

void BM_prove_warm(benchmark::State& state) {
  Sequent s = assoc_sequent(static_cast<int>(state.range(0)));
  ProofCache cache;
  derivable(s, cache);
  for (auto _ : state) benchmark::DoNotOptimize(derivable(s, cache));
}
BENCHMARK(BM_prove_warm)->DenseRange(2, 8, 2);

void BM_prove_modal(benchmark::State& state) {
  Sequent s = parse_sequent(
      "[](p & q), [](p & q) -> [](q & r), [](q & r) -> s => s | t");
  for (auto _ : state) {
    ProofCache cache;
    benchmark::DoNotOptimize(derivable(s, cache));
  }
}
BENCHMARK(BM_prove_modal);

void BM_oracle(benchmark::State& state) {
  Sequent s = parse_sequent("p | q, p -> r, q -> r => r & (p | q)");
  for (auto _ : state) benchmark::DoNotOptimize(prove_g3(s));
}
BENCHMARK(BM_oracle);

void BM_uip_exists(benchmark::State& state) {
  Formula f = sized_formula(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    InterpCache cache;
    benchmark::DoNotOptimize(uip_exists(f, "p", cache));
  }
}
BENCHMARK(BM_uip_exists)->DenseRange(4, 10, 2);

void BM_uip_forall(benchmark::State& state) {
  Formula f = sized_formula(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    InterpCache cache;
    benchmark::DoNotOptimize(uip_forall(f, "p", cache));
  }
}
BENCHMARK(BM_uip_forall)->DenseRange(4, 10, 2);

void BM_simplify_fast(benchmark::State& state) {
  InterpCache cache;
  Formula raw = exists_q(FormulaBag::of({parse_formula("(p -> q) -> q")}), "p",
                         Polarity::Pos, cache);
  for (auto _ : state) benchmark::DoNotOptimize(simplify(raw));
}
BENCHMARK(BM_simplify_fast);

void BM_simplify_verified(benchmark::State& state) {
  InterpCache cache;
  Formula raw = exists_q(FormulaBag::of({parse_formula("(p -> q) -> q")}), "p",
                         Polarity::Pos, cache);
  ProofCache pc;
  for (auto _ : state)
    benchmark::DoNotOptimize(simplify(raw, SimplifyMode::Verified, &pc));
}
BENCHMARK(BM_simplify_verified);

void BM_bag_order(benchmark::State& state) {
  FormulaSampler sampler({"p", "q"}, 0xba9);
  std::vector<FormulaBag> bags;
  for (int i = 0; i < 64; ++i) bags.push_back(sampler.sample_bag(4, 6));
  for (auto _ : state)
    for (std::size_t i = 0; i + 1 < bags.size(); ++i)
      benchmark::DoNotOptimize(bag_precedes(bags[i], bags[i + 1]));
}
BENCHMARK(BM_bag_order);

void BM_canonical_key(benchmark::State& state) {
  Sequent s = parse_sequent(
      "p | q, p -> r, [](q & r), (p -> q) -> r => r & (p | q)");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(s));
}
BENCHMARK(BM_canonical_key);

void BM_parse(benchmark::State& state) {
  const std::string text =
      "((p -> q) -> r) & [](p | q & r) -> ~(p & ~q) | [](r -> p & q)";
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(text));
}
BENCHMARK(BM_parse);

void BM_universe(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(formula_universe({"p", "q"}, 5));
}
BENCHMARK(BM_universe);

}  // namespace

BENCHMARK_MAIN();
