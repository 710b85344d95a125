#include <benchmark/benchmark.h>

#include <random>

#include "conjint/intersections.hpp"
#include "conjint/invariants.hpp"
#include "conjint/oracle.hpp"
#include "conjint/subgroup_graph.hpp"
#include "support.hpp"

using namespace conjint;

namespace {

  Word random_word(std::mt19937& rng, std::size_t letters, std::size_t len) {
    std::vector<Letter> raw(len);
    for (auto& x : raw) {
      x = static_cast<Letter>(rng() % letters);
    }
    return reduce(raw);
  }

  void BM_Reduce(benchmark::State& state) {
    std::mt19937        rng(1);
    std::vector<Letter> raw(static_cast<std::size_t>(state.range(0)));
    for (auto& x : raw) {
      x = static_cast<Letter>(rng() % 4);
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(reduce(raw));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
  }
  BENCHMARK(BM_Reduce)->Range(16, 1 << 16);

  void BM_SemidirectEvaluate(benchmark::State& state) {
    auto         G = testing::g6();
    std::mt19937 rng(2);
    Word         w = random_word(rng, G->alphabet().letter_count(), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(G->evaluate(w));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
  }
  BENCHMARK(BM_SemidirectEvaluate)->Range(16, 1 << 16);

  void BM_Ball(benchmark::State& state) {
    auto G = testing::g6();
    for (auto _ : state) {
      benchmark::DoNotOptimize(G->ball(static_cast<std::size_t>(state.range(0))));
    }
  }
  BENCHMARK(BM_Ball)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

  void BM_Fold(benchmark::State& state) {
    std::mt19937      rng(3);
    std::vector<Word> gens;
    for (int i = 0; i < state.range(0); ++i) {
      gens.push_back(random_word(rng, 6, 12));
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(SubgroupGraph::from_generators(gens, 6));
    }
  }
  BENCHMARK(BM_Fold)->Range(2, 64);

  void BM_Membership(benchmark::State& state) {
    auto         G = testing::free_group(3);
    auto         H = testing::subgroup(G, {"a^2 b", "b c^-1 a", "c^3"}, 2);
    std::mt19937 rng(4);
    std::vector<Word> probes;
    for (int i = 0; i < 256; ++i) {
      probes.push_back(random_word(rng, 6, 24));
    }
    std::size_t i = 0;
    for (auto _ : state) {
      benchmark::DoNotOptimize(membership(H, probes[i++ % probes.size()]));
    }
  }
  BENCHMARK(BM_Membership);

  void BM_ConjugateIntersection(benchmark::State& state) {
    auto G = testing::g6();
    auto H = testing::subgroup(G, {"x1", "x2"}, 0);
    Word g = testing::W(*G, state.range(0) == 1 ? "t" : "t^2");
    for (auto _ : state) {
      benchmark::DoNotOptimize(conjugate_intersection_generators(H, g));
    }
  }
  BENCHMARK(BM_ConjugateIntersection)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

  void BM_WeakWidth(benchmark::State& state) {
    auto G = testing::g6(state.range(0));
    auto H = testing::subgroup(G, {"x1", "x2"}, 0);
    for (auto _ : state) {
      benchmark::DoNotOptimize(weak_width(H));
    }
  }
  BENCHMARK(BM_WeakWidth)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

  void BM_WidthExact(benchmark::State& state) {
    auto G = testing::g6();
    auto L = testing::subgroup(G, {"x1", "x2", "x3"}, 0);
    for (auto _ : state) {
      benchmark::DoNotOptimize(width(L, Mode::exact_search));
    }
  }
  BENCHMARK(BM_WidthExact)->Unit(benchmark::kMillisecond);

  void BM_HeightExact(benchmark::State& state) {
    auto G = testing::g6();
    auto L = testing::subgroup(G, {"x1", "x2", "x3"}, 0);
    for (auto _ : state) {
      benchmark::DoNotOptimize(height(L, Mode::exact_search));
    }
  }
  BENCHMARK(BM_HeightExact)->Unit(benchmark::kMillisecond);

  void BM_OracleBall(benchmark::State& state) {
    auto G = testing::free_group(2);
    auto H = testing::subgroup(G, {"a^2", "b"}, 1);
    auto r = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(oracle_subgroup_ball(H, r, r + 1));
    }
  }
  BENCHMARK(BM_OracleBall)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
