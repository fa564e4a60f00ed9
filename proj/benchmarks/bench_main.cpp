#include <benchmark/benchmark.h>

#include <vector>

#include "tsa/era.hpp"
#include "tsa/fa.hpp"
#include "tsa/rational.hpp"
#include "tsa/region.hpp"
#include "tsa/sampling.hpp"
#include "tsa/ta.hpp"
#include "tsa/translate.hpp"

namespace {

const char* const kLoopText = R"(
clocks x y
alphabet a b
initial q0
accepting q1
trans q0 -> q1 on a when x<1 & y<1 reset x
trans q1 -> q2 on b when y>=1 & y<=1 reset y
trans q2 -> q1 on a when y>0 & x<1 reset x
)";

const char* const kCounterText = R"(
counters 2
initial s0
accepting s1 s2
trans s0 -> s1 on a eff 1,0
trans s1 -> s2 on b eff r{},*1
trans s0 -> s2 on a eff 0,1
trans s1 -> s1 on b eff 0,1
trans s2 -> s2 on a eff 0,r{1}
)";

// Accepted pump word a b^m a with m from the benchmark argument.
std::vector<int> pump_word(int m) {
  std::vector<int> w{0};
  w.insert(w.end(), m, 1);
  w.push_back(0);
  return w;
}

void BM_RegionGraphBuild(benchmark::State& state) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(kLoopText);
  for (auto _ : state) {
    tsa::region::RegionGraph g = tsa::region::build_region_graph(a);
    benchmark::DoNotOptimize(g.num_nodes());
  }
}
BENCHMARK(BM_RegionGraphBuild);

void BM_BuildCounterAutomaton(benchmark::State& state) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(kLoopText);
  const tsa::region::RegionGraph g = tsa::region::build_region_graph(a);
  for (auto _ : state) {
    tsa::translate::PipelineEra pe = tsa::translate::build_era(g, a);
    benchmark::DoNotOptimize(pe.automaton.num_states());
  }
}
BENCHMARK(BM_BuildCounterAutomaton);

void BM_BoundedLanguageNfa(benchmark::State& state) {
  const tsa::era::RAutomaton r = tsa::era::parse_era(kCounterText);
  const long long b = state.range(0);
  for (auto _ : state) {
    tsa::fa::Nfa n = tsa::era::b_language_nfa(r, b);
    benchmark::DoNotOptimize(n.num_states);
  }
}
BENCHMARK(BM_BoundedLanguageNfa)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_MinBound(benchmark::State& state) {
  const tsa::era::RAutomaton r = tsa::era::parse_era(kCounterText);
  const std::vector<int> w = pump_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto mb = tsa::era::min_bound(r, w);
    benchmark::DoNotOptimize(mb);
  }
}
BENCHMARK(BM_MinBound)->Arg(4)->Arg(16)->Arg(64);

void BM_SampledMembership(benchmark::State& state) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(kLoopText);
  const std::vector<int> w{0, 1, 0, 1, 0};  // a b a b a
  const long long k = state.range(0);
  for (auto _ : state) {
    bool in = tsa::ta::sampled_member(a, w, k);
    benchmark::DoNotOptimize(in);
  }
}
BENCHMARK(BM_SampledMembership)->Arg(2)->Arg(6)->Arg(12);

void BM_AnalyzeLoop(benchmark::State& state) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(kLoopText);
  tsa::sampling::AnalysisConfig cfg;
  cfg.bound_schedule = {1, 2, 4};
  for (auto _ : state) {
    tsa::sampling::SamplingResult res = tsa::sampling::analyze(a, cfg);
    benchmark::DoNotOptimize(res.verdict);
  }
}
BENCHMARK(BM_AnalyzeLoop);

}  // namespace

BENCHMARK_MAIN();
