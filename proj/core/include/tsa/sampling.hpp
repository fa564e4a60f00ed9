#ifndef TSA_SAMPLING_HPP
#define TSA_SAMPLING_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsa/era.hpp"
#include "tsa/fa.hpp"
#include "tsa/rational.hpp"
#include "tsa/region.hpp"
#include "tsa/ta.hpp"
#include "tsa/translate.hpp"

namespace tsa::sampling {

struct AnalysisConfig {
  // Counter bounds tried for the limitedness check, in order.
  std::vector<long long> bound_schedule{1, 2, 4, 8, 16, 32, 64};
  // Length cap for lasso pieces and for verification words.
  int word_len_cap = 16;
  // Pump counts tried when gathering divergence evidence.
  int k_check = 8;
  // Sampled denominators checked when confirming a negative verdict.
  std::vector<long long> eps_checks{2, 3, 4};
  long long max_lasso_candidates = 20'000;
  fa::Budget nfa_budget{};
  region::RegionGraphOptions region_options{};
  ta::SampledOptions sampled_options{};
};

enum class Verdict { Samplable, NotSamplable, Unknown };

std::string verdict_string(Verdict v);

// An accepting lasso u v* x of the counter automaton whose minimal counter
// bound keeps growing with the number of pumps: empirical evidence that no
// finite bound exists.
struct PumpingWitness {
  std::vector<int> u, v, x;       // letters of the delta-free automaton
  std::vector<long long> bounds;  // min bound of u v^k x for k = 0..k_check
};

struct SamplingResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Rat> epsilon;      // sampling period, Samplable only
  std::optional<long long> bound;  // counter bound behind the verdict
  std::string method;
  std::vector<std::string> evidence;
  std::vector<std::string> checks;
  std::optional<PumpingWitness> witness;
};

// Decides whether some sampling period 1/k preserves the dense-time
// language.  Cheap sufficient conditions (no clocks; one clock; no strict
// comparisons) answer immediately; otherwise the automaton is translated
// into a counter automaton whose counters bound the fractional crowding of
// any run, and bounded counters yield a period.  Budget exhaustion or an
// inconclusive search returns Unknown, never a wrong verdict.
SamplingResult analyze(const ta::TimedAutomaton& a,
                       const AnalysisConfig& cfg = {});

// Searches r (delta-free) for a pumpable accepting lasso whose minimal
// counter bound is at least k after k pumps, strictly increasing.
std::optional<PumpingWitness> pumping_evidence(const era::RAutomaton& r,
                                               const AnalysisConfig& cfg = {});

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> lines;
};

// Independent confirmation of a verdict by the two membership oracles:
// Samplable -> sampled and dense membership agree on every word up to
// max_len (default cfg.word_len_cap); NotSamplable -> for each configured
// period a dense-accepted word that the sampled semantics rejects.
VerifyReport verify_verdict(const ta::TimedAutomaton& a,
                            const SamplingResult& res,
                            const AnalysisConfig& cfg = {}, int max_len = -1);

std::string to_json(const SamplingResult& res);

}  // namespace tsa::sampling

#endif  // TSA_SAMPLING_HPP
