#include <doctest.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsa/era.hpp"
#include "tsa/errors.hpp"
#include "tsa/rational.hpp"
#include "tsa/region.hpp"
#include "tsa/sampling.hpp"
#include "tsa/ta.hpp"
#include "tsa/translate.hpp"

using namespace tsa;
using namespace tsa::sampling;

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

// The same shape with every strict comparison relaxed.
const char* const kClosedLoopText = R"(
clocks x y
alphabet a b
initial q0
accepting q1
trans q0 -> q1 on a when x<=1 & y<=1 reset x
trans q1 -> q2 on b when y>=1 & y<=1 reset y
trans q2 -> q1 on a when y>=0 & x<=1 reset x
)";

era::RAutomaton delta_free_era(const ta::TimedAutomaton& a) {
  const ta::TimedAutomaton a2 = translate::remove_multiple_resets(a);
  const region::RegionGraph g = region::build_region_graph(a2);
  const translate::PipelineEra pe = translate::build_era(g, a2);
  return translate::remove_delta(pe.automaton, pe.delta_letter);
}

AnalysisConfig quick_config() {
  AnalysisConfig cfg;
  cfg.bound_schedule = {1, 2, 3};
  return cfg;
}

}  // namespace

TEST_CASE("verdicts print as stable identifiers") {
  CHECK(verdict_string(Verdict::Samplable) == "samplable");
  CHECK(verdict_string(Verdict::NotSamplable) == "not_samplable");
  CHECK(verdict_string(Verdict::Unknown) == "unknown");
}

TEST_CASE("configuration defaults match the documented contract") {
  const AnalysisConfig cfg;
  CHECK(cfg.eps_checks == std::vector<long long>{2, 3, 4});
  CHECK(cfg.bound_schedule.front() == 1);
  CHECK(std::is_sorted(cfg.bound_schedule.begin(), cfg.bound_schedule.end()));
  CHECK(cfg.bound_schedule.back() >= 16);
  CHECK(cfg.k_check >= 4);
}

TEST_CASE("clockless automata admit period one") {
  const ta::TimedAutomaton a = ta::parse_ta(R"(
clocks
alphabet a
initial q0
accepting q0
trans q0 -> q0 on a when true reset -
)");
  const SamplingResult res = analyze(a);
  CHECK(res.verdict == Verdict::Samplable);
  REQUIRE(res.epsilon.has_value());
  CHECK(*res.epsilon == Rat(1));
  CHECK(res.method == "zero-clock");
  const VerifyReport rep = verify_verdict(a, res, {}, 4);
  CHECK(rep.ok);
}

TEST_CASE("one-clock automata admit period one half") {
  const ta::TimedAutomaton a = ta::parse_ta(R"(
clocks x
alphabet a b
initial q0
accepting q1
trans q0 -> q1 on a when x<1 reset x
trans q1 -> q0 on b when x>1 reset x
)");
  const SamplingResult res = analyze(a);
  CHECK(res.verdict == Verdict::Samplable);
  REQUIRE(res.epsilon.has_value());
  CHECK(*res.epsilon == Rat(1, 2));
  CHECK(res.method == "one-clock");
  const VerifyReport rep = verify_verdict(a, res, {}, 5);
  CHECK(rep.ok);
  REQUIRE(!rep.lines.empty());
  CHECK(rep.lines[0].find("agree") != std::string::npos);

  // One clock wins over the closed-guard shortcut.
  const ta::TimedAutomaton closed = ta::parse_ta(R"(
clocks x
alphabet a
initial q0
accepting q0
trans q0 -> q0 on a when x<=1 reset x
)");
  CHECK(analyze(closed).method == "one-clock");
}

TEST_CASE("closed guards admit period one") {
  const ta::TimedAutomaton a = ta::parse_ta(kClosedLoopText);
  const SamplingResult res = analyze(a);
  CHECK(res.verdict == Verdict::Samplable);
  REQUIRE(res.epsilon.has_value());
  CHECK(*res.epsilon == Rat(1));
  CHECK(res.method == "closed");
  CHECK_FALSE(res.bound.has_value());
  const VerifyReport rep = verify_verdict(a, res, {}, 6);
  CHECK(rep.ok);
}

TEST_CASE("bounded counters certify a period through the pipeline") {
  SUBCASE("single strict transition") {
    const ta::TimedAutomaton a = ta::parse_ta(R"(
clocks x y
alphabet a
initial q0
accepting q1
trans q0 -> q1 on a when x<1 reset -
)");
    const SamplingResult res = analyze(a);
    CHECK(res.verdict == Verdict::Samplable);
    CHECK(res.method == "limitedness");
    REQUIRE(res.bound.has_value());
    REQUIRE(res.epsilon.has_value());
    CHECK(*res.epsilon == Rat(1, 4 * *res.bound));
    const VerifyReport rep = verify_verdict(a, res, {}, 4);
    CHECK(rep.ok);
  }

  SUBCASE("loop that resets every clock") {
    const ta::TimedAutomaton a = ta::parse_ta(R"(
clocks x y
alphabet a
initial q0
accepting q0
trans q0 -> q0 on a when x<1 reset x y
)");
    const SamplingResult res = analyze(a);
    CHECK(res.verdict == Verdict::Samplable);
    CHECK(res.method == "limitedness");
    REQUIRE(res.bound.has_value());
    CHECK(*res.bound <= 4);
    CHECK(*res.epsilon == Rat(1, 4 * *res.bound));
    const VerifyReport rep = verify_verdict(a, res, {}, 4);
    CHECK(rep.ok);
  }
}

TEST_CASE("the unbounded loop is recognized as not samplable") {
  const ta::TimedAutomaton a = ta::parse_ta(kLoopText);
  const AnalysisConfig cfg = quick_config();
  const SamplingResult res = analyze(a, cfg);
  CHECK(res.verdict == Verdict::NotSamplable);
  CHECK(res.method == "pumping");
  CHECK_FALSE(res.epsilon.has_value());
  CHECK_FALSE(res.bound.has_value());

  // Every bound in the schedule was tried and rejected with a word.
  REQUIRE(res.checks.size() == cfg.bound_schedule.size());
  for (std::size_t i = 0; i < res.checks.size(); ++i) {
    CHECK(res.checks[i].find("B=" + std::to_string(cfg.bound_schedule[i])) !=
          std::string::npos);
    CHECK(res.checks[i].find("differ") != std::string::npos);
  }

  REQUIRE(res.witness.has_value());
  const PumpingWitness& w = *res.witness;
  CHECK(!w.v.empty());
  REQUIRE(w.bounds.size() == static_cast<std::size_t>(cfg.k_check) + 1);
  for (std::size_t i = 0; i < w.bounds.size(); ++i) {
    CHECK(w.bounds[i] >= static_cast<long long>(i));
    if (i) CHECK(w.bounds[i] > w.bounds[i - 1]);
  }
  CHECK(!res.evidence.empty());

  // Each configured period loses a dense word.
  const VerifyReport rep = verify_verdict(a, res, cfg);
  CHECK(rep.ok);
  REQUIRE(rep.lines.size() == cfg.eps_checks.size());
  for (std::size_t i = 0; i < rep.lines.size(); ++i)
    CHECK(rep.lines[i].find("period 1/" +
                            std::to_string(cfg.eps_checks[i])) == 0);
}

TEST_CASE("pumping evidence reflects the counter automaton") {
  SUBCASE("growing lasso found on the unbounded loop") {
    const era::RAutomaton r = delta_free_era(ta::parse_ta(kLoopText));
    const std::optional<PumpingWitness> w = pumping_evidence(r);
    REQUIRE(w.has_value());
    std::vector<int> base = w->u;
    base.insert(base.end(), w->x.begin(), w->x.end());
    const std::optional<long long> mb = era::min_bound(r, base);
    REQUIRE(mb.has_value());
    CHECK(*mb == w->bounds.front());
  }

  SUBCASE("no lasso on a bounded automaton") {
    const era::RAutomaton r = era::parse_era(R"(
counters 1
initial s0
accepting s1
trans s0 -> s1 on a eff 1
trans s1 -> s1 on b eff r{}
)");
    CHECK_FALSE(pumping_evidence(r).has_value());
  }
}

TEST_CASE("running out of budget yields unknown, not a wrong answer") {
  AnalysisConfig cfg = quick_config();
  cfg.region_options.max_nodes = 3;
  const SamplingResult res = analyze(ta::parse_ta(kLoopText), cfg);
  CHECK(res.verdict == Verdict::Unknown);
  CHECK(res.method == "budget-exhausted");
  CHECK(!res.evidence.empty());
  CHECK_FALSE(res.epsilon.has_value());
}

TEST_CASE("unknown verdicts verify trivially") {
  SamplingResult res;
  res.verdict = Verdict::Unknown;
  const VerifyReport rep = verify_verdict(ta::parse_ta(kLoopText), res);
  CHECK(rep.ok);
  REQUIRE(!rep.lines.empty());
  CHECK(rep.lines[0].find("nothing to confirm") != std::string::npos);
}

TEST_CASE("results serialize to well-formed json") {
  SUBCASE("samplable verdict") {
    const SamplingResult res = analyze(ta::parse_ta(kClosedLoopText));
    const nlohmann::json j = nlohmann::json::parse(to_json(res));
    CHECK(j.at("verdict") == "samplable");
    CHECK(j.at("epsilon") == "1");
    CHECK(j.at("bound").is_null());
    CHECK(j.at("method") == "closed");
    CHECK(j.at("evidence").is_array());
    CHECK(j.at("checks").is_array());
  }

  SUBCASE("negative verdict") {
    const SamplingResult res = analyze(ta::parse_ta(kLoopText), quick_config());
    const nlohmann::json j = nlohmann::json::parse(to_json(res));
    CHECK(j.at("verdict") == "not_samplable");
    CHECK(j.at("epsilon").is_null());
    CHECK(j.at("bound").is_null());
    CHECK(j.at("method") == "pumping");
    CHECK(j.at("evidence").size() >= 2);
    CHECK(j.at("checks").size() == 3);
  }

  SUBCASE("fractional period") {
    SamplingResult res;
    res.verdict = Verdict::Samplable;
    res.epsilon = Rat(1, 12);
    res.bound = 3;
    res.method = "limitedness";
    const nlohmann::json j = nlohmann::json::parse(to_json(res));
    CHECK(j.at("epsilon") == "1/12");
    CHECK(j.at("bound") == 3);
  }
}
