#include <doctest.h>

#include <string>
#include <vector>

#include "tsa/errors.hpp"
#include "tsa/ta.hpp"

using namespace tsa;
using namespace tsa::ta;

namespace {

const char* const kLoopText = R"(# shrinking-difference loop
clocks x y
alphabet a b
initial q0
accepting q1
trans q0 -> q1 on a when x<1 & y<1 reset x
trans q1 -> q2 on b when y>=1 & y<=1 reset y
trans q2 -> q1 on a when y>0 & x<1 reset x
)";

TimedAutomaton loop_automaton() { return parse_ta(kLoopText); }

}  // namespace

TEST_CASE("parsing collects sorted names and transitions") {
  const TimedAutomaton a = loop_automaton();
  CHECK(a.clocks == std::vector<std::string>{"x", "y"});
  CHECK(a.alphabet == std::vector<std::string>{"a", "b"});
  CHECK(a.locations == std::vector<std::string>{"q0", "q1", "q2"});
  CHECK(a.initial == 0);
  CHECK(a.accepting == std::vector<char>{0, 1, 0});
  REQUIRE(a.transitions.size() == 3);
  CHECK(a.max_constant() == 1);

  // q0 -a-> q1 with x<1 & y<1, reset {x}
  const Transition& t0 = a.transitions[0];
  CHECK(t0.src == 0);
  CHECK(t0.letter == 0);
  CHECK(t0.dst == 1);
  CHECK(t0.guard == Guard{{0, Cmp::Lt, 1}, {1, Cmp::Lt, 1}});
  CHECK(t0.resets == std::vector<int>{0});
}

TEST_CASE("equality guards expand into both closed comparisons") {
  const TimedAutomaton a = parse_ta(
      "clocks x\n"
      "alphabet a\n"
      "initial p\n"
      "accepting q\n"
      "trans p -> q on a when x = 2 reset -\n");
  REQUIRE(a.transitions.size() == 1);
  CHECK(a.transitions[0].guard ==
        Guard{{0, Cmp::Le, 2}, {0, Cmp::Ge, 2}});
  CHECK(a.max_constant() == 2);
}

TEST_CASE("dump and parse round-trip") {
  const TimedAutomaton a = loop_automaton();
  const TimedAutomaton b = parse_ta(dump_ta(a));
  CHECK(a.locations == b.locations);
  CHECK(a.clocks == b.clocks);
  CHECK(a.alphabet == b.alphabet);
  CHECK(a.initial == b.initial);
  CHECK(a.accepting == b.accepting);
  CHECK(a.transitions == b.transitions);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_ta("clocks x\nalphabet delta\ninitial q\n"),
                  InputError);  // reserved letter
  CHECK_THROWS_AS(parse_ta("clocks x x\nalphabet a\ninitial q\n"),
                  InputError);  // duplicate clock
  CHECK_THROWS_AS(parse_ta("clocks x\nalphabet a a\ninitial q\n"),
                  InputError);  // duplicate letter
  CHECK_THROWS_AS(parse_ta("clocks x\nalphabet a\n"),
                  InputError);  // no initial location
  CHECK_THROWS_AS(
      parse_ta("clocks x\nalphabet a\ninitial q\n"
               "trans q -> q on b when true reset -\n"),
      InputError);  // unknown letter
  CHECK_THROWS_AS(
      parse_ta("clocks x\nalphabet a\ninitial q\n"
               "trans q -> q on a when y<1 reset -\n"),
      InputError);  // unknown clock in guard
  CHECK_THROWS_AS(
      parse_ta("clocks x\nalphabet a\ninitial q\n"
               "trans q -> q on a when x<-1 reset -\n"),
      InputError);  // negative constant
  CHECK_THROWS_AS(
      parse_ta("clocks x\nalphabet a\ninitial q\n"
               "trans q -> q on a when x<1 reset y\n"),
      InputError);  // unknown reset clock
}

TEST_CASE("guard evaluation on valuations") {
  const Guard g{{0, Cmp::Lt, 1}, {1, Cmp::Ge, 2}};
  CHECK(guard_satisfied(g, {Rat(1, 2), Rat(2)}));
  CHECK(guard_satisfied(g, {Rat(0), Rat(7, 2)}));
  CHECK_FALSE(guard_satisfied(g, {Rat(1), Rat(2)}));
  CHECK_FALSE(guard_satisfied(g, {Rat(1, 2), Rat(3, 2)}));
  CHECK(guard_satisfied(Guard{}, {Rat(5)}));  // empty guard is true
}

TEST_CASE("time step and resets") {
  const ClockValuation nu{Rat(1, 2), Rat(3)};
  const ClockValuation later = time_step(nu, Rat(3, 2));
  CHECK(later == ClockValuation{Rat(2), Rat(9, 2)});
  CHECK(apply_resets(later, {1}) == ClockValuation{Rat(2), Rat(0)});
  CHECK(apply_resets(later, {}) == later);
  CHECK_THROWS_AS(time_step(nu, Rat(-1, 2)), InputError);
}

TEST_CASE("discrete step lists enabled transitions in order") {
  const TimedAutomaton a = loop_automaton();
  const auto steps = discrete_step(a, 0, {Rat(1, 2), Rat(1, 2)}, 0);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].first == 0);
  CHECK(steps[0].second == ClockValuation{Rat(0), Rat(1, 2)});
  CHECK(discrete_step(a, 0, {Rat(1), Rat(1, 2)}, 0).empty());  // x<1 fails
  CHECK(discrete_step(a, 0, {Rat(0), Rat(0)}, 1).empty());     // no b from q0
}

TEST_CASE("sampled membership depends on the period") {
  const TimedAutomaton a = parse_ta(
      "clocks x\n"
      "alphabet a\n"
      "initial p\n"
      "accepting q\n"
      "trans p -> q on a when x>0 & x<1 reset -\n");
  CHECK_FALSE(sampled_member(a, {0}, 1));  // integer delays skip (0,1)
  CHECK(sampled_member(a, {0}, 2));        // 1/2 lands inside
  CHECK(sampled_member(a, {0}, 3));
  CHECK_FALSE(sampled_member(a, {}, 5));  // empty word, initial not accepting
}

TEST_CASE("sampled membership handles clamped large values") {
  const TimedAutomaton a = parse_ta(
      "clocks x y\n"
      "alphabet a\n"
      "initial p\n"
      "accepting q\n"
      "trans p -> q on a when x>2 & y<=1 reset -\n");
  CHECK_FALSE(sampled_member(a, {0}, 1));  // y <= 1 forces delay <= 1
  const TimedAutomaton b = parse_ta(
      "clocks x y\n"
      "alphabet a\n"
      "initial p\n"
      "accepting q\n"
      "trans p -> q on a when x>2 reset x\n"
      "trans q -> q on a when x>2 reset x\n");
  CHECK(sampled_member(b, {0, 0}, 1));
  CHECK(sampled_member(b, {0, 0, 0}, 2));
}

TEST_CASE("sampled membership respects the state budget") {
  const TimedAutomaton a = loop_automaton();
  SampledOptions opt;
  opt.max_states = 2;
  CHECK_THROWS_AS(sampled_member(a, {0, 1, 0}, 4, opt), ResourceError);
}

TEST_CASE("dense membership via regions on a closed automaton") {
  const TimedAutomaton a = parse_ta(
      "clocks x\n"
      "alphabet a\n"
      "initial p\n"
      "accepting p\n"
      "trans p -> p on a when x=1 reset x\n");
  CHECK(dense_member_via_regions(a, {}));
  CHECK(dense_member_via_regions(a, {0}));
  CHECK(dense_member_via_regions(a, {0, 0, 0}));
  CHECK(sampled_member(a, {0, 0, 0}, 1));
}

TEST_CASE("automata without clocks reduce to plain word acceptance") {
  const TimedAutomaton a = parse_ta(
      "clocks\n"
      "alphabet a b\n"
      "initial p\n"
      "accepting q\n"
      "trans p -> q on a when true reset -\n"
      "trans q -> p on b when true reset -\n");
  CHECK(a.num_clocks() == 0);
  CHECK(sampled_member(a, {0}, 1));
  CHECK_FALSE(sampled_member(a, {1}, 1));
  CHECK(sampled_member(a, {0, 1, 0}, 3));
  CHECK(dense_member_via_regions(a, {0}));
  CHECK_FALSE(dense_member_via_regions(a, {0, 0}));
}

TEST_CASE("word parsing and printing") {
  const TimedAutomaton a = loop_automaton();
  CHECK(parse_word(a, "a b a") == Word{0, 1, 0});
  CHECK(parse_word(a, "") == Word{});
  CHECK(word_string(a, {0, 1, 0}) == "a b a");
  CHECK_THROWS_AS(parse_word(a, "a c"), InputError);
}
