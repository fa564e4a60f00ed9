#ifndef TSA_TA_HPP
#define TSA_TA_HPP

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "tsa/rational.hpp"

namespace tsa::ta {

// Comparison operator of a guard atom.  Equality is syntactic sugar: the
// parser expands `x = c` into `x <= c` and `x >= c`.
enum class Cmp { Lt, Le, Ge, Gt };

struct Atom {
  int clock = 0;
  Cmp cmp = Cmp::Lt;
  long long bound = 0;  // nonnegative integer constant

  auto operator<=>(const Atom&) const = default;
};

// Conjunction of atoms; the empty guard is `true`.
using Guard = std::vector<Atom>;

struct Transition {
  int src = 0;
  int letter = 0;
  Guard guard;
  std::vector<int> resets;  // sorted clock indices, no duplicates
  int dst = 0;

  auto operator<=>(const Transition&) const = default;
};

// A timed automaton with location-based acceptance and diagonal-free guards.
// All name vectors are sorted so that iteration order is reproducible.
struct TimedAutomaton {
  std::vector<std::string> locations;
  std::vector<std::string> clocks;
  std::vector<std::string> alphabet;  // never contains the reserved "delta"
  int initial = 0;
  std::vector<char> accepting;  // indexed by location
  std::vector<Transition> transitions;  // sorted

  int num_locations() const { return static_cast<int>(locations.size()); }
  int num_clocks() const { return static_cast<int>(clocks.size()); }
  int num_letters() const { return static_cast<int>(alphabet.size()); }

  // Largest constant appearing in any guard; 0 when there are none.
  long long max_constant() const;
};

using ClockValuation = std::vector<Rat>;
using Word = std::vector<int>;  // letter indices

bool guard_satisfied(const Guard& g, const ClockValuation& nu);

// nu + delay on every clock; delay must be >= 0.
ClockValuation time_step(const ClockValuation& nu, const Rat& delay);

// Copy of nu with the listed clocks set to 0.
ClockValuation apply_resets(const ClockValuation& nu,
                            const std::vector<int>& resets);

// Every (transition index, successor valuation) enabled from (loc, nu) on
// `letter`, in transition order.
std::vector<std::pair<int, ClockValuation>> discrete_step(
    const TimedAutomaton& a, int loc, const ClockValuation& nu, int letter);

struct SampledOptions {
  long long max_states = 4'000'000;  // visited-state budget for the BFS
};

// Membership of `word` when all delays are multiples of 1/k (k >= 1).
// Clock values are explored exactly, clamped once they exceed the maximal
// guard constant; throws ResourceError when the state budget is exhausted.
bool sampled_member(const TimedAutomaton& a, const Word& word, long long k,
                    const SampledOptions& opt = {});

// Membership under arbitrary nonnegative rational delays, decided on the
// region graph (defined in region.hpp; implementation lives there).
bool dense_member_via_regions(const TimedAutomaton& a, const Word& word);

// Text format ---------------------------------------------------------------
//
//   # comment
//   clocks x y
//   alphabet a b
//   initial q0
//   accepting q1
//   trans q0 -> q1 on a when x<1 & y<1 reset x
//   trans q1 -> q1 on b when true reset -
//
// Guards are `&`-separated atoms `clock OP int`, OP in {<, <=, >=, >, =}.

TimedAutomaton parse_ta(const std::string& text);
std::string dump_ta(const TimedAutomaton& a);

// Whitespace-separated letters -> indices; throws InputError on unknown ones.
Word parse_word(const TimedAutomaton& a, const std::string& text);
std::string word_string(const TimedAutomaton& a, const Word& w);

}  // namespace tsa::ta

#endif  // TSA_TA_HPP
