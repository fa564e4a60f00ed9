#ifndef TSA_TRANSLATE_HPP
#define TSA_TRANSLATE_HPP

#include <string>
#include <utility>
#include <vector>

#include "tsa/era.hpp"
#include "tsa/region.hpp"
#include "tsa/ta.hpp"

namespace tsa::translate {

// Counters come in ordered pairs of distinct clocks, enumerated
// lexicographically: (0,1), (0,2), ..., (1,0), (1,2), ...  The counter for
// (x, y) measures how far y's fractional part trails x's.
int num_counters(int num_clocks);
int counter_index(int num_clocks, int x, int y);
std::pair<int, int> counter_clocks(int num_clocks, int index);
std::string counter_name(const std::vector<std::string>& clocks, int index);

// Rewrites every transition into a chain of |clocks| transitions on the
// same letter (|clocks|-1 fresh non-accepting locations) so that at most
// one clock is reset per transition: the first keeps the guard and resets
// the first reset clock; the others are guarded by `first = 0` and reset
// the remaining clocks one by one.  Words map by a -> a^|clocks|.
ta::TimedAutomaton remove_multiple_resets(const ta::TimedAutomaton& a);

// Counter automaton built on a region graph.  The delta letter (time
// successor) is the last letter.  Discrete region edges become chains of
// three transitions through two auxiliary states; states mapped from region
// nodes are "complete", auxiliary ones are not.
struct PipelineEra {
  era::RAutomaton automaton;
  int delta_letter = 0;
  std::vector<char> complete;     // per state
  std::vector<int> region_node;   // per state; -1 for auxiliary states
};

// Requires every graph edge's transition to reset at most one clock (run
// remove_multiple_resets first).  Resetting a clock whose fraction is zero
// leaves all fractional relations unchanged, so such edges (and delta
// edges) carry all-zero effects; otherwise the three effects redistribute
// the counters around the reset clock.
PipelineEra build_era(const region::RegionGraph& g,
                      const ta::TimedAutomaton& a);

// Composes away the delta transitions (which must carry all-zero effects):
// a visible transition absorbs any chain of delta steps before it, and a
// state becomes accepting when delta steps alone reach an accepting state.
// The result drops the delta letter, which must be the last one.
era::RAutomaton remove_delta(const era::RAutomaton& r, int delta_letter);

// Word homomorphism a -> a^m and its inverse (InputError when the word is
// not made of m-blocks of equal letters).
ta::Word expand_word(const ta::Word& w, int m);
ta::Word contract_word(const ta::Word& w, int m);

// The m = 3 case matching the three-transition chains of build_era.
ta::Word triple(const ta::Word& w);
ta::Word untriple(const ta::Word& w);

}  // namespace tsa::translate

#endif  // TSA_TRANSLATE_HPP
