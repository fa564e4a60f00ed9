#ifndef TSA_ELIMINATE_COPIES_HPP
#define TSA_ELIMINATE_COPIES_HPP

#include <compare>
#include <vector>

#include "tsa/era.hpp"

namespace tsa::era {

inline constexpr int kNullParent = -1;

// Bookkeeping that lets an automaton without copy instructions simulate one
// with them.  Counters are addressed in a fixed "virtual" space; phi routes
// each virtual counter to the physical counter currently holding its value,
// so a copy can be simulated by re-routing instead of moving values.  After
// a copy one of the two equal values is dropped (reset to zero); pp records,
// for each dropped counter, which virtual counter still holds the shared
// value.  Parent chains are acyclic, so rank() is well defined.
struct PointerState {
  std::vector<int> pp;   // per virtual counter: kNullParent or a counter
  std::vector<int> phi;  // virtual -> physical, a permutation

  auto operator<=>(const PointerState&) const = default;

  static PointerState initial(int n);
};

// Length of the parent chain above counter i (0 when pp[i] is Null).
int rank(const std::vector<int>& pp, int i);

// One simulating alternative for an effect: the physical, copy-free effect
// to execute and the pointer state afterwards.  `error` marks the branch
// that must divert to the error sink because the effect keeps a counter
// whose value is held by a counter it destroys.
struct SimBranch {
  Effect effect;
  PointerState next;
  bool error = false;

  auto operator<=>(const SimBranch&) const = default;
};

// All simulating branches of effect `e` from pointer state `ps`: one per
// keep/transfer choice vector over the copy instructions (copy cycles are
// resolved by pure re-routing and add no branches).
std::vector<SimBranch> simulate_effect(const PointerState& ps, const Effect& e);

struct CopyElimination {
  RAutomaton automaton;  // copy-free
  int error_sink = -1;   // state index, or -1 when never needed
  std::vector<int> origin;             // new state -> source state (-1: sink)
  std::vector<PointerState> pointers;  // new state -> pointer state
};

struct CopyEliminationOptions {
  long long max_states = 500'000;
};

// Copy-free simulation of r over states (source state, pointer state), plus
// a non-accepting error sink with self-loops.  Every word r accepts within
// counter bound B is accepted within B here, and every word accepted here
// within B is accepted by r within n*B.
CopyElimination eliminate_copies(const RAutomaton& r,
                                 const CopyEliminationOptions& opt = {});

}  // namespace tsa::era

#endif  // TSA_ELIMINATE_COPIES_HPP
