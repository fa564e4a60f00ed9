#ifndef TSA_ERA_HPP
#define TSA_ERA_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "tsa/fa.hpp"

namespace tsa::era {

// Counter instruction of an effect: keep, increment, reset (carrying the
// set of counters the reset is measured against), or copy from another
// counter.  Copying from itself is not allowed.
enum class Op { Nop, Inc, Reset, Copy };

struct Instruction {
  Op op = Op::Nop;
  std::vector<int> reset_set;  // Reset only; sorted counter indices
  int src = -1;                // Copy only

  auto operator<=>(const Instruction&) const = default;

  static Instruction nop() { return {}; }
  static Instruction inc() { return {Op::Inc, {}, -1}; }
  static Instruction reset(std::vector<int> set = {});
  static Instruction copy(int src) { return {Op::Copy, {}, src}; }
};

// One instruction per counter.
using Effect = std::vector<Instruction>;

struct EraTransition {
  int src = 0;
  int letter = 0;
  Effect effect;
  int dst = 0;

  auto operator<=>(const EraTransition&) const = default;
};

// Finite automaton extended with counters updated by effects.  Counters
// never guard transitions; they only measure runs.
struct RAutomaton {
  int num_counters = 0;
  std::vector<std::string> states;
  std::vector<std::string> letters;
  int initial = 0;
  std::vector<char> accepting;  // per state
  std::vector<EraTransition> transitions;  // sorted
  std::vector<std::vector<int>> out;  // state -> transition indices

  int num_states() const { return static_cast<int>(states.size()); }
  int num_letters() const { return static_cast<int>(letters.size()); }

  // Recomputes `out` and sorts transitions; call after direct edits.
  void index();
};

using CounterVec = std::vector<long long>;

// Counter update: Nop keeps, Inc adds one, Reset zeroes.  Copies read their
// source counter after its own non-copy update, so chained copies are not
// needed and self-copies are rejected.
CounterVec apply_effect(const CounterVec& c, const Effect& e);

// Reflexive-transitive relation over counters, stored as an n x n matrix.
struct Preorder {
  int n = 0;
  std::vector<char> mat;  // row-major; mat[i*n+j] != 0 means i <= j

  static Preorder identity(int n);
  bool le(int i, int j) const { return mat[static_cast<size_t>(i) * n + j]; }
  bool lt(int i, int j) const { return le(i, j) && !le(j, i); }
  bool equivalent(int i, int j) const { return le(i, j) && le(j, i); }
  void set(int i, int j) { mat[static_cast<size_t>(i) * n + j] = 1; }
  void close();  // reflexive-transitive closure

  auto operator<=>(const Preorder&) const = default;
};

// The preorder after firing an effect, given the counter values produced by
// that effect (n_prime).  Relations survive between counters kept or
// incremented, unless an increment on the lower side overtakes an
// equivalence; a reset drops below every positive counter in its reset set;
// a copy makes source and target equivalent.  The result is closed.
Preorder update_preorder(const Preorder& pre, const Effect& e,
                         const CounterVec& n_prime);

struct FixpointResult {
  CounterVec p;
  CounterVec m;
  int sweeps = 0;  // sweeps that changed something; at most n
};

// Greatest values forced by the preorder: a strict predecessor pushes
// m[j] to m[i]+1; two strict predecessors push p[j] to p[k]+p[l].  The
// restricted variant only uses predecessor pairs with no common lower
// bound (ruling out k == l and comparable pairs); the unrestricted one
// allows any pair, including k == l.
FixpointResult max_fixpoint(const CounterVec& p, const CounterVec& m,
                            const Preorder& pre, bool restricted);

// A run state: P̄ bounds from above, N̄ from below, M̄ in between
// (N <= M <= P pointwise along every run).
struct Configuration {
  int state = 0;
  CounterVec p, m, n;
  Preorder pre;

  auto operator<=>(const Configuration&) const = default;
};

Configuration initial_configuration(const RAutomaton& r);

// All successor configurations of `conf` on `letter`.  apply_max controls
// whether the max fixpoint runs after the preorder update (callers that
// only complete configurations at designated states skip it in between).
std::vector<Configuration> era_step(const RAutomaton& r,
                                    const Configuration& conf, int letter,
                                    bool restricted, bool apply_max = true);

// The underlying finite automaton, counters dropped.
fa::Nfa language_nfa(const RAutomaton& r);

// Finite automaton of the B-semantics: states are reachable (state, N̄)
// pairs with every component <= b; transitions that would exceed b are
// dropped.  M̄, P̄ and the preorder never influence N̄, so they are not
// part of the state.
fa::Nfa b_language_nfa(const RAutomaton& r, long long b,
                       const fa::Budget& budget = {});

// Least B such that some accepting run over `word` keeps all N̄ components
// <= B; nullopt when no accepting run exists.  Pareto antichain DP.
std::optional<long long> min_bound(const RAutomaton& r,
                                   const std::vector<int>& word);

// Text format ---------------------------------------------------------------
//
//   counters 2
//   initial s0
//   accepting s1 s2
//   trans s0 -> s1 on a eff 1,0
//   trans s1 -> s2 on b eff r{},*1
//   trans s2 -> s2 on a eff 0,r{1}
//
// Effects are comma-separated instructions: 0, 1, r{...} (counter indices,
// 1-based, comma-separated) or *j (copy from counter j, 1-based).

RAutomaton parse_era(const std::string& text);
std::string dump_era(const RAutomaton& r);

}  // namespace tsa::era

#endif  // TSA_ERA_HPP
