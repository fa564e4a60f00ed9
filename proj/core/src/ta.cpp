#include "tsa/ta.hpp"

#include <algorithm>

#include "tsa/errors.hpp"

namespace tsa::ta {

long long TimedAutomaton::max_constant() const {
  long long k = 0;
  for (const Transition& t : transitions)
    for (const Atom& atom : t.guard) k = std::max(k, atom.bound);
  return k;
}

bool guard_satisfied(const Guard& g, const ClockValuation& nu) {
  for (const Atom& atom : g) {
    const Rat& v = nu[atom.clock];
    const Rat c(atom.bound);
    bool ok = false;
    switch (atom.cmp) {
      case Cmp::Lt: ok = v < c; break;
      case Cmp::Le: ok = v <= c; break;
      case Cmp::Ge: ok = v >= c; break;
      case Cmp::Gt: ok = v > c; break;
    }
    if (!ok) return false;
  }
  return true;
}

ClockValuation time_step(const ClockValuation& nu, const Rat& delay) {
  if (delay < Rat(0)) throw InputError("negative delay");
  ClockValuation out = nu;
  for (Rat& v : out) v += delay;
  return out;
}

ClockValuation apply_resets(const ClockValuation& nu,
                            const std::vector<int>& resets) {
  ClockValuation out = nu;
  for (int x : resets) out[x] = Rat(0);
  return out;
}

std::vector<std::pair<int, ClockValuation>> discrete_step(
    const TimedAutomaton& a, int loc, const ClockValuation& nu, int letter) {
  std::vector<std::pair<int, ClockValuation>> out;
  for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i) {
    const Transition& t = a.transitions[i];
    if (t.src != loc || t.letter != letter) continue;
    if (!guard_satisfied(t.guard, nu)) continue;
    out.emplace_back(i, apply_resets(nu, t.resets));
  }
  return out;
}

}  // namespace tsa::ta
