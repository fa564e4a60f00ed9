#include <deque>
#include <set>
#include <tuple>
#include <vector>

#include "tsa/errors.hpp"
#include "tsa/ta.hpp"

namespace tsa::ta {

namespace {

// A clock value under sampling step 1/k, stored as the numerator j of j/k.
// Values above the maximal guard constant K are collapsed to a single
// sentinel: guards only compare against constants <= K and values never
// decrease except by reset, so the collapse preserves every future guard
// answer (the relation "equal or both above K" is a bisimulation here).
struct SampledSearch {
  const TimedAutomaton& a;
  long long k;
  long long above;  // sentinel, == K*k + 1

  bool atom_holds(const Atom& atom, long long j) const {
    if (j == above) return atom.cmp == Cmp::Gt || atom.cmp == Cmp::Ge;
    const long long c = atom.bound * k;
    switch (atom.cmp) {
      case Cmp::Lt: return j < c;
      case Cmp::Le: return j <= c;
      case Cmp::Ge: return j >= c;
      case Cmp::Gt: return j > c;
    }
    return false;
  }

  bool guard_holds(const Guard& g, const std::vector<long long>& vals) const {
    for (const Atom& atom : g)
      if (!atom_holds(atom, vals[atom.clock])) return false;
    return true;
  }
};

}  // namespace

bool sampled_member(const TimedAutomaton& a, const Word& word, long long k,
                    const SampledOptions& opt) {
  if (k < 1) throw InputError("sampling denominator must be >= 1");
  for (int letter : word)
    if (letter < 0 || letter >= a.num_letters())
      throw InputError("word letter out of range");

  const long long big_k = a.max_constant();
  SampledSearch search{a, k, big_k * k + 1};

  // State: (location, clamped numerators, letters consumed).
  using State = std::tuple<int, std::vector<long long>, int>;
  std::set<State> seen;
  std::deque<State> queue;

  State start{a.initial, std::vector<long long>(a.num_clocks(), 0), 0};
  seen.insert(start);
  queue.push_back(start);

  while (!queue.empty()) {
    auto [loc, vals, pos] = queue.front();
    queue.pop_front();
    if (pos == static_cast<int>(word.size()) && a.accepting[loc]) return true;

    auto visit_state = [&](int l, std::vector<long long> v, int p) {
      State next{l, std::move(v), p};
      auto [it, inserted] = seen.insert(std::move(next));
      if (inserted) {
        if (static_cast<long long>(seen.size()) > opt.max_states)
          throw ResourceError("sampled membership: state budget exhausted");
        queue.push_back(*it);
      }
    };

    // Delay by one step of 1/k.
    std::vector<long long> delayed = vals;
    for (long long& j : delayed)
      if (j != search.above) j = (j + 1 > big_k * k) ? search.above : j + 1;
    visit_state(loc, std::move(delayed), pos);

    // Read the next letter.
    if (pos < static_cast<int>(word.size())) {
      for (const Transition& t : a.transitions) {
        if (t.src != loc || t.letter != word[pos]) continue;
        if (!search.guard_holds(t.guard, vals)) continue;
        std::vector<long long> reset = vals;
        for (int x : t.resets) reset[x] = 0;
        visit_state(t.dst, std::move(reset), pos + 1);
      }
    }
  }
  return false;
}

}  // namespace tsa::ta
