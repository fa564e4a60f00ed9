#include "tsa/era.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tsa/errors.hpp"

namespace tsa::era {

// Effects --------------------------------------------------------------------

Instruction Instruction::reset(std::vector<int> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return {Op::Reset, std::move(set), -1};
}

void RAutomaton::index() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()),
                    transitions.end());
  out.assign(states.size(), {});
  for (int i = 0; i < static_cast<int>(transitions.size()); ++i)
    out[transitions[i].src].push_back(i);
}

namespace {

void check_effect(const Effect& e, int n) {
  if (static_cast<int>(e.size()) != n)
    throw InputError("effect arity mismatch");
  for (int i = 0; i < n; ++i) {
    const Instruction& ins = e[i];
    if (ins.op == Op::Copy) {
      if (ins.src < 0 || ins.src >= n) throw InputError("copy source out of range");
      if (ins.src == i) throw InputError("self-copy not allowed");
    }
    if (ins.op == Op::Reset)
      for (int j : ins.reset_set)
        if (j < 0 || j >= n) throw InputError("reset set entry out of range");
  }
}

}  // namespace

CounterVec apply_effect(const CounterVec& c, const Effect& e) {
  check_effect(e, static_cast<int>(c.size()));
  // Non-copy updates first; copies then read the updated sources, so one
  // round of copying suffices.
  CounterVec base = c;
  for (std::size_t i = 0; i < e.size(); ++i) {
    switch (e[i].op) {
      case Op::Nop: break;
      case Op::Inc: ++base[i]; break;
      case Op::Reset: base[i] = 0; break;
      case Op::Copy: break;
    }
  }
  CounterVec out = base;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i].op == Op::Copy) out[i] = base[e[i].src];
  return out;
}

// Preorder -------------------------------------------------------------------

Preorder Preorder::identity(int n) {
  Preorder p;
  p.n = n;
  p.mat.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) p.set(i, i);
  return p;
}

void Preorder::close() {
  for (int i = 0; i < n; ++i) set(i, i);
  for (int via = 0; via < n; ++via)
    for (int i = 0; i < n; ++i)
      if (le(i, via))
        for (int j = 0; j < n; ++j)
          if (le(via, j)) set(i, j);
}

Preorder update_preorder(const Preorder& pre, const Effect& e,
                         const CounterVec& n_prime) {
  const int n = pre.n;
  check_effect(e, n);
  if (static_cast<int>(n_prime.size()) != n)
    throw InputError("counter vector arity mismatch");

  auto plain = [&](int i) { return e[i].op == Op::Nop || e[i].op == Op::Inc; };

  Preorder out = Preorder::identity(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // Keep/increment pairs survive, unless the increment on the lower
      // side of an equivalence would overtake the other counter.
      if (pre.le(i, j) && plain(i) && plain(j) &&
          !(pre.le(j, i) && e[i].op == Op::Inc && e[j].op == Op::Nop))
        out.set(i, j);
      // A reset counter drops below the positive counters in its set.
      if (e[i].op == Op::Reset && n_prime[j] > 0 &&
          std::find(e[i].reset_set.begin(), e[i].reset_set.end(), j) !=
              e[i].reset_set.end())
        out.set(i, j);
      // A copy leaves source and target equal.
      if ((e[i].op == Op::Copy && e[i].src == j) ||
          (e[j].op == Op::Copy && e[j].src == i))
        out.set(i, j);
    }
  }
  out.close();
  return out;
}

// Max fixpoint ---------------------------------------------------------------

FixpointResult max_fixpoint(const CounterVec& p, const CounterVec& m,
                            const Preorder& pre, bool restricted) {
  const int n = pre.n;
  if (static_cast<int>(p.size()) != n || static_cast<int>(m.size()) != n)
    throw InputError("counter vector arity mismatch");

  auto no_common_lower_bound = [&](int k, int l) {
    for (int i = 0; i < n; ++i)
      if (pre.le(i, k) && pre.le(i, l)) return false;
    return true;
  };

  FixpointResult res{p, m, 0};
  for (int sweep = 0; sweep <= n + 1; ++sweep) {
    bool changed = false;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (!pre.lt(i, j)) continue;
        if (res.m[i] + 1 > res.m[j]) {
          res.m[j] = res.m[i] + 1;
          changed = true;
        }
        for (int l = i; l < n; ++l) {
          if (!pre.lt(l, j)) continue;
          // Strictly dominated pairs force the sum; l == i doubles through
          // a lone predecessor, which keeps p ordered along the preorder.
          // The restricted rule needs the pair independent (no common lower
          // bound, which also rules out l == i).
          if (restricted && !no_common_lower_bound(i, l)) continue;
          if (res.p[i] + res.p[l] > res.p[j]) {
            res.p[j] = res.p[i] + res.p[l];
            changed = true;
          }
        }
      }
    }
    if (!changed) return res;
    ++res.sweeps;
  }
  throw std::logic_error("max fixpoint failed to stabilize");
}

// Stepping -------------------------------------------------------------------

Configuration initial_configuration(const RAutomaton& r) {
  Configuration c;
  c.state = r.initial;
  c.p.assign(r.num_counters, 0);
  c.m.assign(r.num_counters, 0);
  c.n.assign(r.num_counters, 0);
  c.pre = Preorder::identity(r.num_counters);
  return c;
}

std::vector<Configuration> era_step(const RAutomaton& r,
                                    const Configuration& conf, int letter,
                                    bool restricted, bool apply_max) {
  std::vector<Configuration> out;
  for (int ti : r.out[conf.state]) {
    const EraTransition& t = r.transitions[ti];
    if (t.letter != letter) continue;
    Configuration next;
    next.state = t.dst;
    next.p = apply_effect(conf.p, t.effect);
    next.m = apply_effect(conf.m, t.effect);
    next.n = apply_effect(conf.n, t.effect);
    next.pre = update_preorder(conf.pre, t.effect, next.n);
    if (apply_max) {
      FixpointResult fix = max_fixpoint(next.p, next.m, next.pre, restricted);
      next.p = std::move(fix.p);
      next.m = std::move(fix.m);
    }
    out.push_back(std::move(next));
  }
  return out;
}

// Languages ------------------------------------------------------------------

fa::Nfa language_nfa(const RAutomaton& r) {
  std::vector<fa::Nfa::Edge> edges;
  edges.reserve(r.transitions.size());
  for (const EraTransition& t : r.transitions)
    edges.push_back({t.src, t.letter, t.dst});
  return fa::Nfa::build(r.num_letters(), r.num_states(), r.initial,
                        r.accepting, std::move(edges));
}

fa::Nfa b_language_nfa(const RAutomaton& r, long long b,
                       const fa::Budget& budget) {
  if (b < 0) throw InputError("counter bound must be >= 0");

  // Reachable (state, N̄) pairs with all components <= b; transitions that
  // would overflow are dropped.  Only N̄ matters: the other configuration
  // components never feed back into it.
  using State = std::pair<int, CounterVec>;
  std::map<State, int> index;
  std::deque<State> queue;
  std::vector<char> accepting;
  std::vector<fa::Nfa::Edge> edges;

  auto state_id = [&](State s) -> int {
    auto [it, inserted] = index.try_emplace(std::move(s),
                                            static_cast<int>(index.size()));
    if (inserted) {
      if (static_cast<long long>(index.size()) > budget.max_states)
        throw ResourceError("bounded language: state budget exhausted");
      accepting.push_back(r.accepting[it->first.first]);
      queue.push_back(it->first);
    }
    return it->second;
  };

  const int initial =
      state_id({r.initial, CounterVec(r.num_counters, 0)});
  while (!queue.empty()) {
    State cur = queue.front();
    queue.pop_front();
    const int id = index.at(cur);
    for (int ti : r.out[cur.first]) {
      const EraTransition& t = r.transitions[ti];
      CounterVec next = apply_effect(cur.second, t.effect);
      if (std::any_of(next.begin(), next.end(),
                      [&](long long v) { return v > b; }))
        continue;
      edges.push_back({id, t.letter, state_id({t.dst, std::move(next)})});
    }
  }
  return fa::Nfa::build(r.num_letters(), static_cast<int>(index.size()),
                        initial, std::move(accepting), std::move(edges));
}

std::optional<long long> min_bound(const RAutomaton& r,
                                   const std::vector<int>& word) {
  for (int letter : word)
    if (letter < 0 || letter >= r.num_letters())
      throw InputError("word letter out of range");

  // Pareto antichain per state: keep (N̄, running max) pairs not dominated
  // componentwise; smaller values can only help later.
  struct Entry {
    CounterVec n;
    long long peak = 0;
  };
  auto dominates = [](const Entry& a, const Entry& b) {
    if (a.peak > b.peak) return false;
    for (std::size_t i = 0; i < a.n.size(); ++i)
      if (a.n[i] > b.n[i]) return false;
    return true;
  };
  using Front = std::map<int, std::vector<Entry>>;  // state -> antichain

  auto insert = [&](Front& front, int state, Entry entry) {
    std::vector<Entry>& list = front[state];
    for (const Entry& have : list)
      if (dominates(have, entry)) return;
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](const Entry& have) {
                                return dominates(entry, have);
                              }),
               list.end());
    list.push_back(std::move(entry));
  };

  Front cur;
  insert(cur, r.initial, {CounterVec(r.num_counters, 0), 0});
  for (int letter : word) {
    Front next;
    for (const auto& [state, entries] : cur) {
      for (int ti : r.out[state]) {
        const EraTransition& t = r.transitions[ti];
        if (t.letter != letter) continue;
        for (const Entry& entry : entries) {
          Entry succ{apply_effect(entry.n, t.effect), entry.peak};
          for (long long v : succ.n) succ.peak = std::max(succ.peak, v);
          insert(next, t.dst, std::move(succ));
        }
      }
    }
    cur = std::move(next);
    if (cur.empty()) return std::nullopt;
  }

  std::optional<long long> best;
  for (const auto& [state, entries] : cur) {
    if (!r.accepting[state]) continue;
    for (const Entry& entry : entries)
      if (!best || entry.peak < *best) best = entry.peak;
  }
  return best;
}

}  // namespace tsa::era
