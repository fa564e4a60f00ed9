#include "tsa/fa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "tsa/errors.hpp"

namespace tsa::fa {

Nfa Nfa::build(int num_symbols, int num_states, int initial,
               std::vector<char> accepting, std::vector<Edge> edges) {
  if (initial < 0 || initial >= num_states)
    throw InputError("nfa: initial state out of range");
  if (static_cast<int>(accepting.size()) != num_states)
    throw InputError("nfa: accepting vector size mismatch");
  for (const Edge& e : edges)
    if (e.src < 0 || e.src >= num_states || e.dst < 0 || e.dst >= num_states ||
        e.sym < 0 || e.sym >= num_symbols)
      throw InputError("nfa: edge out of range");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Nfa n;
  n.num_symbols = num_symbols;
  n.num_states = num_states;
  n.initial = initial;
  n.accepting = std::move(accepting);
  n.adj.resize(num_states);
  for (const Edge& e : edges) n.adj[e.src].emplace_back(e.sym, e.dst);
  n.edges = std::move(edges);
  return n;
}

namespace {

using StateSet = std::vector<int>;  // sorted state indices

StateSet successors(const Nfa& n, const StateSet& from, int sym) {
  std::set<int> out;
  for (int s : from)
    for (auto [edge_sym, dst] : n.adj[s])
      if (edge_sym == sym) out.insert(dst);
  return StateSet(out.begin(), out.end());
}

bool any_accepting(const Nfa& n, const StateSet& set) {
  for (int s : set)
    if (n.accepting[s]) return true;
  return false;
}

}  // namespace

Dfa determinize(const Nfa& n, const Budget& budget) {
  Dfa d;
  d.num_symbols = n.num_symbols;

  std::map<StateSet, int> index;
  std::deque<StateSet> queue;
  auto subset_id = [&](StateSet set) {
    auto [it, inserted] = index.try_emplace(std::move(set), d.num_states);
    if (inserted) {
      if (static_cast<long long>(index.size()) > budget.max_states)
        throw ResourceError("determinize: subset budget exhausted");
      ++d.num_states;
      d.accepting.push_back(any_accepting(n, it->first));
      d.next.emplace_back(n.num_symbols, -1);
      queue.push_back(it->first);
    }
    return it->second;
  };

  d.initial = subset_id({n.initial});
  while (!queue.empty()) {
    StateSet set = queue.front();
    queue.pop_front();
    const int id = index.at(set);
    for (int sym = 0; sym < n.num_symbols; ++sym)
      d.next[id][sym] = subset_id(successors(n, set, sym));
  }
  return d;  // the empty subset, when reached, is the rejecting sink
}

Dfa complement(const Dfa& d) {
  Dfa out = d;
  for (char& acc : out.accepting) acc = !acc;
  return out;
}

bool accepts(const Nfa& n, const std::vector<int>& word) {
  StateSet cur{n.initial};
  for (int sym : word) {
    if (sym < 0 || sym >= n.num_symbols)
      throw InputError("word symbol out of range");
    cur = successors(n, cur, sym);
    if (cur.empty()) return false;
  }
  return any_accepting(n, cur);
}

bool accepts(const Dfa& d, const std::vector<int>& word) {
  int cur = d.initial;
  for (int sym : word) {
    if (sym < 0 || sym >= d.num_symbols)
      throw InputError("word symbol out of range");
    cur = d.next[cur][sym];
  }
  return d.accepting[cur];
}

EquivResult equivalent(const Nfa& a, const Nfa& b, const Budget& budget) {
  if (a.num_symbols != b.num_symbols)
    throw InputError("equivalence needs a common alphabet");

  // Lazy product of the two subset constructions.  BFS by length with
  // symbols in increasing order, so the first difference found is a
  // shortest counterexample, lexicographically least among those.
  struct Item {
    StateSet left, right;
  };
  std::map<std::pair<StateSet, StateSet>, int> seen;  // -> predecessor info
  std::vector<std::pair<int, int>> back;  // (previous item, symbol)
  std::vector<Item> items;
  std::deque<int> queue;

  auto push = [&](StateSet left, StateSet right, int prev, int sym) {
    auto key = std::make_pair(left, right);
    auto [it, inserted] = seen.try_emplace(std::move(key),
                                           static_cast<int>(items.size()));
    if (!inserted) return;
    if (static_cast<long long>(items.size()) + 1 > budget.max_states)
      throw ResourceError("equivalence: product budget exhausted");
    items.push_back({std::move(left), std::move(right)});
    back.emplace_back(prev, sym);
    queue.push_back(it->second);
  };

  push({a.initial}, {b.initial}, -1, -1);
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const Item item = items[id];
    if (any_accepting(a, item.left) != any_accepting(b, item.right)) {
      std::vector<int> word;
      for (int cur = id; back[cur].second >= 0; cur = back[cur].first)
        word.push_back(back[cur].second);
      std::reverse(word.begin(), word.end());
      return {false, std::move(word)};
    }
    for (int sym = 0; sym < a.num_symbols; ++sym)
      push(successors(a, item.left, sym), successors(b, item.right, sym), id,
           sym);
  }
  return {true, {}};
}

Nfa remove_silent(const Nfa& n) {
  if (n.num_symbols < 1) throw InputError("remove_silent: no symbols");
  const int silent = n.num_symbols - 1;

  // Forward closure under silent steps, per state.
  std::vector<StateSet> closure(n.num_states);
  for (int s = 0; s < n.num_states; ++s) {
    std::set<int> reach{s};
    std::deque<int> work{s};
    while (!work.empty()) {
      int cur = work.front();
      work.pop_front();
      for (auto [sym, dst] : n.adj[cur])
        if (sym == silent && reach.insert(dst).second) work.push_back(dst);
    }
    closure[s].assign(reach.begin(), reach.end());
  }

  std::vector<char> accepting(n.num_states, 0);
  for (int s = 0; s < n.num_states; ++s)
    accepting[s] = any_accepting(n, closure[s]);

  std::vector<Nfa::Edge> edges;
  for (int s = 0; s < n.num_states; ++s)
    for (int via : closure[s])
      for (auto [sym, dst] : n.adj[via])
        if (sym != silent) edges.push_back({s, sym, dst});

  return Nfa::build(n.num_symbols - 1, n.num_states, n.initial,
                    std::move(accepting), std::move(edges));
}

std::vector<std::vector<int>> enumerate_accepted(const Nfa& n, int max_len) {
  std::vector<std::vector<int>> out;
  StateSet start{n.initial};

  // Depth-first in symbol order within each length gives lexicographic
  // order; collecting per length keeps shortest first.
  struct Level {
    std::vector<std::pair<std::vector<int>, StateSet>> items;
  };
  Level cur;
  cur.items.emplace_back(std::vector<int>{}, start);
  for (int len = 0; len <= max_len; ++len) {
    Level next;
    for (auto& [w, set] : cur.items) {
      if (any_accepting(n, set)) out.push_back(w);
      if (len == max_len) continue;
      for (int sym = 0; sym < n.num_symbols; ++sym) {
        StateSet succ = successors(n, set, sym);
        if (succ.empty()) continue;
        std::vector<int> next_word = w;
        next_word.push_back(sym);
        next.items.emplace_back(std::move(next_word), std::move(succ));
      }
    }
    cur = std::move(next);
  }
  return out;
}

}  // namespace tsa::fa
