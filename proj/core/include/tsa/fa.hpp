#ifndef TSA_FA_HPP
#define TSA_FA_HPP

#include <vector>

namespace tsa::fa {

// Nondeterministic finite automaton over symbols 0..num_symbols-1 with a
// single initial state.  Edges are kept sorted and deduplicated; `adj` is
// the per-state view of the same edges.
struct Nfa {
  struct Edge {
    int src = 0;
    int sym = 0;
    int dst = 0;
    auto operator<=>(const Edge&) const = default;
  };

  int num_symbols = 0;
  int num_states = 0;
  int initial = 0;
  std::vector<char> accepting;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // state -> (sym, dst)

  static Nfa build(int num_symbols, int num_states, int initial,
                   std::vector<char> accepting, std::vector<Edge> edges);
};

// Complete deterministic automaton: next[state][symbol] is always valid.
struct Dfa {
  int num_symbols = 0;
  int num_states = 0;
  int initial = 0;
  std::vector<char> accepting;
  std::vector<std::vector<int>> next;
};

struct Budget {
  long long max_states = 2'000'000;
};

// Subset construction over reachable subsets (the empty subset acts as the
// sink, so the result is complete).  Throws ResourceError over budget.
Dfa determinize(const Nfa& n, const Budget& budget = {});

// Same automaton with acceptance flipped; input must be complete, which
// every Dfa built here is.
Dfa complement(const Dfa& d);

bool accepts(const Nfa& n, const std::vector<int>& word);
bool accepts(const Dfa& d, const std::vector<int>& word);

struct EquivResult {
  bool equivalent = false;
  // When not equivalent: a shortest word accepted by exactly one side,
  // lexicographically least among the shortest.
  std::vector<int> counterexample;
};

// Language equivalence via a lazy product of the two subset constructions;
// BFS in symbol order makes the counterexample canonical.
EquivResult equivalent(const Nfa& a, const Nfa& b, const Budget& budget = {});

// Removes the silent symbol (by convention the last one): composes silent
// closures into the visible edges and closes acceptance.  The result has
// num_symbols - 1 symbols.
Nfa remove_silent(const Nfa& n);

// All accepted words of length <= max_len, shortest first, lexicographic
// within a length.
std::vector<std::vector<int>> enumerate_accepted(const Nfa& n, int max_len);

}  // namespace tsa::fa

#endif  // TSA_FA_HPP
