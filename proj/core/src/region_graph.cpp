#include <deque>
#include <map>
#include <sstream>
#include <utility>

#include "tsa/errors.hpp"
#include "tsa/fa.hpp"
#include "tsa/region.hpp"

namespace tsa::region {

RegionGraph build_region_graph(const ta::TimedAutomaton& a,
                               const RegionGraphOptions& opt) {
  RegionGraph g;
  g.k = a.max_constant();
  g.num_letters = a.num_letters();

  std::map<std::pair<int, Region>, int> index;
  std::deque<int> queue;
  auto node_id = [&](int loc, Region d) {
    auto [it, inserted] = index.try_emplace({loc, std::move(d)}, g.num_nodes());
    if (inserted) {
      if (static_cast<long long>(index.size()) > opt.max_nodes)
        throw ResourceError("region graph: node budget exhausted");
      g.nodes.push_back({it->first.first, it->first.second});
      g.accepting.push_back(a.accepting[loc]);
      g.out.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };

  g.initial = node_id(
      a.initial, region_of(ta::ClockValuation(a.num_clocks(), Rat(0)), g.k));

  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    const int loc = g.nodes[n].loc;
    const Region d = g.nodes[n].region;  // copy: g.nodes may reallocate

    auto add_edge = [&](int letter, int ta_transition, int dst) {
      g.out[n].push_back(static_cast<int>(g.edges.size()));
      g.edges.push_back({n, letter, ta_transition, dst});
    };

    add_edge(RegionGraph::kDelta, -1, node_id(loc, immediate_time_successor(d)));
    for (int ti = 0; ti < static_cast<int>(a.transitions.size()); ++ti) {
      const ta::Transition& t = a.transitions[ti];
      if (t.src != loc || !region_satisfies(d, t.guard)) continue;
      add_edge(t.letter, ti, node_id(t.dst, region_reset(d, t.resets)));
    }
  }
  return g;
}

std::string to_dot(const RegionGraph& g, const ta::TimedAutomaton& a) {
  std::ostringstream out;
  out << "digraph regions {\n  rankdir=LR;\n  node [shape=box];\n";
  out << "  init [shape=point];\n";
  for (int n = 0; n < g.num_nodes(); ++n) {
    out << "  n" << n << " [label=\"" << a.locations[g.nodes[n].loc] << "|"
        << region_string(g.nodes[n].region, a.clocks) << "\"";
    if (g.accepting[n]) out << ", peripheries=2";
    out << "];\n";
  }
  out << "  init -> n" << g.initial << ";\n";
  for (const RegionGraph::Edge& e : g.edges) {
    out << "  n" << e.src << " -> n" << e.dst << " [label=\""
        << (e.letter == RegionGraph::kDelta ? std::string("delta")
                                            : a.alphabet[e.letter]);
    out << "\"";
    if (e.letter == RegionGraph::kDelta) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tsa::region

namespace tsa::ta {

bool dense_member_via_regions(const TimedAutomaton& a, const Word& word) {
  for (int letter : word)
    if (letter < 0 || letter >= a.num_letters())
      throw InputError("word letter out of range");
  const region::RegionGraph g = region::build_region_graph(a);

  // Letters keep their indices; the time-successor edge becomes a silent
  // symbol in the last position and is composed away.
  std::vector<fa::Nfa::Edge> edges;
  edges.reserve(g.edges.size());
  for (const region::RegionGraph::Edge& e : g.edges)
    edges.push_back(
        {e.src,
         e.letter == region::RegionGraph::kDelta ? g.num_letters : e.letter,
         e.dst});
  fa::Nfa n = fa::Nfa::build(g.num_letters + 1, g.num_nodes(), g.initial,
                             g.accepting, std::move(edges));
  return fa::accepts(fa::remove_silent(n), word);
}

}  // namespace tsa::ta
