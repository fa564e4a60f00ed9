#include "tsa/translate.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "tsa/errors.hpp"

namespace tsa::translate {

// Counter naming -------------------------------------------------------------

int num_counters(int num_clocks) { return num_clocks * (num_clocks - 1); }

int counter_index(int num_clocks, int x, int y) {
  if (x == y || x < 0 || y < 0 || x >= num_clocks || y >= num_clocks)
    throw InputError("counter needs two distinct clocks");
  return x * (num_clocks - 1) + (y < x ? y : y - 1);
}

std::pair<int, int> counter_clocks(int num_clocks, int index) {
  if (index < 0 || index >= num_counters(num_clocks))
    throw InputError("counter index out of range");
  const int x = index / (num_clocks - 1);
  const int rest = index % (num_clocks - 1);
  return {x, rest < x ? rest : rest + 1};
}

std::string counter_name(const std::vector<std::string>& clocks, int index) {
  auto [x, y] = counter_clocks(static_cast<int>(clocks.size()), index);
  return "C" + clocks[x] + clocks[y];
}

// Reset serialization --------------------------------------------------------

ta::TimedAutomaton remove_multiple_resets(const ta::TimedAutomaton& a) {
  const int n = a.num_clocks();
  if (n <= 1) return a;

  ta::TimedAutomaton out;
  out.clocks = a.clocks;
  out.alphabet = a.alphabet;
  out.locations = a.locations;
  out.accepting = a.accepting;
  out.initial = a.initial;

  std::set<std::string> names(a.locations.begin(), a.locations.end());
  auto fresh = [&](std::string base) {
    while (names.count(base)) base += "_";
    names.insert(base);
    return base;
  };

  for (int ti = 0; ti < static_cast<int>(a.transitions.size()); ++ti) {
    const ta::Transition& t = a.transitions[ti];
    // Chain of n same-letter transitions through n-1 fresh locations.
    std::vector<int> chain{t.src};
    for (int k = 1; k < n; ++k) {
      out.locations.push_back(
          fresh("_mr" + std::to_string(ti) + "_" + std::to_string(k)));
      out.accepting.push_back(0);
      chain.push_back(out.num_locations() - 1);
    }
    chain.push_back(t.dst);

    for (int k = 0; k < n; ++k) {
      ta::Transition step;
      step.src = chain[k];
      step.dst = chain[k + 1];
      step.letter = t.letter;
      if (t.resets.empty()) {
        step.guard = t.guard;  // no anchor clock; the guard rides along
      } else if (k == 0) {
        step.guard = t.guard;
        step.resets = {t.resets[0]};
      } else {
        // Anchored at the first reset clock: no time may pass mid-chain.
        const int anchor = t.resets[0];
        step.guard = {{anchor, ta::Cmp::Le, 0}, {anchor, ta::Cmp::Ge, 0}};
        if (k < static_cast<int>(t.resets.size())) step.resets = {t.resets[k]};
      }
      std::sort(step.guard.begin(), step.guard.end());
      out.transitions.push_back(std::move(step));
    }
  }
  std::sort(out.transitions.begin(), out.transitions.end());
  return out;
}

// Region graph -> counter automaton ------------------------------------------

namespace {

using region::Region;

// Smallest-index clock other than x in block b of d, if any.
std::optional<int> clock_in_block(const Region& d, int b, int x) {
  for (int c : d.blocks[b])
    if (c != x) return c;
  return std::nullopt;
}

std::optional<int> min_fraction_clock(const Region& d, int x) {
  for (int b = 0; b < static_cast<int>(d.blocks.size()); ++b)
    if (auto c = clock_in_block(d, b, x)) return c;
  return std::nullopt;
}

std::optional<int> max_fraction_clock(const Region& d, int x) {
  for (int b = static_cast<int>(d.blocks.size()) - 1; b >= 0; --b)
    if (auto c = clock_in_block(d, b, x)) return c;
  return std::nullopt;
}

std::optional<int> min_strictly_above(const Region& d, int x) {
  for (int b = d.block_of(x) + 1; b < static_cast<int>(d.blocks.size()); ++b)
    if (auto c = clock_in_block(d, b, x)) return c;
  return std::nullopt;
}

std::optional<int> max_strictly_below(const Region& d, int x) {
  for (int b = d.block_of(x) - 1; b >= 0; --b)
    if (auto c = clock_in_block(d, b, x)) return c;
  return std::nullopt;
}

// The three effects of one discrete edge whose transition resets clock x
// with a nonzero fraction in the source region.
struct EdgeEffects {
  era::Effect e1, e2, e3;
};

EdgeEffects reset_effects(const ta::TimedAutomaton& a, const Region& src,
                          const Region& dst, int x) {
  const int n = a.num_clocks();
  const int nc = num_counters(n);
  EdgeEffects eff{era::Effect(nc, era::Instruction::nop()),
                  era::Effect(nc, era::Instruction::nop()),
                  era::Effect(nc, era::Instruction::nop())};
  auto c = [&](int u, int v) { return counter_index(n, u, v); };
  auto others = [&](int skip1, int skip2) {
    std::vector<int> out;
    for (int u = 0; u < n; ++u)
      if (u != skip1 && u != skip2) out.push_back(u);
    return out;
  };

  // A clock landing in the zero block of the target (other than x itself)
  // serves as a fixed anchor: every counter around x restarts from it.
  std::optional<int> zero_anchor;
  for (int u = 0; u < n; ++u)
    if (u != x && region_zero(dst, u)) { zero_anchor = u; break; }

  const bool none_below = !max_strictly_below(src, x).has_value();
  const bool none_above = !min_strictly_above(src, x).has_value();

  if (zero_anchor) {
    const int anchor = *zero_anchor;
    eff.e1[c(anchor, x)] = era::Instruction::reset();
    eff.e1[c(x, anchor)] = era::Instruction::reset();
    for (int u : others(anchor, x)) {
      eff.e1[c(u, x)] = era::Instruction::copy(c(u, anchor));
      eff.e1[c(x, u)] = era::Instruction::copy(c(anchor, u));
    }
  } else if (none_below) {
    // x leaves from the bottom of the fractional order.
    const std::optional<int> above = min_strictly_above(src, x);
    const int top = *max_fraction_clock(src, x);
    for (int u : others(x, x)) eff.e1[c(x, u)] = era::Instruction::inc();
    for (int u : others(top, x)) {
      eff.e1[c(u, x)] = era::Instruction::copy(c(u, top));
      eff.e2[c(u, x)] = era::Instruction::inc();
    }
    std::vector<int> reset_with;
    if (above && *above != top) reset_with.push_back(c(top, *above));
    for (int u : others(top, x)) reset_with.push_back(c(u, x));
    eff.e2[c(top, x)] = era::Instruction::reset(std::move(reset_with));
    eff.e3[c(top, x)] = era::Instruction::inc();
  } else if (none_above) {
    // x leaves from the top of the fractional order.
    const std::optional<int> below = max_strictly_below(src, x);
    const int bottom = *min_fraction_clock(src, x);
    for (int u : others(x, x)) eff.e1[c(u, x)] = era::Instruction::inc();
    for (int u : others(bottom, x)) {
      eff.e1[c(x, u)] = era::Instruction::copy(c(bottom, u));
      eff.e2[c(x, u)] = era::Instruction::inc();
    }
    std::vector<int> reset_with;
    if (below && *below != bottom) reset_with.push_back(c(*below, bottom));
    for (int u : others(bottom, x)) reset_with.push_back(c(x, u));
    eff.e2[c(x, bottom)] = era::Instruction::reset(std::move(reset_with));
    eff.e3[c(x, bottom)] = era::Instruction::inc();
  } else {
    // x leaves from the middle: both neighbors exist.
    const int bottom = *min_fraction_clock(src, x);
    const int top = *max_fraction_clock(src, x);
    for (int u : others(bottom, x))
      eff.e1[c(x, u)] = era::Instruction::copy(c(bottom, u));
    for (int u : others(top, x))
      eff.e1[c(u, x)] = era::Instruction::copy(c(u, top));
    for (int u : others(bottom, x)) eff.e2[c(x, u)] = era::Instruction::inc();
    for (int u : others(top, x)) eff.e2[c(u, x)] = era::Instruction::inc();

    std::vector<int> reset_xa;
    if (top != bottom) reset_xa.push_back(c(top, bottom));
    for (int u : others(bottom, x)) reset_xa.push_back(c(x, u));
    eff.e2[c(x, bottom)] = era::Instruction::reset(std::move(reset_xa));
    std::vector<int> reset_dx;
    if (top != bottom) reset_dx.push_back(c(top, bottom));
    for (int u : others(top, x)) reset_dx.push_back(c(u, x));
    eff.e2[c(top, x)] = era::Instruction::reset(std::move(reset_dx));
    eff.e3[c(x, bottom)] = era::Instruction::inc();
    eff.e3[c(top, x)] = era::Instruction::inc();
  }
  return eff;
}

}  // namespace

PipelineEra build_era(const region::RegionGraph& g,
                      const ta::TimedAutomaton& a) {
  PipelineEra pe;
  era::RAutomaton& r = pe.automaton;
  r.num_counters = num_counters(a.num_clocks());
  r.letters = a.alphabet;
  r.letters.push_back("delta");
  pe.delta_letter = r.num_letters() - 1;

  for (int node = 0; node < g.num_nodes(); ++node) {
    r.states.push_back("n" + std::to_string(node));
    r.accepting.push_back(g.accepting[node]);
    pe.complete.push_back(1);
    pe.region_node.push_back(node);
  }
  r.initial = g.initial;

  const era::Effect zero(r.num_counters, era::Instruction::nop());
  for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
    const region::RegionGraph::Edge& e = g.edges[ei];
    if (e.letter == region::RegionGraph::kDelta) {
      r.transitions.push_back({e.src, pe.delta_letter, zero, e.dst});
      continue;
    }
    const ta::Transition& t = a.transitions[e.ta_transition];
    if (t.resets.size() > 1)
      throw InputError("build_era needs transitions with at most one reset");

    EdgeEffects eff{zero, zero, zero};
    if (!t.resets.empty() &&
        !region_zero(g.nodes[e.src].region, t.resets[0])) {
      eff = reset_effects(a, g.nodes[e.src].region, g.nodes[e.dst].region,
                          t.resets[0]);
    }

    const int aux1 = r.num_states();
    r.states.push_back("n" + std::to_string(e.src) + "_e" +
                       std::to_string(ei) + "_1");
    const int aux2 = r.num_states();
    r.states.push_back("n" + std::to_string(e.src) + "_e" +
                       std::to_string(ei) + "_2");
    for (int k = 0; k < 2; ++k) {
      r.accepting.push_back(0);
      pe.complete.push_back(0);
      pe.region_node.push_back(-1);
    }
    r.transitions.push_back({e.src, e.letter, eff.e1, aux1});
    r.transitions.push_back({aux1, e.letter, eff.e2, aux2});
    r.transitions.push_back({aux2, e.letter, eff.e3, e.dst});
  }
  r.index();
  return pe;
}

// Delta removal --------------------------------------------------------------

era::RAutomaton remove_delta(const era::RAutomaton& r, int delta_letter) {
  const era::Effect zero(r.num_counters, era::Instruction::nop());
  for (const era::EraTransition& t : r.transitions)
    if (t.letter == delta_letter && t.effect != zero)
      throw InputError("delta transition with a non-zero effect");

  // Forward closure under delta steps.
  std::vector<std::vector<int>> closure(r.num_states());
  for (int s = 0; s < r.num_states(); ++s) {
    std::set<int> reach{s};
    std::vector<int> work{s};
    while (!work.empty()) {
      int cur = work.back();
      work.pop_back();
      for (int ti : r.out[cur]) {
        const era::EraTransition& t = r.transitions[ti];
        if (t.letter == delta_letter && reach.insert(t.dst).second)
          work.push_back(t.dst);
      }
    }
    closure[s].assign(reach.begin(), reach.end());
  }

  era::RAutomaton out;
  out.num_counters = r.num_counters;
  out.states = r.states;
  out.initial = r.initial;
  out.letters = r.letters;
  out.letters.erase(out.letters.begin() + delta_letter);
  auto remap = [&](int letter) {
    return letter < delta_letter ? letter : letter - 1;
  };

  out.accepting.assign(r.num_states(), 0);
  for (int s = 0; s < r.num_states(); ++s)
    for (int via : closure[s])
      if (r.accepting[via]) out.accepting[s] = 1;

  for (int s = 0; s < r.num_states(); ++s)
    for (int via : closure[s])
      for (int ti : r.out[via]) {
        const era::EraTransition& t = r.transitions[ti];
        if (t.letter == delta_letter) continue;
        out.transitions.push_back({s, remap(t.letter), t.effect, t.dst});
      }
  out.index();
  return out;
}

// Word homomorphisms ---------------------------------------------------------

ta::Word expand_word(const ta::Word& w, int m) {
  if (m < 1) throw InputError("expansion factor must be >= 1");
  ta::Word out;
  out.reserve(w.size() * m);
  for (int letter : w)
    for (int k = 0; k < m; ++k) out.push_back(letter);
  return out;
}

ta::Word contract_word(const ta::Word& w, int m) {
  if (m < 1) throw InputError("expansion factor must be >= 1");
  if (w.size() % m != 0)
    throw InputError("word length is not a multiple of the block size");
  ta::Word out;
  out.reserve(w.size() / m);
  for (std::size_t i = 0; i < w.size(); i += m) {
    for (int k = 1; k < m; ++k)
      if (w[i + k] != w[i]) throw InputError("unequal letters inside a block");
    out.push_back(w[i]);
  }
  return out;
}

ta::Word triple(const ta::Word& w) { return expand_word(w, 3); }
ta::Word untriple(const ta::Word& w) { return contract_word(w, 3); }

}  // namespace tsa::translate
