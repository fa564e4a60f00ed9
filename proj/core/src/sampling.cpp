#include "tsa/sampling.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tsa/errors.hpp"

namespace tsa::sampling {

std::string verdict_string(Verdict v) {
  switch (v) {
    case Verdict::Samplable: return "samplable";
    case Verdict::NotSamplable: return "not_samplable";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::string era_word_string(const era::RAutomaton& r,
                            const std::vector<int>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += r.letters[w[i]];
  }
  return out.empty() ? "(empty)" : out;
}

bool only_closed_comparisons(const ta::TimedAutomaton& a) {
  for (const ta::Transition& t : a.transitions)
    for (const ta::Atom& atom : t.guard)
      if (atom.cmp == ta::Cmp::Lt || atom.cmp == ta::Cmp::Gt) return false;
  return true;
}

// Shortest (BFS, letters in order) word from `from` to each state.
std::vector<std::optional<std::vector<int>>> shortest_words(
    const era::RAutomaton& r, int from) {
  std::vector<std::optional<std::vector<int>>> word(r.num_states());
  std::deque<int> queue{from};
  word[from] = std::vector<int>{};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    // Transitions are sorted by (src, letter, ...), so successors come in
    // letter order and BFS words are lexicographically least.
    for (int ti : r.out[s]) {
      const era::EraTransition& t = r.transitions[ti];
      if (word[t.dst]) continue;
      word[t.dst] = *word[s];
      word[t.dst]->push_back(t.letter);
      queue.push_back(t.dst);
    }
  }
  return word;
}

}  // namespace

std::optional<PumpingWitness> pumping_evidence(const era::RAutomaton& r,
                                               const AnalysisConfig& cfg) {
  const auto from_initial = shortest_words(r, r.initial);
  std::vector<std::optional<std::vector<int>>> to_accepting(r.num_states());
  for (int s = 0; s < r.num_states(); ++s) {
    if (!from_initial[s]) continue;
    const auto reach = shortest_words(r, s);
    for (int f = 0; f < r.num_states(); ++f) {
      if (!r.accepting[f] || !reach[f]) continue;
      if (!to_accepting[s] || reach[f]->size() < to_accepting[s]->size())
        to_accepting[s] = reach[f];
    }
  }

  long long candidates = 0;
  PumpingWitness found;
  bool have = false;

  auto try_lasso = [&](int s, const std::vector<int>& cycle) {
    if (have || ++candidates > cfg.max_lasso_candidates) return;
    std::vector<long long> bounds;
    for (int k = 0; k <= cfg.k_check; ++k) {
      std::vector<int> w = *from_initial[s];
      for (int rep = 0; rep < k; ++rep)
        w.insert(w.end(), cycle.begin(), cycle.end());
      w.insert(w.end(), to_accepting[s]->begin(), to_accepting[s]->end());
      const std::optional<long long> mb = era::min_bound(r, w);
      if (!mb || *mb < k) return;
      if (!bounds.empty() && *mb <= bounds.back()) return;
      bounds.push_back(*mb);
    }
    found = {*from_initial[s], cycle, *to_accepting[s], std::move(bounds)};
    have = true;
  };

  // Cycles through s, letters in order, shortest first (iterative
  // deepening keeps the search canonical).
  for (int s = 0; s < r.num_states() && !have; ++s) {
    if (!from_initial[s] || !to_accepting[s]) continue;
    for (int cap = 1; cap <= cfg.word_len_cap && !have; ++cap) {
      std::vector<int> cycle;
      auto dfs = [&](auto&& self, int cur) -> void {
        if (have || candidates > cfg.max_lasso_candidates) return;
        if (!cycle.empty() && cur == s &&
            static_cast<int>(cycle.size()) == cap) {
          try_lasso(s, cycle);
          return;
        }
        if (static_cast<int>(cycle.size()) >= cap) return;
        for (int ti : r.out[cur]) {
          const era::EraTransition& t = r.transitions[ti];
          cycle.push_back(t.letter);
          self(self, t.dst);
          cycle.pop_back();
        }
      };
      dfs(dfs, s);
    }
  }
  if (!have) return std::nullopt;
  return found;
}

SamplingResult analyze(const ta::TimedAutomaton& a,
                       const AnalysisConfig& cfg) {
  SamplingResult res;

  if (a.num_clocks() == 0) {
    res.verdict = Verdict::Samplable;
    res.epsilon = Rat(1);
    res.method = "zero-clock";
    res.evidence.push_back(
        "no clocks: delays never matter, any period works");
    return res;
  }
  if (a.num_clocks() == 1) {
    res.verdict = Verdict::Samplable;
    res.epsilon = Rat(1, 2);
    res.method = "one-clock";
    res.evidence.push_back(
        "one clock: half-unit steps reach every region");
    return res;
  }
  if (only_closed_comparisons(a)) {
    res.verdict = Verdict::Samplable;
    res.epsilon = Rat(1);
    res.method = "closed";
    res.evidence.push_back(
        "no strict comparisons: every run deforms onto integer delays");
    return res;
  }

  try {
    const ta::TimedAutomaton a2 = translate::remove_multiple_resets(a);
    const region::RegionGraph g =
        region::build_region_graph(a2, cfg.region_options);
    const translate::PipelineEra pe = translate::build_era(g, a2);
    const era::RAutomaton r2 =
        translate::remove_delta(pe.automaton, pe.delta_letter);
    const fa::Nfa full = era::language_nfa(r2);

    for (long long b : cfg.bound_schedule) {
      const fa::Nfa bounded = era::b_language_nfa(r2, b, cfg.nfa_budget);
      const fa::EquivResult eq = fa::equivalent(bounded, full, cfg.nfa_budget);
      if (eq.equivalent) {
        res.verdict = Verdict::Samplable;
        res.bound = b;
        res.epsilon = Rat(1, 4 * b);
        res.method = "limitedness";
        res.checks.push_back("B=" + std::to_string(b) +
                             ": counters stay bounded on every accepted word");
        return res;
      }
      res.checks.push_back(
          "B=" + std::to_string(b) + ": bounded/full languages differ at \"" +
          era_word_string(r2, eq.counterexample) + "\"");
    }

    if (std::optional<PumpingWitness> w = pumping_evidence(r2, cfg)) {
      res.verdict = Verdict::NotSamplable;
      res.method = "pumping";
      res.evidence.push_back("lasso base=\"" + era_word_string(r2, w->u) +
                             "\" cycle=\"" + era_word_string(r2, w->v) +
                             "\" tail=\"" + era_word_string(r2, w->x) + "\"");
      std::string bounds = "minimal counter bound per pump count:";
      for (long long b : w->bounds) bounds += " " + std::to_string(b);
      res.evidence.push_back(bounds);
      res.evidence.push_back(
          "empirical: bound grows with every pump, no finite bound fits");
      res.witness = std::move(w);
      return res;
    }

    res.verdict = Verdict::Unknown;
    res.method = "bound-search-exhausted";
    res.evidence.push_back(
        "no bound in the schedule worked and no growing lasso was found");
  } catch (const ResourceError& e) {
    res.verdict = Verdict::Unknown;
    res.method = "budget-exhausted";
    res.evidence.push_back(e.what());
  }
  return res;
}

VerifyReport verify_verdict(const ta::TimedAutomaton& a,
                            const SamplingResult& res,
                            const AnalysisConfig& cfg, int max_len) {
  if (max_len < 0) max_len = cfg.word_len_cap;
  VerifyReport report;

  if (res.verdict == Verdict::Unknown) {
    report.lines.push_back("unknown verdict: nothing to confirm");
    return report;
  }

  // A single region automaton answers all dense membership queries.
  const region::RegionGraph g = region::build_region_graph(a);
  std::vector<fa::Nfa::Edge> edges;
  for (const region::RegionGraph::Edge& e : g.edges)
    edges.push_back(
        {e.src,
         e.letter == region::RegionGraph::kDelta ? g.num_letters : e.letter,
         e.dst});
  const fa::Nfa dense = fa::remove_silent(
      fa::Nfa::build(g.num_letters + 1, g.num_nodes(), g.initial, g.accepting,
                     std::move(edges)));

  if (res.verdict == Verdict::Samplable) {
    if (!res.epsilon) {
      report.ok = false;
      report.lines.push_back("samplable verdict without a period");
      return report;
    }
    const long long k = res.epsilon->denominator();
    long long words = 0;
    std::vector<int> w;
    auto walk = [&](auto&& self) -> bool {
      ++words;
      if (fa::accepts(dense, w) != ta::sampled_member(a, w, k)) {
        report.ok = false;
        report.lines.push_back("disagreement on \"" + word_string(a, w) +
                               "\" at period 1/" + std::to_string(k));
        return false;
      }
      if (static_cast<int>(w.size()) == max_len) return true;
      for (int letter = 0; letter < a.num_letters(); ++letter) {
        w.push_back(letter);
        const bool go_on = self(self);
        w.pop_back();
        if (!go_on) return false;
      }
      return true;
    };
    if (walk(walk))
      report.lines.push_back(
          "dense and 1/" + std::to_string(k) + "-sampled membership agree on " +
          std::to_string(words) + " words up to length " +
          std::to_string(max_len));
    return report;
  }

  // NotSamplable: each configured period must lose some dense word.
  for (long long k : cfg.eps_checks) {
    const int cap = static_cast<int>(std::max<long long>(max_len, 2 * k + 3));
    bool shown = false;
    for (const std::vector<int>& w : fa::enumerate_accepted(dense, cap)) {
      if (!ta::sampled_member(a, w, k)) {
        report.lines.push_back(
            "period 1/" + std::to_string(k) + " misses \"" +
            word_string(a, w) + "\" (length " + std::to_string(w.size()) + ")");
        shown = true;
        break;
      }
    }
    if (!shown) {
      report.ok = false;
      report.lines.push_back("period 1/" + std::to_string(k) +
                             ": no lost word up to length " +
                             std::to_string(cap));
    }
  }
  return report;
}

std::string to_json(const SamplingResult& res) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_string(res.verdict);
  if (res.epsilon)
    j["epsilon"] = to_string(*res.epsilon);
  else
    j["epsilon"] = nullptr;
  if (res.bound)
    j["bound"] = *res.bound;
  else
    j["bound"] = nullptr;
  j["method"] = res.method;
  j["evidence"] = res.evidence;
  j["checks"] = res.checks;
  return j.dump(2);
}

}  // namespace tsa::sampling
