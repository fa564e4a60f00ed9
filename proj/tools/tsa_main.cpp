#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsa/errors.hpp"
#include "tsa/rational.hpp"
#include "tsa/region.hpp"
#include "tsa/sampling.hpp"
#include "tsa/ta.hpp"
#include "tsa/translate.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tsa::InputError("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

long long parse_period(const std::string& text) {
  const tsa::Rat eps = tsa::parse_rat(text);
  if (eps.numerator() != 1 || eps.denominator() < 1)
    throw tsa::InputError("period must be 1/k for an integer k >= 1, got " +
                          text);
  return eps.denominator();
}

// Exact sampled configurations: location plus clock numerators over 1/k,
// clamped just above the largest guard constant (larger values are
// indistinguishable by every guard).
struct SimState {
  int loc = 0;
  std::vector<long long> v;
  auto operator<=>(const SimState&) const = default;
};

std::set<SimState> delay_closure(const tsa::ta::TimedAutomaton& a,
                                 std::set<SimState> states, long long top,
                                 long long budget) {
  std::vector<SimState> work(states.begin(), states.end());
  while (!work.empty()) {
    SimState s = std::move(work.back());
    work.pop_back();
    for (long long& c : s.v) c = std::min(c + 1, top);
    if (states.insert(s).second) {
      if (static_cast<long long>(states.size()) > budget)
        throw tsa::ResourceError("simulation state budget exhausted");
      work.push_back(std::move(s));
    }
  }
  return states;
}

bool atom_holds(const tsa::ta::Atom& atom, const std::vector<long long>& v,
                long long k) {
  const long long j = v[atom.clock];
  const long long c = atom.bound * k;
  switch (atom.cmp) {
    case tsa::ta::Cmp::Lt: return j < c;
    case tsa::ta::Cmp::Le: return j <= c;
    case tsa::ta::Cmp::Ge: return j >= c;
    case tsa::ta::Cmp::Gt: return j > c;
  }
  return false;
}

std::string sim_state_string(const tsa::ta::TimedAutomaton& a,
                             const SimState& s, long long k, long long top) {
  std::string out = a.locations[s.loc] + ":";
  for (int x = 0; x < a.num_clocks(); ++x) {
    out += ' ';
    out += a.clocks[x];
    if (s.v[x] >= top)
      out += ">" + std::to_string((top - 1) / k);
    else
      out += "=" + tsa::to_string(tsa::Rat(s.v[x], k));
  }
  return out;
}

int cmd_analyze(const std::string& path, long long max_bound, int word_cap,
                int k_check, bool json) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(read_file(path));
  tsa::sampling::AnalysisConfig cfg;
  if (max_bound > 0) {
    cfg.bound_schedule.clear();
    for (long long b = 1; b <= max_bound; b *= 2)
      cfg.bound_schedule.push_back(b);
    if (cfg.bound_schedule.empty() || cfg.bound_schedule.back() != max_bound)
      cfg.bound_schedule.push_back(max_bound);
  }
  if (word_cap > 0) cfg.word_len_cap = word_cap;
  if (k_check > 0) cfg.k_check = k_check;

  const tsa::sampling::SamplingResult res = tsa::sampling::analyze(a, cfg);
  if (json) {
    std::cout << tsa::sampling::to_json(res) << "\n";
  } else {
    std::cout << "verdict: " << tsa::sampling::verdict_string(res.verdict)
              << "\n";
    if (res.epsilon)
      std::cout << "epsilon: " << tsa::to_string(*res.epsilon) << "\n";
    if (res.bound) std::cout << "bound: " << *res.bound << "\n";
    std::cout << "method: " << res.method << "\n";
    for (const std::string& line : res.evidence)
      std::cout << "evidence: " << line << "\n";
    for (const std::string& line : res.checks)
      std::cout << "check: " << line << "\n";
  }
  switch (res.verdict) {
    case tsa::sampling::Verdict::Samplable: return 0;
    case tsa::sampling::Verdict::NotSamplable: return 1;
    case tsa::sampling::Verdict::Unknown: return 2;
  }
  return 2;
}

int cmd_member(const std::string& path, bool dense, const std::string& eps,
               const std::string& word_text) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(read_file(path));
  const tsa::ta::Word w = tsa::ta::parse_word(a, word_text);
  bool accepted = false;
  if (dense) {
    accepted = tsa::ta::dense_member_via_regions(a, w);
  } else {
    accepted = tsa::ta::sampled_member(a, w, parse_period(eps));
  }
  std::cout << (accepted ? "accepted" : "rejected") << "\n";
  return accepted ? 0 : 1;
}

int cmd_simulate(const std::string& path, const std::string& eps,
                 const std::string& word_text) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(read_file(path));
  const tsa::ta::Word w = tsa::ta::parse_word(a, word_text);
  const long long k = parse_period(eps);
  const long long top = a.max_constant() * k + 1;
  const tsa::ta::SampledOptions opt;

  std::set<SimState> states{{a.initial,
                             std::vector<long long>(a.num_clocks(), 0)}};
  states = delay_closure(a, std::move(states), top, opt.max_states);

  const auto print_layer = [&](std::size_t pos) {
    if (pos == 0)
      std::cout << "start: ";
    else
      std::cout << "after " << a.alphabet[w[pos - 1]] << ": ";
    std::cout << states.size() << " reachable configurations\n";
    std::size_t shown = 0;
    for (const SimState& s : states) {
      if (++shown > 12) {
        std::cout << "  ...\n";
        break;
      }
      std::cout << "  " << sim_state_string(a, s, k, top) << "\n";
    }
  };

  print_layer(0);
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    std::set<SimState> next;
    for (const SimState& s : states) {
      for (const tsa::ta::Transition& t : a.transitions) {
        if (t.src != s.loc || t.letter != w[pos]) continue;
        bool ok = true;
        for (const tsa::ta::Atom& atom : t.guard)
          if (!atom_holds(atom, s.v, k)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        SimState succ{t.dst, s.v};
        for (int x : t.resets) succ.v[x] = 0;
        next.insert(std::move(succ));
      }
    }
    states = delay_closure(a, std::move(next), top, opt.max_states);
    print_layer(pos + 1);
    if (states.empty()) break;
  }

  bool accepted = false;
  if (states.size() || w.empty())
    for (const SimState& s : states)
      if (a.accepting[s.loc]) {
        accepted = true;
        break;
      }
  std::cout << "verdict: " << (accepted ? "accepted" : "rejected") << "\n";
  return accepted ? 0 : 1;
}

int cmd_regions(const std::string& path, bool dot) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(read_file(path));
  const tsa::region::RegionGraph g = tsa::region::build_region_graph(a);
  if (dot) {
    std::cout << tsa::region::to_dot(g, a);
    return 0;
  }
  std::cout << "constant: " << g.k << "\n";
  std::cout << "nodes: " << g.num_nodes() << ", edges: " << g.edges.size()
            << "\n";
  for (int i = 0; i < g.num_nodes(); ++i) {
    const tsa::region::RegionGraph::Node& n = g.nodes[i];
    std::cout << "node " << i << ": " << a.locations[n.loc] << " | "
              << tsa::region::region_string(n.region, a.clocks);
    if (i == g.initial) std::cout << " [initial]";
    if (g.accepting[i]) std::cout << " [accepting]";
    std::cout << "\n";
  }
  return 0;
}

int cmd_era(const std::string& path, bool no_delta) {
  const tsa::ta::TimedAutomaton a = tsa::ta::parse_ta(read_file(path));
  const tsa::ta::TimedAutomaton a2 = tsa::translate::remove_multiple_resets(a);
  const tsa::region::RegionGraph g = tsa::region::build_region_graph(a2);
  const tsa::translate::PipelineEra pe = tsa::translate::build_era(g, a2);

  std::cout << "# counters are ordered pairs of distinct clocks:";
  for (int i = 0; i < pe.automaton.num_counters; ++i)
    std::cout << " " << i + 1 << "="
              << tsa::translate::counter_name(a2.clocks, i);
  std::cout << "\n";
  for (int s = 0; s < pe.automaton.num_states(); ++s) {
    std::cout << "# state " << pe.automaton.states[s];
    if (pe.complete[s]) {
      const tsa::region::RegionGraph::Node& n = g.nodes[pe.region_node[s]];
      std::cout << ": complete, " << a2.locations[n.loc] << " | "
                << tsa::region::region_string(n.region, a2.clocks);
    } else {
      std::cout << ": auxiliary";
    }
    std::cout << "\n";
  }
  if (no_delta) {
    std::cout << "# delta transitions composed away\n"
              << tsa::era::dump_era(tsa::translate::remove_delta(
                     pe.automaton, pe.delta_letter));
  } else {
    std::cout << "# last letter is the time-successor step\n"
              << tsa::era::dump_era(pe.automaton);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampled-semantics analysis of timed automata"};
  app.require_subcommand(1);

  std::string file, word_text, eps;
  long long max_bound = 0;
  int word_cap = 0, k_check = 0;
  bool json = false, dense = false, dot = false, no_delta = false;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Decide whether some period 1/k preserves the language");
  analyze->add_option("file", file, "timed automaton file")->required();
  analyze->add_option("--max-bound", max_bound,
                      "largest counter bound to try");
  analyze->add_option("--word-cap", word_cap,
                      "length cap for evidence words");
  analyze->add_option("--k-check", k_check,
                      "pump counts tried for divergence evidence");
  analyze->add_flag("--json", json, "machine-readable output");

  CLI::App* member = app.add_subcommand(
      "member", "Membership of a word, dense or sampled");
  member->add_option("file", file, "timed automaton file")->required();
  CLI::Option* dense_opt =
      member->add_flag("--dense", dense, "arbitrary rational delays");
  member->add_option("--epsilon", eps, "sampling period 1/k")
      ->excludes(dense_opt);
  member->add_option("--word", word_text, "space-separated letters")
      ->required();

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Trace the sampled configurations along a word");
  simulate->add_option("file", file, "timed automaton file")->required();
  simulate->add_option("--epsilon", eps, "sampling period 1/k")->required();
  simulate->add_option("--word", word_text, "space-separated letters")
      ->required();

  CLI::App* regions = app.add_subcommand(
      "regions", "Reachable region graph of the automaton");
  regions->add_option("file", file, "timed automaton file")->required();
  regions->add_flag("--dot", dot, "Graphviz output");

  CLI::App* era = app.add_subcommand(
      "era", "Counter automaton built from the region graph");
  era->add_option("file", file, "timed automaton file")->required();
  era->add_flag("--no-delta", no_delta,
                "compose away the time-successor transitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(file, max_bound, word_cap, k_check, json);
    if (app.got_subcommand(member)) {
      if (!dense && eps.empty())
        throw tsa::InputError("member needs --dense or --epsilon");
      return cmd_member(file, dense, eps, word_text);
    }
    if (app.got_subcommand(simulate)) return cmd_simulate(file, eps, word_text);
    if (app.got_subcommand(regions)) return cmd_regions(file, dot);
    if (app.got_subcommand(era)) return cmd_era(file, no_delta);
  } catch (const tsa::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const tsa::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
