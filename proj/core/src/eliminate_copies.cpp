#include "tsa/eliminate_copies.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "tsa/errors.hpp"

namespace tsa::era {

PointerState PointerState::initial(int n) {
  PointerState ps;
  ps.pp.assign(n, kNullParent);
  ps.phi.resize(n);
  std::iota(ps.phi.begin(), ps.phi.end(), 0);
  return ps;
}

int rank(const std::vector<int>& pp, int i) {
  int steps = 0;
  for (int cur = i; pp[cur] != kNullParent; cur = pp[cur])
    if (++steps > static_cast<int>(pp.size()))
      throw std::logic_error("parent pointers form a cycle");
  return steps;
}

namespace {

bool plain(const Instruction& ins) {
  return ins.op == Op::Nop || ins.op == Op::Inc;
}

Instruction route_instruction(const Instruction& ins,
                              const std::vector<int>& phi) {
  if (ins.op == Op::Reset) {
    std::vector<int> set;
    set.reserve(ins.reset_set.size());
    for (int j : ins.reset_set) set.push_back(phi[j]);
    return Instruction::reset(std::move(set));
  }
  if (ins.op == Op::Copy) return Instruction::copy(phi[ins.src]);
  return ins;
}

// Physical effect: the slot phi[v] executes virtual counter v's instruction.
Effect route_effect(const Effect& virt, const std::vector<int>& phi) {
  Effect out(virt.size(), Instruction::nop());
  for (std::size_t v = 0; v < virt.size(); ++v)
    out[phi[v]] = route_instruction(virt[v], phi);
  return out;
}

// The effect keeps counter k (plain instruction) while destroying counter l
// (reset or copy) that holds k's value: unsimulatable, divert to the sink.
bool whole_effect_error(const std::vector<int>& pp, const Effect& e) {
  for (std::size_t k = 0; k < e.size(); ++k)
    if (plain(e[k]) && pp[k] != kNullParent && !plain(e[pp[k]])) return true;
  return false;
}

void null_reset_parents(const Effect& e, std::vector<int>& pp) {
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v].op == Op::Reset) pp[v] = kNullParent;
}

struct Branch {
  Effect phys;
  PointerState ps;
};

// One copy i := *j, physical reset already placed by the caller.  The
// "keep j" alternative leaves routing alone and records i's value as held
// by j; the "keep i" alternative hands j's holder role to i: i inherits
// j's parent, j's dependents re-point to i, j points to i, and the two
// virtual counters swap physical slots.
void copy_choices(int i, int j, const Branch& base, std::vector<Branch>& out) {
  Branch keep_j = base;
  keep_j.ps.pp[i] = j;
  out.push_back(std::move(keep_j));

  Branch keep_i = base;
  std::vector<int>& pp = keep_i.ps.pp;
  pp[i] = pp[j];
  for (int& parent : pp)
    if (parent == j) parent = i;
  pp[j] = i;
  std::swap(keep_i.ps.phi[i], keep_i.ps.phi[j]);
  out.push_back(std::move(keep_i));
}

}  // namespace

std::vector<SimBranch> simulate_effect(const PointerState& ps,
                                       const Effect& e) {
  const int n = static_cast<int>(e.size());
  std::vector<int> copies;
  for (int v = 0; v < n; ++v)
    if (e[v].op == Op::Copy) copies.push_back(v);

  const SimBranch error_branch{Effect(n, Instruction::nop()), ps, true};

  if (static_cast<int>(copies.size()) <= 1) {
    if (whole_effect_error(ps.pp, e)) return {error_branch};
    if (copies.empty()) {
      Branch b{route_effect(e, ps.phi), ps};
      null_reset_parents(e, b.ps.pp);
      return {{std::move(b.phys), std::move(b.ps), false}};
    }
    const int i = copies[0];
    const int j = e[i].src;
    Effect virt = e;
    virt[i] = Instruction::reset();
    Branch base{route_effect(virt, ps.phi), ps};
    // Reset counters lose their pointers before the copy bookkeeping runs;
    // otherwise a stale pointer from the (reset) source back to the target
    // would be inherited as a self-loop, and chains must stay acyclic.
    null_reset_parents(e, base.ps.pp);
    std::vector<Branch> branches;
    copy_choices(i, j, base, branches);
    std::vector<SimBranch> out;
    for (Branch& b : branches) {
      null_reset_parents(e, b.ps.pp);
      out.push_back({std::move(b.phys), std::move(b.ps), false});
    }
    return out;
  }

  // Several copies: decompose into the copy-free part, then one copy at a
  // time, leaves before their sources, with pure cycles rerouted at the
  // end.  The error rule is checked at every decomposition step.
  Effect hat = e;
  for (int v : copies) hat[v] = Instruction::nop();
  if (whole_effect_error(ps.pp, hat)) return {error_branch};

  Branch init{route_effect(hat, ps.phi), ps};
  null_reset_parents(e, init.ps.pp);

  // Peel copy targets that no remaining copy reads from.
  std::set<int> remaining(copies.begin(), copies.end());
  std::vector<int> order;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (int v : copies) {
      if (!remaining.count(v)) continue;
      bool is_source = false;
      for (int w : remaining)
        if (w != v && e[w].src == v) { is_source = true; break; }
      if (!is_source) {
        order.push_back(v);
        remaining.erase(v);
        progressed = true;
        break;  // restart to keep ascending order among current leaves
      }
    }
  }

  std::vector<Branch> branches{std::move(init)};
  std::vector<SimBranch> errored;
  for (int i : order) {
    const int j = e[i].src;
    std::vector<Branch> next;
    for (Branch& b : branches) {
      bool held = false;
      for (int k = 0; k < n; ++k)
        if (k != i && b.ps.pp[k] == i) { held = true; break; }
      if (held) {
        errored.push_back(error_branch);
        continue;
      }
      b.phys[b.ps.phi[i]] = Instruction::reset();
      copy_choices(i, j, b, next);
    }
    branches = std::move(next);
  }

  // What is left forms disjoint cycles: values rotate, so only the
  // routing and the pointer labels rotate with them.
  if (!remaining.empty()) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int v : remaining) sigma[e[v].src] = v;  // value moves src -> v
    std::vector<int> sigma_inv(n);
    for (int v = 0; v < n; ++v) sigma_inv[sigma[v]] = v;
    for (Branch& b : branches) {
      std::vector<int> pp(n), phi(n);
      for (int k = 0; k < n; ++k) {
        pp[sigma[k]] =
            b.ps.pp[k] == kNullParent ? kNullParent : sigma[b.ps.pp[k]];
        phi[k] = b.ps.phi[sigma_inv[k]];
      }
      b.ps.pp = std::move(pp);
      b.ps.phi = std::move(phi);
    }
  }

  std::vector<SimBranch> out;
  for (Branch& b : branches) {
    null_reset_parents(e, b.ps.pp);  // a peel may re-point a reset counter
    out.push_back({std::move(b.phys), std::move(b.ps), false});
  }
  for (SimBranch& b : errored) out.push_back(std::move(b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CopyElimination eliminate_copies(const RAutomaton& r,
                                 const CopyEliminationOptions& opt) {
  CopyElimination res;
  RAutomaton& out = res.automaton;
  out.num_counters = r.num_counters;
  out.letters = r.letters;

  std::map<std::pair<int, PointerState>, int> index;
  std::deque<std::pair<int, PointerState>> queue;
  auto state_id = [&](int orig, PointerState ps) {
    auto key = std::make_pair(orig, std::move(ps));
    auto [it, inserted] = index.try_emplace(std::move(key),
                                            static_cast<int>(out.states.size()));
    if (inserted) {
      if (static_cast<long long>(index.size()) > opt.max_states)
        throw ResourceError("copy elimination: state budget exhausted");
      out.states.push_back(r.states[orig] + "@" + std::to_string(it->second));
      out.accepting.push_back(r.accepting[orig]);
      res.origin.push_back(orig);
      res.pointers.push_back(it->first.second);
      queue.push_back(it->first);
    }
    return it->second;
  };

  auto sink_id = [&]() {
    if (res.error_sink < 0) {
      res.error_sink = static_cast<int>(out.states.size());
      out.states.push_back("ERR");
      out.accepting.push_back(0);
      res.origin.push_back(-1);
      res.pointers.push_back({});
      for (int letter = 0; letter < out.num_letters(); ++letter)
        out.transitions.push_back({res.error_sink, letter,
                                   Effect(out.num_counters, Instruction::nop()),
                                   res.error_sink});
    }
    return res.error_sink;
  };

  out.initial = state_id(r.initial, PointerState::initial(r.num_counters));
  while (!queue.empty()) {
    auto [orig, ps] = queue.front();
    queue.pop_front();
    const int src = index.at({orig, ps});
    for (int ti : r.out[orig]) {
      const EraTransition& t = r.transitions[ti];
      for (SimBranch& branch : simulate_effect(ps, t.effect)) {
        if (branch.error)
          out.transitions.push_back(
              {src, t.letter, Effect(out.num_counters, Instruction::nop()),
               sink_id()});
        else
          out.transitions.push_back({src, t.letter, std::move(branch.effect),
                                     state_id(t.dst, std::move(branch.next))});
      }
    }
  }
  out.index();
  return res;
}

}  // namespace tsa::era
