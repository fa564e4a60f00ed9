#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tsa/era.hpp"
#include "tsa/errors.hpp"

namespace tsa::era {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  std::size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

// Top-level comma split; commas inside r{...} belong to the reset set.
std::vector<std::string> split_effect(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

long long parse_int(const std::string& text, const std::string& what) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    throw InputError("bad " + what + ": '" + text + "'");
  return std::stoll(text);
}

Instruction parse_instruction(const std::string& text, int n) {
  if (text == "0") return Instruction::nop();
  if (text == "1") return Instruction::inc();
  if (text.size() >= 2 && text[0] == '*') {
    long long src = parse_int(text.substr(1), "copy source");
    if (src < 1 || src > n) throw InputError("copy source out of range: " + text);
    return Instruction::copy(static_cast<int>(src) - 1);
  }
  if (text.size() >= 3 && text[0] == 'r' && text[1] == '{' &&
      text.back() == '}') {
    std::string inner = text.substr(2, text.size() - 3);
    std::vector<int> set;
    if (!inner.empty()) {
      std::stringstream in(inner);
      std::string item;
      while (std::getline(in, item, ',')) {
        long long idx = parse_int(item, "reset set entry");
        if (idx < 1 || idx > n)
          throw InputError("reset set entry out of range: " + text);
        set.push_back(static_cast<int>(idx) - 1);
      }
    }
    return Instruction::reset(std::move(set));
  }
  throw InputError("bad effect instruction: '" + text + "'");
}

std::string instruction_string(const Instruction& ins) {
  switch (ins.op) {
    case Op::Nop: return "0";
    case Op::Inc: return "1";
    case Op::Copy: return "*" + std::to_string(ins.src + 1);
    case Op::Reset: {
      std::string out = "r{";
      for (std::size_t i = 0; i < ins.reset_set.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ins.reset_set[i] + 1);
      }
      return out + "}";
    }
  }
  return "?";
}

}  // namespace

RAutomaton parse_era(const std::string& text) {
  int num_counters = -1;
  std::set<std::string> state_names, letter_names;
  std::string initial_name;
  bool saw_initial = false;
  std::set<std::string> accepting_names;

  struct RawTransition {
    std::string src, letter, dst, effect;
  };
  std::vector<RawTransition> raw;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tok = split_ws(strip_comment(line));
    if (tok.empty()) continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (tok[0] == "counters") {
      if (tok.size() != 2) throw InputError("counters expects a number" + where);
      num_counters = static_cast<int>(parse_int(tok[1], "counter count"));
    } else if (tok[0] == "initial") {
      if (tok.size() != 2) throw InputError("initial expects one state" + where);
      if (saw_initial) throw InputError("duplicate initial line" + where);
      saw_initial = true;
      initial_name = tok[1];
      state_names.insert(tok[1]);
    } else if (tok[0] == "accepting") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        accepting_names.insert(tok[i]);
        state_names.insert(tok[i]);
      }
    } else if (tok[0] == "trans") {
      // trans SRC -> DST on LETTER eff E1,...,En
      if (tok.size() < 7 || tok[2] != "->" || tok[4] != "on" || tok[6] != "eff")
        throw InputError("bad trans line" + where);
      RawTransition t;
      t.src = tok[1];
      t.dst = tok[3];
      t.letter = tok[5];
      for (std::size_t i = 7; i < tok.size(); ++i) t.effect += tok[i];
      if (t.effect.empty() && num_counters != 0)
        throw InputError("missing effect" + where);
      state_names.insert(t.src);
      state_names.insert(t.dst);
      letter_names.insert(t.letter);
      raw.push_back(std::move(t));
    } else {
      throw InputError("unknown declaration: " + tok[0] + where);
    }
  }

  if (num_counters < 0) throw InputError("missing counters line");
  if (!saw_initial) throw InputError("missing initial line");

  RAutomaton r;
  r.num_counters = num_counters;
  r.states.assign(state_names.begin(), state_names.end());
  r.letters.assign(letter_names.begin(), letter_names.end());
  // The silent time letter, when present, is conventionally last.
  auto delta = std::find(r.letters.begin(), r.letters.end(), "delta");
  if (delta != r.letters.end()) {
    r.letters.erase(delta);
    r.letters.push_back("delta");
  }

  std::map<std::string, int> state_of, letter_of;
  for (int i = 0; i < r.num_states(); ++i) state_of[r.states[i]] = i;
  for (int i = 0; i < r.num_letters(); ++i) letter_of[r.letters[i]] = i;

  r.initial = state_of[initial_name];
  r.accepting.assign(r.states.size(), 0);
  for (const std::string& name : accepting_names)
    r.accepting[state_of[name]] = 1;

  for (const RawTransition& rt : raw) {
    EraTransition t;
    t.src = state_of[rt.src];
    t.dst = state_of[rt.dst];
    t.letter = letter_of[rt.letter];
    if (num_counters > 0) {
      std::vector<std::string> items = split_effect(rt.effect);
      if (static_cast<int>(items.size()) != num_counters)
        throw InputError("effect arity mismatch: '" + rt.effect + "'");
      for (const std::string& item : items)
        t.effect.push_back(parse_instruction(item, num_counters));
      for (int i = 0; i < num_counters; ++i)
        if (t.effect[i].op == Op::Copy && t.effect[i].src == i)
          throw InputError("self-copy not allowed: '" + rt.effect + "'");
    }
    r.transitions.push_back(std::move(t));
  }
  r.index();
  return r;
}

std::string dump_era(const RAutomaton& r) {
  std::ostringstream out;
  out << "counters " << r.num_counters << "\ninitial " << r.states[r.initial]
      << "\naccepting";
  for (int i = 0; i < r.num_states(); ++i)
    if (r.accepting[i]) out << ' ' << r.states[i];
  out << '\n';
  for (const EraTransition& t : r.transitions) {
    out << "trans " << r.states[t.src] << " -> " << r.states[t.dst] << " on "
        << r.letters[t.letter] << " eff ";
    if (t.effect.empty()) out << "-";
    for (std::size_t i = 0; i < t.effect.size(); ++i) {
      if (i) out << ',';
      out << instruction_string(t.effect[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tsa::era
