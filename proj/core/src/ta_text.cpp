#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tsa/errors.hpp"
#include "tsa/ta.hpp"

namespace tsa::ta {

namespace {

// Tokenization helpers ------------------------------------------------------

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

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Guard parsing -------------------------------------------------------------

struct RawAtom {
  std::string clock;
  std::string op;
  long long bound = 0;
};

// One atom "clock OP int" with OP in {<, <=, >=, >, =}.
RawAtom parse_atom(const std::string& text) {
  std::size_t pos = text.find_first_of("<>=");
  if (pos == std::string::npos || pos == 0)
    throw InputError("bad guard atom: " + text);
  RawAtom atom;
  atom.clock = text.substr(0, pos);
  std::size_t rest = pos;
  if (text[pos] == '<' || text[pos] == '>') {
    rest = pos + 1;
    if (rest < text.size() && text[rest] == '=') ++rest;
  } else {
    rest = pos + 1;  // "="
  }
  atom.op = text.substr(pos, rest - pos);
  std::string num = text.substr(rest);
  if (num.empty() ||
      !std::all_of(num.begin(), num.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InputError("bad guard constant: " + text);
  atom.bound = std::stoll(num);
  return atom;
}

std::string cmp_string(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
  }
  return "?";
}

}  // namespace

TimedAutomaton parse_ta(const std::string& text) {
  std::set<std::string> clock_names;
  std::set<std::string> letter_names;
  std::set<std::string> location_names;
  std::string initial_name;
  std::set<std::string> accepting_names;
  bool saw_initial = false;

  struct RawTransition {
    std::string src, letter, dst;
    std::string guard;              // atoms joined by '&', or "true"
    std::vector<std::string> resets;
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
    if (tok[0] == "clocks") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!valid_name(tok[i])) throw InputError("bad clock name: " + tok[i] + where);
        if (!clock_names.insert(tok[i]).second)
          throw InputError("duplicate clock: " + tok[i] + where);
      }
    } else if (tok[0] == "alphabet") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!valid_name(tok[i])) throw InputError("bad letter: " + tok[i] + where);
        if (tok[i] == "delta")
          throw InputError("letter name 'delta' is reserved" + where);
        if (!letter_names.insert(tok[i]).second)
          throw InputError("duplicate letter: " + tok[i] + where);
      }
    } else if (tok[0] == "initial") {
      if (tok.size() != 2 || !valid_name(tok[1]))
        throw InputError("initial expects one location" + where);
      if (saw_initial) throw InputError("duplicate initial line" + where);
      saw_initial = true;
      initial_name = tok[1];
      location_names.insert(tok[1]);
    } else if (tok[0] == "accepting") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!valid_name(tok[i])) throw InputError("bad location: " + tok[i] + where);
        accepting_names.insert(tok[i]);
        location_names.insert(tok[i]);
      }
    } else if (tok[0] == "trans") {
      // trans SRC -> DST on LETTER when GUARD reset CLOCKS|-
      std::size_t i = 1;
      auto need = [&](const std::string& what) -> std::string {
        if (i >= tok.size()) throw InputError("truncated trans, expected " + what + where);
        return tok[i++];
      };
      RawTransition t;
      t.src = need("source");
      if (need("'->'") != "->") throw InputError("expected '->'" + where);
      t.dst = need("target");
      if (need("'on'") != "on") throw InputError("expected 'on'" + where);
      t.letter = need("letter");
      if (need("'when'") != "when") throw InputError("expected 'when'" + where);
      // Guard atoms may be spaced around '&'; gather until "reset".
      std::string guard;
      while (i < tok.size() && tok[i] != "reset") guard += tok[i++];
      if (guard.empty()) throw InputError("missing guard" + where);
      t.guard = guard;
      if (need("'reset'") != "reset") throw InputError("expected 'reset'" + where);
      if (i >= tok.size()) throw InputError("missing reset list" + where);
      while (i < tok.size()) {
        if (tok[i] != "-") t.resets.push_back(tok[i]);
        ++i;
      }
      location_names.insert(t.src);
      location_names.insert(t.dst);
      raw.push_back(std::move(t));
    } else {
      throw InputError("unknown declaration: " + tok[0] + where);
    }
  }

  if (!saw_initial) throw InputError("missing initial line");

  TimedAutomaton a;
  a.clocks.assign(clock_names.begin(), clock_names.end());
  a.alphabet.assign(letter_names.begin(), letter_names.end());
  a.locations.assign(location_names.begin(), location_names.end());

  std::map<std::string, int> clock_of, letter_of, loc_of;
  for (int i = 0; i < a.num_clocks(); ++i) clock_of[a.clocks[i]] = i;
  for (int i = 0; i < a.num_letters(); ++i) letter_of[a.alphabet[i]] = i;
  for (int i = 0; i < a.num_locations(); ++i) loc_of[a.locations[i]] = i;

  a.initial = loc_of[initial_name];
  a.accepting.assign(a.locations.size(), 0);
  for (const std::string& name : accepting_names) a.accepting[loc_of[name]] = 1;

  for (const RawTransition& rt : raw) {
    Transition t;
    t.src = loc_of[rt.src];
    t.dst = loc_of[rt.dst];
    auto letter_it = letter_of.find(rt.letter);
    if (letter_it == letter_of.end())
      throw InputError("letter not in alphabet: " + rt.letter);
    t.letter = letter_it->second;
    if (rt.guard != "true") {
      std::stringstream atoms(rt.guard);
      std::string atom_text;
      while (std::getline(atoms, atom_text, '&')) {
        RawAtom ra = parse_atom(atom_text);
        auto clock_it = clock_of.find(ra.clock);
        if (clock_it == clock_of.end())
          throw InputError("guard uses unknown clock: " + ra.clock);
        int clock = clock_it->second;
        if (ra.op == "<") t.guard.push_back({clock, Cmp::Lt, ra.bound});
        else if (ra.op == "<=") t.guard.push_back({clock, Cmp::Le, ra.bound});
        else if (ra.op == ">=") t.guard.push_back({clock, Cmp::Ge, ra.bound});
        else if (ra.op == ">") t.guard.push_back({clock, Cmp::Gt, ra.bound});
        else {  // "=" expands to <= and >=
          t.guard.push_back({clock, Cmp::Le, ra.bound});
          t.guard.push_back({clock, Cmp::Ge, ra.bound});
        }
      }
    }
    std::sort(t.guard.begin(), t.guard.end());
    std::set<int> resets;
    for (const std::string& name : rt.resets) {
      auto clock_it = clock_of.find(name);
      if (clock_it == clock_of.end())
        throw InputError("reset of unknown clock: " + name);
      resets.insert(clock_it->second);
    }
    t.resets.assign(resets.begin(), resets.end());
    a.transitions.push_back(std::move(t));
  }
  std::sort(a.transitions.begin(), a.transitions.end());
  return a;
}

std::string dump_ta(const TimedAutomaton& a) {
  std::ostringstream out;
  out << "clocks";
  for (const std::string& c : a.clocks) out << ' ' << c;
  out << "\nalphabet";
  for (const std::string& s : a.alphabet) out << ' ' << s;
  out << "\ninitial " << a.locations[a.initial] << "\naccepting";
  for (int i = 0; i < a.num_locations(); ++i)
    if (a.accepting[i]) out << ' ' << a.locations[i];
  out << '\n';
  for (const Transition& t : a.transitions) {
    out << "trans " << a.locations[t.src] << " -> " << a.locations[t.dst]
        << " on " << a.alphabet[t.letter] << " when ";
    if (t.guard.empty()) {
      out << "true";
    } else {
      for (std::size_t i = 0; i < t.guard.size(); ++i) {
        if (i) out << " & ";
        const Atom& atom = t.guard[i];
        out << a.clocks[atom.clock] << cmp_string(atom.cmp) << atom.bound;
      }
    }
    out << " reset";
    if (t.resets.empty()) {
      out << " -";
    } else {
      for (int x : t.resets) out << ' ' << a.clocks[x];
    }
    out << '\n';
  }
  return out.str();
}

Word parse_word(const TimedAutomaton& a, const std::string& text) {
  Word w;
  for (const std::string& tok : split_ws(text)) {
    auto it = std::find(a.alphabet.begin(), a.alphabet.end(), tok);
    if (it == a.alphabet.end()) throw InputError("letter not in alphabet: " + tok);
    w.push_back(static_cast<int>(it - a.alphabet.begin()));
  }
  return w;
}

std::string word_string(const TimedAutomaton& a, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.alphabet[w[i]];
  }
  return out;
}

}  // namespace tsa::ta
