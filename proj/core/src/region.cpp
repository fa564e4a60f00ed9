#include "tsa/region.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "tsa/errors.hpp"

namespace tsa::region {

int Region::block_of(int x) const {
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int c : blocks[b])
      if (c == x) return b;
  throw InputError("clock not in region");
}

Region region_of(const ta::ClockValuation& nu, long long k) {
  Region d;
  d.k = k;
  d.int_part.resize(nu.size());
  std::map<Rat, std::vector<int>> by_frac;
  for (int x = 0; x < static_cast<int>(nu.size()); ++x) {
    if (nu[x] < Rat(0)) throw InputError("negative clock value");
    d.int_part[x] =
        nu[x] > Rat(k) ? kAboveK : static_cast<int>(rat_floor(nu[x]));
    by_frac[rat_frac(nu[x])].push_back(x);
  }
  for (auto& [frac, clocks] : by_frac) {
    if (frac == Rat(0)) d.first_zero = true;
    d.blocks.push_back(clocks);  // map iterates fractions in increasing order
  }
  return d;
}

Region immediate_time_successor(const Region& d) {
  Region out = d;
  if (out.blocks.empty()) return out;  // no clocks: time changes nothing
  if (out.first_zero) {
    // The zero block slides into (0,1), below every other fraction, so it
    // keeps its position.  Integral parts stay, except that K becomes
    // "above K" the instant a positive fraction appears.
    out.first_zero = false;
    for (int x : out.blocks.front())
      if (out.int_part[x] == static_cast<int>(out.k)) out.int_part[x] = kAboveK;
  } else {
    // The maximal fractions reach the next integer: the top block wraps to
    // the zero position and its integral parts advance.
    std::vector<int> wrapped = out.blocks.back();
    out.blocks.pop_back();
    out.blocks.insert(out.blocks.begin(), wrapped);
    out.first_zero = true;
    for (int x : wrapped)
      if (out.int_part[x] != kAboveK) ++out.int_part[x];
  }
  return out;
}

Region region_reset(const Region& d, const std::vector<int>& resets) {
  if (resets.empty()) return d;
  std::set<int> rs(resets.begin(), resets.end());
  Region out = d;
  out.blocks.clear();

  std::set<int> zero(rs.begin(), rs.end());
  if (d.first_zero)
    for (int x : d.blocks.front()) zero.insert(x);
  out.blocks.emplace_back(zero.begin(), zero.end());
  out.first_zero = true;

  for (int b = d.first_zero ? 1 : 0; b < static_cast<int>(d.blocks.size());
       ++b) {
    std::vector<int> kept;
    for (int x : d.blocks[b])
      if (!rs.count(x)) kept.push_back(x);
    if (!kept.empty()) out.blocks.push_back(std::move(kept));
  }
  for (int x : rs) out.int_part[x] = 0;
  return out;
}

bool region_zero(const Region& d, int x) {
  return d.first_zero && d.block_of(x) == 0;
}

bool region_fraction_less(const Region& d, int x, int y) {
  return d.block_of(x) < d.block_of(y);
}

bool region_same_fraction(const Region& d, int x, int y) {
  return d.block_of(x) == d.block_of(y);
}

bool region_satisfies(const Region& d, const ta::Atom& atom) {
  if (atom.bound > d.k) throw InputError("guard constant exceeds region constant");
  const int ip = d.int_part[atom.clock];
  if (ip == kAboveK) return atom.cmp == ta::Cmp::Gt || atom.cmp == ta::Cmp::Ge;
  const long long i = ip;
  const long long c = atom.bound;
  if (region_zero(d, atom.clock)) {
    switch (atom.cmp) {
      case ta::Cmp::Lt: return i < c;
      case ta::Cmp::Le: return i <= c;
      case ta::Cmp::Ge: return i >= c;
      case ta::Cmp::Gt: return i > c;
    }
  } else {
    // Every valuation in d has this clock strictly inside (i, i+1).
    switch (atom.cmp) {
      case ta::Cmp::Lt: return c >= i + 1;
      case ta::Cmp::Le: return c >= i + 1;
      case ta::Cmp::Ge: return i >= c;
      case ta::Cmp::Gt: return i >= c;
    }
  }
  return false;
}

bool region_satisfies(const Region& d, const ta::Guard& g) {
  for (const ta::Atom& atom : g)
    if (!region_satisfies(d, atom)) return false;
  return true;
}

bool region_between(const Region& d, int x, int y, int z) {
  const int nb = static_cast<int>(d.blocks.size());
  if (nb == 0) return false;
  const int px = d.block_of(x);
  const int ry = (d.block_of(y) - px + nb) % nb;
  const int rz = (d.block_of(z) - px + nb) % nb;
  // Any coincidence of fractions makes one of the offsets degenerate.
  return 0 < ry && ry < rz;
}

bool region_restricted_nonempty(const Region& d, const Rat& eps) {
  if (eps.numerator() != 1 || eps.denominator() < 1)
    throw InputError("sampling period must be 1/k");
  const long long k = eps.denominator();
  const long long nonzero_blocks =
      static_cast<long long>(d.blocks.size()) - (d.first_zero ? 1 : 0);
  // Multiples of 1/k admit exactly k-1 distinct nonzero fractions; integral
  // parts can always be realized.
  return nonzero_blocks <= k - 1;
}

Rat frac_distance(const ta::ClockValuation& nu, int x, int y) {
  const Rat fx = rat_frac(nu[x]);
  const Rat fy = rat_frac(nu[y]);
  return fy >= fx ? fy - fx : Rat(1) - (fx - fy);
}

// Printing ------------------------------------------------------------------

namespace {

// Rank of a clock's fractional value: 0 for a zero fraction, then 1, 2, ...
int frac_rank(const Region& d, int block) {
  return d.first_zero ? block : block + 1;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string region_string(const Region& d,
                          const std::vector<std::string>& clock_names) {
  if (d.num_clocks() == 0) return "-";

  // Clusters of equal value: same integral part and same fraction.
  std::map<std::pair<long long, int>, std::vector<std::string>> clusters;
  std::vector<std::vector<std::string>> above(d.blocks.size());
  for (int x = 0; x < d.num_clocks(); ++x) {
    const int b = d.block_of(x);
    if (d.int_part[x] == kAboveK)
      above[b].push_back(clock_names[x]);
    else
      clusters[{d.int_part[x], frac_rank(d, b)}].push_back(clock_names[x]);
  }

  std::string s;
  bool first = true;
  long long prev_int = 0;
  bool prev_zero = false;
  std::size_t idx = 0;
  for (const auto& [key, names] : clusters) {
    const auto [i, rank] = key;
    const bool zero = rank == 0;
    const bool last = ++idx == clusters.size();
    const std::string cl = join(names, "=");
    if (first) {
      s = std::to_string(i) + (zero ? "=" : "<") + cl;
    } else if (zero) {
      // A landmark is needed when the previous open interval does not
      // already abut this integer.
      if (!prev_zero && i > prev_int + 1)
        s += "<" + std::to_string(prev_int + 1);
      s += "<" + cl + "=" + std::to_string(i);
    } else if (i == prev_int && !prev_zero) {
      s += "<" + cl;  // same open unit interval
    } else if (i == prev_int && prev_zero) {
      s += "<" + cl;  // interval right above the previous exact value
    } else {
      if (!prev_zero) s += "<" + std::to_string(prev_int + 1);
      if (i > (prev_zero ? prev_int : prev_int + 1)) s += "<" + std::to_string(i);
      s += "<" + cl;
    }
    if (last && !zero) s += "<" + std::to_string(i + 1);
    prev_int = i;
    prev_zero = zero;
    first = false;
  }

  // Clocks above the constant: only "value > K" plus their fraction order
  // is known, so they are listed apart from the chain.
  for (const auto& names : above) {
    if (names.empty()) continue;
    std::string piece = std::to_string(d.k) + "<" + join(names, ",");
    if (s.empty())
      s = piece;
    else
      s += "; " + piece;
  }
  return s;
}

}  // namespace tsa::region
