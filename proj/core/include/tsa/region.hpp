#ifndef TSA_REGION_HPP
#define TSA_REGION_HPP

#include <compare>
#include <string>
#include <vector>

#include "tsa/rational.hpp"
#include "tsa/ta.hpp"

namespace tsa::region {

// Integral part marker for clock values strictly above the constant K.
inline constexpr int kAboveK = -1;

// A clock region for a fixed constant K.  Two valuations are equivalent iff
//   (1) per clock, equal integral parts or both values strictly above K,
//   (2) the ordering of fractional parts agrees across all clock pairs,
//   (3) per clock, zero fractional parts agree.
// Note (2) and (3) constrain clocks above K too, so the region keeps
// fractional information for every clock.
//
// Canonical form: `blocks` partitions all clocks by fractional value in
// increasing order, each block sorted by clock index; `first_zero` says
// whether blocks[0] is the zero-fraction block.  int_part stores values in
// [0, K] or kAboveK; int_part == K is only possible with a zero fraction
// (K plus a positive fraction is already above K).
struct Region {
  long long k = 0;
  std::vector<int> int_part;             // per clock
  std::vector<std::vector<int>> blocks;  // fractional blocks, increasing
  bool first_zero = false;

  auto operator<=>(const Region&) const = default;

  int num_clocks() const { return static_cast<int>(int_part.size()); }
  // Index of the block containing clock x.
  int block_of(int x) const;
};

// The region of valuation nu for constant k; values must be >= 0.
Region region_of(const ta::ClockValuation& nu, long long k);

// The unique region seen next when time elapses: the zero block slides into
// (0,1), or else the maximal fractional block wraps around to zero and its
// integral parts advance.  Regions of clocks above K keep rotating, so every
// region has a successor.
Region immediate_time_successor(const Region& d);

// Region with the listed clocks set to 0.
Region region_reset(const Region& d, const std::vector<int>& resets);

// Truth of guard atom `clock cmp bound` on every valuation in d; the bound
// must be <= d.k.
bool region_satisfies(const Region& d, const ta::Atom& atom);
bool region_satisfies(const Region& d, const ta::Guard& g);

// Fractional-part predicates.
bool region_zero(const Region& d, int x);                // fr(x) == 0
bool region_fraction_less(const Region& d, int x, int y);  // fr(x) < fr(y)
bool region_same_fraction(const Region& d, int x, int y);  // fr(x) == fr(y)

// Cyclic betweenness of fractional parts: starting at fr(x) and moving
// "up" with wrap-around, fr(y) is passed strictly before fr(z).  False
// whenever any two of the three fractions coincide.
bool region_between(const Region& d, int x, int y, int z);

// Does d contain a valuation whose clock values are all multiples of eps?
// Holds iff the number of distinct nonzero fractional blocks is at most
// 1/eps - 1.  eps must be 1/k for an integer k >= 1.
bool region_restricted_nonempty(const Region& d, const Rat& eps);

// Fractional distance from fr(nu(x)) up to fr(nu(y)), wrapping around:
// fr(y) - fr(x) if fr(y) >= fr(x), else 1 - (fr(x) - fr(y)).
Rat frac_distance(const ta::ClockValuation& nu, int x, int y);

// Human-readable form like "0=x<y<1", "0<x<y=1" or "0=y; x>1".
std::string region_string(const Region& d,
                          const std::vector<std::string>& clock_names);

// Region graph --------------------------------------------------------------

struct RegionGraph {
  struct Node {
    int loc = 0;
    Region region;
  };
  // letter == kDelta marks the time-successor edge; discrete edges carry the
  // index of the originating automaton transition in `ta_transition`.
  static constexpr int kDelta = -1;
  struct Edge {
    int src = 0;
    int letter = kDelta;
    int ta_transition = -1;
    int dst = 0;
  };

  long long k = 0;
  int num_letters = 0;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;  // node -> edge indices, in edge order
  int initial = 0;
  std::vector<char> accepting;  // per node

  int num_nodes() const { return static_cast<int>(nodes.size()); }
};

struct RegionGraphOptions {
  long long max_nodes = 1'000'000;
};

// Reachable part of the region graph of `a` (constant K = max_constant);
// every node has exactly one outgoing delta edge plus its enabled discrete
// edges.  Throws ResourceError when max_nodes is exceeded.
RegionGraph build_region_graph(const ta::TimedAutomaton& a,
                               const RegionGraphOptions& opt = {});

// Graphviz rendering; node labels are "loc|region".
std::string to_dot(const RegionGraph& g, const ta::TimedAutomaton& a);

}  // namespace tsa::region

#endif  // TSA_REGION_HPP
