#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "tsa/errors.hpp"
#include "tsa/region.hpp"
#include "tsa/ta.hpp"

using namespace tsa;
using namespace tsa::region;
using ta::ClockValuation;

namespace {

// Grid of clock values with denominators 1..3, spanning well past K for the
// constants used below.  Dense enough to hit every fractional pattern.
std::vector<Rat> value_grid() {
  std::set<Rat> vals;
  for (long long q = 1; q <= 3; ++q)
    for (long long p = 0; p <= 3 * q; ++p) vals.insert(Rat(p, q));
  return {vals.begin(), vals.end()};
}

// Reference equivalence, straight from the definition: equal integral parts
// (or both above K), matching fractional order, matching zero fractions.
bool reference_equiv(const ClockValuation& u, const ClockValuation& v,
                     long long k) {
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i) {
    const bool above_u = u[i] > Rat(k), above_v = v[i] > Rat(k);
    if (above_u != above_v) return false;
    if (!above_u && rat_floor(u[i]) != rat_floor(v[i])) return false;
  }
  for (int i = 0; i < n; ++i)
    if ((rat_frac(u[i]) == Rat(0)) != (rat_frac(v[i]) == Rat(0))) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((rat_frac(u[i]) <= rat_frac(u[j])) !=
          (rat_frac(v[i]) <= rat_frac(v[j])))
        return false;
  return true;
}

// Reference time successor: nudge the valuation just enough to change its
// region and read the region off the nudged valuation.
Region reference_successor(const ClockValuation& nu, long long k) {
  bool any_zero = false;
  Rat max_fr(0);
  for (const Rat& v : nu) {
    if (rat_frac(v) == Rat(0)) any_zero = true;
    max_fr = std::max(max_fr, rat_frac(v));
  }
  // Grid fractions are multiples of 1/6, so 1/12 stays inside the next
  // region in the zero case.
  const Rat delta = any_zero ? Rat(1, 12) : Rat(1) - max_fr;
  return region_of(ta::time_step(nu, delta), k);
}

// Forward closure under time passage: the successor chain is eventually
// periodic (it climbs into the band above the constant and rotates there),
// so collecting until the first repeat yields every reachable region.
std::vector<Region> successor_closure(const Region& d) {
  std::vector<Region> chain{d};
  std::set<Region> seen{d};
  Region cur = d;
  for (int i = 0; i < 256; ++i) {
    cur = immediate_time_successor(cur);
    if (!seen.insert(cur).second) return chain;
    chain.push_back(cur);
  }
  REQUIRE_MESSAGE(false, "time successors never repeat");
  return chain;
}

}  // namespace

TEST_CASE("region identity matches the definitional equivalence") {
  const std::vector<Rat> grid = value_grid();
  for (long long k : {1LL, 2LL}) {
    std::vector<ClockValuation> family;
    for (const Rat& x : grid)
      for (const Rat& y : grid) family.push_back({x, y});
    std::vector<Region> regions;
    regions.reserve(family.size());
    for (const ClockValuation& nu : family) regions.push_back(region_of(nu, k));
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i; j < family.size(); ++j) {
        const bool expect = reference_equiv(family[i], family[j], k);
        REQUIRE(expect == (regions[i] == regions[j]));
      }
  }
}

TEST_CASE("canonical form invariants") {
  const std::vector<Rat> grid = value_grid();
  for (const Rat& x : grid)
    for (const Rat& y : grid) {
      const ClockValuation nu{x, y};
      const Region d = region_of(nu, 1);
      // Every clock sits in exactly one block.
      std::set<int> seen;
      for (const auto& block : d.blocks) {
        REQUIRE(!block.empty());
        REQUIRE(std::is_sorted(block.begin(), block.end()));
        for (int c : block) REQUIRE(seen.insert(c).second);
      }
      REQUIRE(static_cast<int>(seen.size()) == d.num_clocks());
      for (int i = 0; i < d.num_clocks(); ++i) {
        const Rat& v = nu[i];
        if (v > Rat(1)) {
          CHECK(d.int_part[i] == kAboveK);
        } else {
          CHECK(d.int_part[i] == rat_floor(v));
        }
        // The integral part K is only reachable with fraction zero.
        if (d.int_part[i] == d.k) CHECK(region_zero(d, i));
        CHECK(region_zero(d, i) == (rat_frac(v) == Rat(0)));
        CHECK((d.first_zero && d.block_of(i) == 0) == region_zero(d, i));
      }
    }
}

TEST_CASE("one clock compared against one gives five regions") {
  std::set<Region> distinct;
  for (const Rat& v : value_grid()) distinct.insert(region_of({v}, 1));
  CHECK(distinct.size() == 5);  // {0}, (0,1), {1}, >1 broken, >1 whole
}

TEST_CASE("time successor agrees with the nudge oracle") {
  const std::vector<Rat> grid = value_grid();
  for (long long k : {1LL, 2LL})
    for (const Rat& x : grid)
      for (const Rat& y : grid) {
        const ClockValuation nu{x, y};
        REQUIRE(immediate_time_successor(region_of(nu, k)) ==
                reference_successor(nu, k));
      }
}

TEST_CASE("time successors of saturated regions keep rotating") {
  const Region d = region_of({Rat(5, 2), Rat(7, 3)}, 1);
  const std::vector<Region> cycle = successor_closure(d);
  CHECK(cycle.size() == 4);  // two fractions rotating through zero
  for (std::size_t i = 0; i < cycle.size(); ++i)
    CHECK(cycle[i] != cycle[(i + 1) % cycle.size()]);
}

TEST_CASE("time successor without clocks is the identity") {
  const Region d = region_of({}, 0);
  CHECK(immediate_time_successor(d) == d);
}

TEST_CASE("reset commutes with taking regions") {
  const std::vector<Rat> grid = value_grid();
  const std::vector<std::vector<int>> reset_sets{{}, {0}, {1}, {0, 1}};
  for (const Rat& x : grid)
    for (const Rat& y : grid) {
      const ClockValuation nu{x, y};
      for (const auto& rs : reset_sets)
        REQUIRE(region_reset(region_of(nu, 1), rs) ==
                region_of(ta::apply_resets(nu, rs), 1));
    }
}

TEST_CASE("guard truth is read off the region") {
  const std::vector<Rat> grid = value_grid();
  for (long long k : {1LL, 2LL})
    for (const Rat& x : grid)
      for (const Rat& y : grid) {
        const ClockValuation nu{x, y};
        const Region d = region_of(nu, k);
        for (int clock = 0; clock < 2; ++clock)
          for (ta::Cmp cmp :
               {ta::Cmp::Lt, ta::Cmp::Le, ta::Cmp::Ge, ta::Cmp::Gt})
            for (long long bound = 0; bound <= k; ++bound) {
              const ta::Atom atom{clock, cmp, bound};
              REQUIRE(region_satisfies(d, atom) ==
                      ta::guard_satisfied({atom}, nu));
            }
      }
  CHECK_THROWS_AS(
      region_satisfies(region_of({Rat(0)}, 1), ta::Atom{0, ta::Cmp::Lt, 2}),
      InputError);
}

TEST_CASE("fractional predicates match the representative valuation") {
  const std::vector<Rat> grid = value_grid();
  for (const Rat& x : grid)
    for (const Rat& y : grid) {
      const ClockValuation nu{x, y};
      const Region d = region_of(nu, 1);
      CHECK(region_fraction_less(d, 0, 1) == (rat_frac(x) < rat_frac(y)));
      CHECK(region_same_fraction(d, 0, 1) == (rat_frac(x) == rat_frac(y)));
      CHECK(region_same_fraction(d, 0, 0));
      CHECK_FALSE(region_fraction_less(d, 1, 1));
    }
}

TEST_CASE("betweenness golden cases") {
  // fr(a)=0, fr(b)=fr(e)=1/4, fr(c)=1/2, fr(d)=3/4
  const Region d =
      region_of({Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1, 4)}, 1);
  const int a = 0, b = 1, c = 2, dd = 3, e = 4;
  CHECK(region_between(d, b, c, dd));
  CHECK(region_between(d, c, dd, b));
  CHECK_FALSE(region_between(d, dd, c, b));
  // Any coincidence among the three fractions kills betweenness.
  CHECK_FALSE(region_between(d, b, e, c));
  CHECK_FALSE(region_between(d, a, b, e));
  CHECK_FALSE(region_between(d, b, b, c));
  CHECK_FALSE(region_between(d, c, b, b));
}

TEST_CASE("betweenness equals the time-successor definition") {
  // Reference: some time successor D' orders the fractions as x < y < z.
  const std::vector<Rat> grid{Rat(0),    Rat(1, 4), Rat(1, 2),
                              Rat(3, 4), Rat(1),    Rat(3, 2)};
  for (const Rat& x : grid)
    for (const Rat& y : grid)
      for (const Rat& z : grid) {
        const Region d = region_of({x, y, z}, 1);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) {
              bool expect = false;
              for (const Region& succ : successor_closure(d))
                if (region_fraction_less(succ, i, j) &&
                    region_fraction_less(succ, j, l))
                  expect = true;
              REQUIRE(region_between(d, i, j, l) == expect);
            }
      }
}

TEST_CASE("restricted nonemptiness golden cases") {
  const Region strict = region_of({Rat(1, 3), Rat(2, 3)}, 1);  // 0<x<y<1
  CHECK_FALSE(region_restricted_nonempty(strict, Rat(1, 2)));
  CHECK(region_restricted_nonempty(strict, Rat(1, 3)));
  const Region loose = region_of({Rat(0), Rat(1, 2)}, 1);  // 0=x<y<1
  CHECK(region_restricted_nonempty(loose, Rat(1, 2)));
  CHECK(region_restricted_nonempty(region_of({Rat(0), Rat(0)}, 1), Rat(1)));
}

TEST_CASE("restricted nonemptiness equals a grid search") {
  const std::vector<Rat> grid = value_grid();
  std::set<Region> regions;
  for (const Rat& x : grid)
    for (const Rat& y : grid) regions.insert(region_of({x, y}, 1));
  for (long long k : {1LL, 2LL, 3LL, 4LL}) {
    // All valuations over multiples of 1/k, far enough to realize every
    // fractional pattern above K as well.
    std::set<Region> reachable;
    for (long long i = 0; i <= 3 * k; ++i)
      for (long long j = 0; j <= 3 * k; ++j)
        reachable.insert(region_of({Rat(i, k), Rat(j, k)}, 1));
    for (const Region& d : regions)
      REQUIRE(region_restricted_nonempty(d, Rat(1, k)) ==
              (reachable.count(d) > 0));
  }
}

TEST_CASE("fractional distance golden cases") {
  const ClockValuation nu{Rat(0), Rat(1, 4), Rat(11, 20), Rat(3, 4)};
  CHECK(frac_distance(nu, 1, 3) == Rat(1, 2));   // straight ahead
  CHECK(frac_distance(nu, 2, 1) == Rat(7, 10));  // wraps past one
}

TEST_CASE("fractional distances of a pair sum to one") {
  const std::vector<Rat> grid = value_grid();
  for (const Rat& x : grid)
    for (const Rat& y : grid) {
      const ClockValuation nu{x, y};
      const Rat xy = frac_distance(nu, 0, 1), yx = frac_distance(nu, 1, 0);
      CHECK(xy >= Rat(0));
      CHECK(xy < Rat(1));
      if (rat_frac(x) == rat_frac(y)) {
        CHECK(xy == Rat(0));
        CHECK(yx == Rat(0));
      } else {
        CHECK(xy + yx == Rat(1));
      }
    }
}

TEST_CASE("region rendering golden cases") {
  const std::vector<std::string> xy{"x", "y"};
  auto str = [&](const ClockValuation& nu) {
    return region_string(region_of(nu, 1), xy);
  };
  CHECK(str({Rat(0), Rat(0)}) == "0=x=y");
  CHECK(str({Rat(1, 2), Rat(1, 2)}) == "0<x=y<1");
  CHECK(str({Rat(0), Rat(1, 2)}) == "0=x<y<1");
  CHECK(str({Rat(1, 4), Rat(1, 2)}) == "0<x<y<1");
  CHECK(str({Rat(1, 2), Rat(1)}) == "0<x<y=1");
  CHECK(str({Rat(1, 2), Rat(0)}) == "0=y<x<1");
  CHECK(str({Rat(1, 2), Rat(1, 4)}) == "0<y<x<1");
  CHECK(str({Rat(1), Rat(1)}) == "1=x=y");
  CHECK(str({Rat(1), Rat(0)}) == "0=y<x=1");
  CHECK(str({Rat(3, 2), Rat(3, 2)}) == "1<x,y");
  CHECK(str({Rat(3, 2), Rat(5, 4)}) == "1<y; 1<x");
  CHECK(str({Rat(1, 2), Rat(3, 2)}) == "0<x<1; 1<y");
  CHECK(str({Rat(2), Rat(1, 2)}) == "0<y<1; 1<x");
  CHECK(region_string(region_of({}, 0), {}) == "-");
}

TEST_CASE("region graph structure of the shrinking loop") {
  const ta::TimedAutomaton a = ta::parse_ta(
      "clocks x y\n"
      "alphabet a b\n"
      "initial q0\n"
      "accepting q1\n"
      "trans q0 -> q1 on a when x<1 & y<1 reset x\n"
      "trans q1 -> q2 on b when y>=1 & y<=1 reset y\n"
      "trans q2 -> q1 on a when y>0 & x<1 reset x\n");
  const RegionGraph g = build_region_graph(a);
  CHECK(g.k == 1);
  CHECK(g.num_letters == 2);
  CHECK(g.nodes[g.initial].loc == 0);
  CHECK(g.nodes[g.initial].region == region_of({Rat(0), Rat(0)}, 1));

  std::set<std::pair<int, Region>> keys;
  for (const auto& node : g.nodes)
    CHECK(keys.insert({node.loc, node.region}).second);  // nodes are unique

  for (int s = 0; s < g.num_nodes(); ++s) {
    REQUIRE(!g.out[s].empty());
    int deltas = 0;
    for (int ei : g.out[s]) {
      const RegionGraph::Edge& e = g.edges[ei];
      REQUIRE(e.src == s);
      const Region& src = g.nodes[s].region;
      if (e.letter == RegionGraph::kDelta) {
        ++deltas;
        CHECK(g.nodes[e.dst].loc == g.nodes[s].loc);
        CHECK(g.nodes[e.dst].region == immediate_time_successor(src));
      } else {
        const ta::Transition& t = a.transitions[e.ta_transition];
        CHECK(t.letter == e.letter);
        CHECK(t.src == g.nodes[s].loc);
        CHECK(g.nodes[e.dst].loc == t.dst);
        CHECK(region_satisfies(src, t.guard));
        CHECK(g.nodes[e.dst].region == region_reset(src, t.resets));
      }
    }
    CHECK(deltas == 1);  // exactly one time edge per node
    CHECK(g.accepting[s] == a.accepting[g.nodes[s].loc]);
  }

  RegionGraphOptions opt;
  opt.max_nodes = 3;
  CHECK_THROWS_AS(build_region_graph(a, opt), ResourceError);
}
