#ifndef TSA_RATIONAL_HPP
#define TSA_RATIONAL_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace tsa {

// Exact rational arithmetic for clock values and delays.  All timing
// quantities in this library are rationals; floating point is never used.
using Rat = boost::rational<long long>;

// Largest integer <= r (works for negative values too, though clock values
// are never negative in practice).
long long rat_floor(const Rat& r);

// Fractional part r - floor(r), always in [0, 1).
Rat rat_frac(const Rat& r);

// Parses "p", "p/q" or "-p/q" with q > 0.  Throws InputError on anything
// else (including q == 0).
Rat parse_rat(const std::string& text);

// Renders as "p" for integers, otherwise "p/q" in lowest terms.
std::string to_string(const Rat& r);

}  // namespace tsa

#endif  // TSA_RATIONAL_HPP
