#include "tsa/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "tsa/errors.hpp"

namespace tsa {

long long rat_floor(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  // r.denominator() > 0 by boost::rational's normal form; round toward -inf.
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

Rat parse_rat(const std::string& raw) {
  std::size_t lo = 0;
  std::size_t hi = raw.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(raw[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(raw[hi - 1]))) --hi;
  const std::string text = raw.substr(lo, hi - lo);

  std::size_t slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long long p = std::stoll(text, &used);
      if (used != text.size()) throw InputError("bad rational: " + raw);
      return Rat(p);
    }
    long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw InputError("bad rational: " + raw);
    long long q = std::stoll(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1 || q <= 0)
      throw InputError("bad rational: " + raw);
    return Rat(p, q);
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational: " + raw);
  } catch (const std::out_of_range&) {
    throw InputError("rational out of range: " + raw);
  }
}

std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace tsa
