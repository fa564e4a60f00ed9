#ifndef TSA_ERRORS_HPP
#define TSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsa {

// Malformed input: unparseable files, ill-formed automata, bad CLI values.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured budget (states, steps, queue size) was exhausted before the
// computation finished.  Callers may retry with a larger budget; the partial
// result is never returned.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsa

#endif  // TSA_ERRORS_HPP
