#ifndef YBX_ERRORS_HPP
#define YBX_ERRORS_HPP

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ybx {

// Mathematical or validation failure (bad table, broken axiom, violated
// precondition of a construction).  The CLI maps it to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap was hit.  This is not a mathematical verdict; the
// CLI maps it to exit code 2 so callers can degrade gracefully.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxGroupElements = 1'000'000;

// Element cap for group materialization; YBX_MAX_GROUP_ELEMS overrides it.
inline std::size_t max_group_elements() {
  if (char const* env = std::getenv("YBX_MAX_GROUP_ELEMS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return kDefaultMaxGroupElements;
}

}  // namespace ybx

#endif  // YBX_ERRORS_HPP
