#ifndef ANONCOMM_COMMON_HPP
#define ANONCOMM_COMMON_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace anoncomm {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an enumeration would exceed the configured state-space cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::uint64_t required, std::uint64_t cap)
      : Error("state space of " + std::to_string(required) +
              " states exceeds cap of " + std::to_string(cap)),
        required_states(required),
        cap(cap) {}
  std::uint64_t required_states;
  std::uint64_t cap;
};

/// Exact rational, always stored in lowest terms with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace anoncomm

#endif  // ANONCOMM_COMMON_HPP
