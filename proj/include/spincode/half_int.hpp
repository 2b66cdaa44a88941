#pragma once

#include <cstdlib>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace spincode {

/// Exact half-integer, stored as twice its value.  Used for every spin,
/// projection, rank and shift label so that 1/2 never touches a double.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice(2 * whole) {}  // NOLINT: implicit on purpose

  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice = t;
    return h;
  }

  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr double value() const { return 0.5 * twice; }

  /// 2j+1, the dimension of the spin-j irrep.
  constexpr int dim() const { return twice + 1; }

  constexpr HalfInt operator-() const { return from_twice(-twice); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice + o.twice); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice - o.twice); }
  constexpr HalfInt operator*(int s) const { return from_twice(twice * s); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  /// Only valid for integer-valued labels (ranks, shifts).
  constexpr int as_int() const {
    return twice % 2 == 0 ? twice / 2
                          : throw std::logic_error("HalfInt::as_int on half-odd value");
  }

  std::string str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

inline constexpr HalfInt abs(HalfInt h) { return HalfInt::from_twice(std::abs(h.twice)); }

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

/// Parses "7/2", "-3/2" or "4".
inline HalfInt parse_half_int(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return HalfInt(std::stoi(s));
  if (s.substr(slash + 1) != "2") throw std::invalid_argument("half-integer must have denominator 2: " + s);
  return HalfInt::from_twice(std::stoi(s.substr(0, slash)));
}

}  // namespace spincode

template <>
struct std::hash<spincode::HalfInt> {
  size_t operator()(spincode::HalfInt h) const noexcept { return std::hash<int>{}(h.twice); }
};
