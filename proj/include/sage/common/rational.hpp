#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <string>

namespace sage {

// Exact rational arithmetic for the symbolic layer. Magnitudes stay tiny
// (inventory counts, linear coefficients), so int64 components suffice.
using Rat = boost::rational<std::int64_t>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Renders "3", "0.5" (when the denominator divides a power of ten) or
// "(/ n d)" otherwise; all three forms re-parse to the same value.
std::string rat_to_pddl(const Rat& r);

// Parses "3", "-2", "4.25". Throws std::invalid_argument on junk.
Rat rat_from_decimal(const std::string& text);

}  // namespace sage

template <>
struct std::hash<sage::Rat> {
  std::size_t operator()(const sage::Rat& r) const noexcept {
    const std::size_t a = std::hash<std::int64_t>{}(r.numerator());
    const std::size_t b = std::hash<std::int64_t>{}(r.denominator());
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};
