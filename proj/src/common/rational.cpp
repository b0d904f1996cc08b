#include "sage/common/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace sage {

std::string rat_to_pddl(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  // Try to express as a short decimal.
  std::int64_t den = r.denominator();
  int tens = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++tens;
  }
  int fives = 0;
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den == 1) {
    int digits = tens > fives ? tens : fives;
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    std::int64_t scaled = r.numerator() * (scale / r.denominator());
    const bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string frac = std::to_string(scaled);
    while (static_cast<int>(frac.size()) <= digits) frac.insert(frac.begin(), '0');
    frac.insert(frac.end() - digits, '.');
    return (neg ? "-" : "") + frac;
  }
  return "(/ " + std::to_string(r.numerator()) + " " + std::to_string(r.denominator()) + ")";
}

Rat rat_from_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty numeric literal");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  bool any = false;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
    whole = whole * 10 + (text[i] - '0');
    any = true;
  }
  std::int64_t num = whole;
  std::int64_t den = 1;
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      any = true;
    }
  }
  if (!any || i != text.size()) throw std::invalid_argument("bad numeric literal: " + text);
  Rat r(num, den);
  return neg ? -r : r;
}

}  // namespace sage
