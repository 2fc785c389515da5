#include "exemplar/rational.hpp"

#include <cstdlib>

namespace exemplar {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto parse_ll = [](const std::string& s, long long& out) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = std::strtoll(s.c_str(), nullptr, 10);
    return true;
  };
  auto slash = text.find('/');
  long long num = 0, den = 1;
  if (slash == std::string::npos) {
    if (!parse_ll(text, num)) return std::nullopt;
  } else {
    if (!parse_ll(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_ll(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

}  // namespace exemplar
