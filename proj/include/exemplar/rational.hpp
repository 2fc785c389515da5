#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>

namespace exemplar {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);

// Accepts "3", "-3", "3/2", "-3/2". Rejects zero denominators.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace exemplar
