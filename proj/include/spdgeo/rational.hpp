#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace spdgeo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& text); // throws ParseError

} // namespace spdgeo
