#include "spdgeo/rational.hpp"

#include <sstream>

#include "spdgeo/errors.hpp"

namespace spdgeo {

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

Rational rational_from_string(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw ParseError("invalid rational literal: " + text);
    }
}

} // namespace spdgeo
