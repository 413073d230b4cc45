#pragma once

#include <stdexcept>
#include <string>

namespace spdgeo {

// Base error carrying a stable machine-readable code (used by the CLI).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define SPDGEO_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}       \
    }

SPDGEO_DEFINE_ERROR(NotSymmetric);
SPDGEO_DEFINE_ERROR(NotPositiveDefinite);
SPDGEO_DEFINE_ERROR(DimensionMismatch);
SPDGEO_DEFINE_ERROR(ModelMismatch);
SPDGEO_DEFINE_ERROR(CoincidentPoints);
SPDGEO_DEFINE_ERROR(NotStabilized);
SPDGEO_DEFINE_ERROR(BadCodims);
SPDGEO_DEFINE_ERROR(TooLarge);
SPDGEO_DEFINE_ERROR(NotInPencil);
SPDGEO_DEFINE_ERROR(ParseError);
SPDGEO_DEFINE_ERROR(DivisionByZeroSeries);
SPDGEO_DEFINE_ERROR(WindowExhausted);
SPDGEO_DEFINE_ERROR(NotPositive);
SPDGEO_DEFINE_ERROR(NotSorted);
SPDGEO_DEFINE_ERROR(SemiaxisMismatch);
SPDGEO_DEFINE_ERROR(InvalidIndex);

#undef SPDGEO_DEFINE_ERROR

} // namespace spdgeo
