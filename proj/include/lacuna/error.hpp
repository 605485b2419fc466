#ifndef LACUNA_ERROR_HPP
#define LACUNA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lacuna {

enum class Errc {
    DimensionMismatch,
    NotStartingAtZero,
    NotStrictlyIncreasing,
    OutOfHorizon,
    HorizonTooShort,
    BadGeneratorParam,
    BadExponent,
    EmptyBattery,
    PrefixExhausted,
    NotMonotone,
    InvalidArgument,
    ParseError,
};

const char* errc_name(Errc c);

/// Library-wide error. Carries a machine-checkable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace lacuna

#endif
