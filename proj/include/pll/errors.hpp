#ifndef PLL_ERRORS_HPP
#define PLL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pll {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside an operation's domain (x < 0, ln of nonpositive, r <= 0, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An integral that provably diverges where a finite enclosure was requested.
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

// A certified verdict could not be reached at the precision cap.
struct CertificationError : Error {
    explicit CertificationError(const std::string& msg) : Error(msg) {}
};

// A value cannot be represented in the requested form (e.g. a plain dyadic
// whose exponent would itself need astronomically many bits).
struct RepresentabilityError : Error {
    explicit RepresentabilityError(const std::string& msg) : Error(msg) {}
};

// Malformed input text / JSON.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace pll

#endif
