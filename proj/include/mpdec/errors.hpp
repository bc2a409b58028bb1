#pragma once

#include <stdexcept>
#include <string>

namespace mpdec {

/// Bad input: wrong dimensions, out-of-range parameters, malformed schedules.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure inside the numerics: non-finite rates, non-positive states,
/// singular linear systems.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mpdec
