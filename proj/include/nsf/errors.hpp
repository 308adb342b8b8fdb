#pragma once

#include <stdexcept>
#include <string>

namespace nsf {

/// Bad user input: a parameter outside its admissible range, a malformed
/// config entry, an incompatible boundary/initial pairing.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// The numerics failed: root solve did not converge, a field left the
/// admissible set, an orbit did not connect.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nsf
