// errors.hpp: exception types shared by the wqed modules

#pragma once

#include <stdexcept>
#include <string>

namespace wqed {

/// Rejected input: bad parameters, malformed grids, unreadable files.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its contract. The message is prefixed
/// with the module that raised it, e.g. "lattice_oracle: norm drift ...".
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(module) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

} // namespace wqed
