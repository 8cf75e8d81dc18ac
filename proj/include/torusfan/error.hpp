#ifndef TORUSFAN_ERROR_HPP
#define TORUSFAN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace torusfan {

/// Malformed or out-of-contract input: bad JSON, unknown ids, violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical check that was required to pass did not.  Carries witnesses.
class CheckFailure : public std::runtime_error {
public:
    CheckFailure(const std::string& what, std::vector<std::string> witnesses = {})
        : std::runtime_error(what), witnesses_(std::move(witnesses)) {}

    const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

private:
    std::vector<std::string> witnesses_;
};

}  // namespace torusfan

#endif
