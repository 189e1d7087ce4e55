// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bjorling {

/// Malformed expression text. `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Evaluation left the domain of an elementary operation (pole, negative sqrt).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented precondition.
class DataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure while solving: blow-up or a degenerate immersion.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mesh construction or export failure.
class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bjorling
