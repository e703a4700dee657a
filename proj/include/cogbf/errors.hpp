// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cogbf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input outside the mathematical domain of the operation (e.g. non-Hermitian).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix singular (or an eigenvalue below the floor) where an inverse is required.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Iterative search failed to converge within its caps.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid system or solver configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cogbf
