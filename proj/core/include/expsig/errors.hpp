// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace expsig {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad value, shape mismatch, out-of-domain input,
/// evaluation at a singular point.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A guard refused work whose size or cost exceeds a hard cap.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// Numerical breakdown: failed factorization, non-finite blowup.
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace expsig
