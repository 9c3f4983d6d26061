// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file error.hpp
 * @brief Exception hierarchy shared by every hubmetric module.
 *
 * Each category maps onto one CLI exit code: validation errors (2),
 * solver failures (3) and I/O or persistence failures (4).
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hubmetric {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: bad model parameters, inconsistent profiles, malformed config.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Sector too large for exact diagonalization.
class DimensionOverflow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An iterative solver did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    [[nodiscard]] double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Any other solver-side failure (e.g. a non-canonical tensor train).
class SolverError : public Error {
public:
    using Error::Error;
};

/// File system or format failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Persisted file does not match its recorded checksum.
class ChecksumError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace hubmetric
