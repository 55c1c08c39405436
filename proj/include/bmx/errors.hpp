// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bmx {

/// Operands from two different fields were combined.
class FieldMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A brute-force verifier refused to run because the subset space is too large.
class EnumerationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No seed met the goodness threshold (non-expanding graph or wrong parameters).
class ExpansionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The residual was still nonzero when the iteration budget ran out.
class DecodeFailed : public std::runtime_error {
public:
    DecodeFailed(const std::string& what, std::uint64_t residual_weight_estimate,
                 std::uint32_t iterations)
        : std::runtime_error(what),
          residual_weight_estimate(residual_weight_estimate),
          iterations(iterations) {}

    std::uint64_t residual_weight_estimate = 0;
    std::uint32_t iterations = 0;
};

/// A serialized artifact could not be parsed or failed its header checks.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bmx
