// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace chipsim {

/// Malformed input text (model descriptor or config file).
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a model or platform invariant.
class ValidationError : public std::runtime_error {
   public:
    explicit ValidationError(const std::string& what, std::optional<std::size_t> layer = std::nullopt)
        : std::runtime_error(layer ? "layer " + std::to_string(*layer) + ": " + what : what), layer_(layer) {}

    /// Offending layer index, when the error is tied to one layer.
    std::optional<std::size_t> layer() const { return layer_; }

   private:
    std::optional<std::size_t> layer_;
};

/// Platform configuration rejected (schema, divisibility, placement).
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on inputs outside its contract (wrong topology
/// kind, unknown id, out-of-range argument).
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace chipsim
