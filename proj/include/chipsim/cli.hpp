// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chipsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

/// Shipped model names, in table order.
const std::vector<std::string>& builtin_models();

/// Resolves a model argument: an existing file path, or a shipped model
/// name looked up in `models_dir` as `<name>.desc`.
std::string resolve_model_path(const std::string& arg, const std::string& models_dir);

/// Entry point behind the `chipsim` binary. Subcommands: validate,
/// simulate, compare, topology. Returns 0 / 1 (invalid input) / 2 (usage).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chipsim::cli
