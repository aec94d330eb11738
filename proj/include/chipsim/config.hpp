// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <string>
#include <string_view>

#include "chipsim/devices.hpp"
#include "chipsim/engine.hpp"
#include "chipsim/platform.hpp"

namespace chipsim {

/// Everything a run needs besides the model: platform description,
/// device calibration and engine options.
struct Config {
    platform::PlatformConfig platform = platform::default_platform_config();
    devices::DeviceParams devices;
    engine::EngineOptions engine;
};

/// Parses a JSON config. Sections: platform, mac_types, chiplets,
/// electrical, monolithic, engine, devices. Missing sections keep their
/// defaults; unknown keys are rejected with ConfigError.
Config load_config(std::string_view text);
Config load_config_file(const std::string& path);

/// Serializes `config` in the same schema load_config accepts.
std::string dump_config(const Config& config);

}  // namespace chipsim
