// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chipsim/platform.hpp"
#include "chipsim/workload.hpp"

namespace chipsim::mapper {

struct LayerAssignment {
    std::size_t layer_index = 0;
    platform::MacUnitType mac_type;
    std::vector<std::size_t> chiplets;  // indices into PlatformTopology::chiplets
    std::uint64_t total_macs = 0;
    std::uint64_t chunks_per_dot = 0;
    std::uint64_t invocations = 0;
};

struct MappingPlan {
    std::string model_name;
    std::vector<LayerAssignment> assignments;
};

/// fc: the largest dense type (else the largest vector). conv: exact K_h*K_w
/// fit (conv types first), else the smallest vector >= K_h*K_w, else the
/// largest vector. Ties resolve to the smaller vector, then conv over dense.
/// Throws UsageError if `available` is empty.
platform::MacUnitType select_mac_type(const workload::LayerSpec& layer, std::span<const platform::MacUnitType> available);

/// ceil(dot_length / vector_len).
std::uint64_t chunks_per_dot(std::uint64_t dot_length, std::uint64_t vector_len);

/// Assigns every layer to all chiplets hosting the selected MAC type.
/// Throws UsageError if the topology has no compute chiplets.
MappingPlan map_model(const workload::DnnModelSpec& model, const platform::PlatformTopology& topology);

}  // namespace chipsim::mapper
