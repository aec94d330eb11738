// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/mapper.hpp"

#include <algorithm>
#include <optional>

#include "chipsim/error.hpp"

namespace chipsim::mapper {

using platform::MacClass;
using platform::MacUnitType;

namespace {

// Strict weak order used for tie-breaks: smaller vector first, conv before
// dense, then name.
bool smaller(const MacUnitType& a, const MacUnitType& b) {
    if (a.vector_len != b.vector_len) return a.vector_len < b.vector_len;
    if (a.cls != b.cls) return a.cls == MacClass::conv;
    return a.name < b.name;
}

const MacUnitType* largest(std::span<const MacUnitType> types, std::optional<MacClass> only) {
    const MacUnitType* best = nullptr;
    for (const auto& t : types) {
        if (only && t.cls != *only) continue;
        if (!best || t.vector_len > best->vector_len || (t.vector_len == best->vector_len && smaller(t, *best))) best = &t;
    }
    return best;
}

}  // namespace

MacUnitType select_mac_type(const workload::LayerSpec& layer, std::span<const MacUnitType> available) {
    if (available.empty()) throw UsageError("select_mac_type: no MAC types available");

    if (layer.kind == workload::LayerKind::fc) {
        if (const auto* dense = largest(available, MacClass::dense)) return *dense;
        return *largest(available, std::nullopt);
    }

    const auto window = layer.kernel_h * layer.kernel_w;
    const MacUnitType* exact = nullptr;
    const MacUnitType* covering = nullptr;
    for (const auto& t : available) {
        if (t.vector_len == window && (!exact || smaller(t, *exact))) exact = &t;
        if (t.vector_len >= window && (!covering || smaller(t, *covering))) covering = &t;
    }
    if (exact) return *exact;
    if (covering) return *covering;
    return *largest(available, std::nullopt);
}

std::uint64_t chunks_per_dot(std::uint64_t dot_length, std::uint64_t vector_len) {
    if (vector_len == 0) throw UsageError("chunks_per_dot: vector_len must be >= 1");
    return (dot_length + vector_len - 1) / vector_len;
}

MappingPlan map_model(const workload::DnnModelSpec& model, const platform::PlatformTopology& topology) {
    const auto compute = topology.compute_chiplets();
    if (compute.empty()) throw UsageError("map_model: topology '" + std::string(platform::to_string(topology.kind)) + "' has no compute chiplets");

    std::vector<MacUnitType> types;
    for (auto c : compute) {
        const auto& t = *topology.chiplets[c].mac_type;
        if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
    }

    MappingPlan plan;
    plan.model_name = model.name;
    plan.assignments.reserve(model.layers.size());
    for (const auto& layer : model.layers) {
        LayerAssignment a;
        a.layer_index = layer.index;
        a.mac_type = select_mac_type(layer, types);
        for (auto c : compute) {
            if (*topology.chiplets[c].mac_type == a.mac_type) {
                a.chiplets.push_back(c);
                a.total_macs += topology.chiplets[c].macs;
            }
        }
        const auto traffic = workload::layer_traffic(layer);
        a.chunks_per_dot = chunks_per_dot(traffic.dot_length, a.mac_type.vector_len);
        a.invocations = traffic.dot_products * a.chunks_per_dot;
        plan.assignments.push_back(std::move(a));
    }
    return plan;
}

}  // namespace chipsim::mapper
