// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chipsim::workload {

enum class LayerKind { conv, fc };

std::string_view to_string(LayerKind kind);

/// Geometry of one layer. Fully connected layers use the 1x1 convention:
/// kernel 1x1, spatial dims 1, channels = features.
struct LayerSpec {
    std::size_t index = 0;
    std::string name;
    LayerKind kind = LayerKind::conv;
    std::uint64_t kernel_h = 1;
    std::uint64_t kernel_w = 1;
    std::uint64_t in_channels = 1;
    std::uint64_t out_channels = 1;
    std::uint64_t in_h = 1;
    std::uint64_t in_w = 1;
    std::uint64_t out_h = 1;
    std::uint64_t out_w = 1;
    std::uint64_t stride = 1;
    unsigned weight_bitwidth = 8;
    unsigned activation_bitwidth = 8;
};

struct DnnModelSpec {
    std::string name;
    std::vector<LayerSpec> layers;
    std::uint64_t declared_param_count = 0;
};

struct TrafficVolume {
    std::uint64_t weight_bits = 0;
    std::uint64_t input_bits = 0;
    std::uint64_t output_bits = 0;
    std::uint64_t dot_products = 0;
    std::uint64_t dot_length = 0;
};

/// Parses and validates a model descriptor (JSON text).
/// Throws ParseError on malformed text and ValidationError on invariant
/// violations (parameter-count mismatch, bad geometry, layer-count mismatch).
DnnModelSpec load_model(std::string_view descriptor_text);

/// Reads `path` and forwards to load_model.
DnnModelSpec load_model_file(const std::string& path);

/// Checks per-layer invariants; throws ValidationError naming the layer.
void validate_layer(const LayerSpec& layer);

/// Weights plus biases of a single layer.
std::uint64_t layer_params(const LayerSpec& layer);

std::uint64_t param_count(const DnnModelSpec& model);

/// Bits moved for one execution of `layer`. Each tensor moves once.
TrafficVolume layer_traffic(const LayerSpec& layer);

/// Sum of weight, input and output bits across all layers. This is the
/// energy-per-bit denominator on every platform.
std::uint64_t model_total_bits(const DnnModelSpec& model);

/// Multiplications implied by the layer geometry (dense, no padding
/// discount): out_h*out_w*C_out*K_h*K_w*C_in.
std::uint64_t multiply_count(const LayerSpec& layer);

}  // namespace chipsim::workload
