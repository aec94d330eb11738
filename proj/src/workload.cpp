// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/workload.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "chipsim/error.hpp"
#include "json.hpp"

namespace chipsim::workload {

using nlohmann::json;

std::string_view to_string(LayerKind kind) { return kind == LayerKind::conv ? "conv" : "fc"; }

namespace {

constexpr unsigned kDefaultBitwidth = 8;

std::uint64_t positive(const json& v, std::size_t layer, const char* key) {
    if (!v.is_number_integer()) throw ValidationError(std::string(key) + " must be an integer", layer);
    auto x = v.get<std::int64_t>();
    if (x < 1) throw ValidationError(std::string(key) + " must be >= 1", layer);
    return static_cast<std::uint64_t>(x);
}

// Accepts either a scalar (square) or a two-element [h, w] array.
std::pair<std::uint64_t, std::uint64_t> pair_field(const json& v, std::size_t layer, const char* key) {
    if (v.is_array()) {
        if (v.size() != 2) throw ValidationError(std::string(key) + " must have two entries", layer);
        return {positive(v[0], layer, key), positive(v[1], layer, key)};
    }
    auto x = positive(v, layer, key);
    return {x, x};
}

unsigned bitwidth(const json& obj, const char* key, unsigned fallback, std::size_t layer) {
    if (!obj.contains(key)) return fallback;
    auto bits = positive(obj.at(key), layer, key);
    if (bits > 32) throw ValidationError(std::string(key) + " must be in [1, 32]", layer);
    return static_cast<unsigned>(bits);
}

}  // namespace

void validate_layer(const LayerSpec& l) {
    const auto i = l.index;
    for (auto v : {l.kernel_h, l.kernel_w, l.in_channels, l.out_channels, l.in_h, l.in_w, l.out_h, l.out_w, l.stride})
        if (v < 1) throw ValidationError("all counts must be >= 1", i);
    for (auto b : {l.weight_bitwidth, l.activation_bitwidth})
        if (b < 1 || b > 32) throw ValidationError("bitwidths must be in [1, 32]", i);
    if (l.kind == LayerKind::conv) {
        if (l.out_h > l.in_h || l.out_w > l.in_w)
            throw ValidationError("conv output larger than input", i);
    } else {
        if (l.kernel_h != 1 || l.kernel_w != 1 || l.in_h != 1 || l.in_w != 1 || l.out_h != 1 || l.out_w != 1)
            throw ValidationError("fc layers use kernel 1x1 and spatial dims 1", i);
    }
}

DnnModelSpec load_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model descriptor: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("model descriptor: top level must be an object");

    DnnModelSpec model;
    try {
        model.name = doc.at("name").get<std::string>();
        if (!doc.at("declared_param_count").is_number_integer())
            throw ParseError("declared_param_count must be an integer");
        model.declared_param_count = doc.at("declared_param_count").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("model descriptor: ") + e.what());
    }
    if (!doc.contains("layers") || !doc.at("layers").is_array()) throw ParseError("model descriptor: missing layers array");

    const unsigned model_wbits = bitwidth(doc, "weight_bitwidth", kDefaultBitwidth, 0);
    const unsigned model_abits = bitwidth(doc, "activation_bitwidth", kDefaultBitwidth, 0);

    static constexpr const char* kRequired[] = {"kind", "kernel", "channels_in", "channels_out", "in_hw", "out_hw", "stride"};
    std::size_t index = 0;
    for (const auto& entry : doc.at("layers")) {
        if (!entry.is_object()) throw ParseError("layer " + std::to_string(index) + " is not an object");
        for (const char* key : kRequired)
            if (!entry.contains(key))
                throw ParseError("layer " + std::to_string(index) + ": missing key '" + key + "'");
        LayerSpec l;
        l.index = index;
        l.name = entry.value("name", std::string());
        const auto kind = entry.at("kind");
        if (kind == "conv")
            l.kind = LayerKind::conv;
        else if (kind == "fc")
            l.kind = LayerKind::fc;
        else
            throw ParseError("layer " + std::to_string(index) + ": kind must be conv or fc");
        std::tie(l.kernel_h, l.kernel_w) = pair_field(entry.at("kernel"), index, "kernel");
        l.in_channels = positive(entry.at("channels_in"), index, "channels_in");
        l.out_channels = positive(entry.at("channels_out"), index, "channels_out");
        std::tie(l.in_h, l.in_w) = pair_field(entry.at("in_hw"), index, "in_hw");
        std::tie(l.out_h, l.out_w) = pair_field(entry.at("out_hw"), index, "out_hw");
        l.stride = positive(entry.at("stride"), index, "stride");
        l.weight_bitwidth = bitwidth(entry, "weight_bitwidth", model_wbits, index);
        l.activation_bitwidth = bitwidth(entry, "activation_bitwidth", model_abits, index);
        validate_layer(l);
        model.layers.push_back(std::move(l));
        ++index;
    }

    if (model.layers.empty()) throw ValidationError("model has no layers");

    auto count_kind = [&](LayerKind k) {
        return static_cast<std::uint64_t>(
            std::count_if(model.layers.begin(), model.layers.end(), [k](const LayerSpec& l) { return l.kind == k; }));
    };
    for (auto [key, kind] : {std::pair{"declared_conv_layers", LayerKind::conv}, std::pair{"declared_fc_layers", LayerKind::fc}}) {
        if (!doc.contains(key)) continue;
        auto declared = doc.at(key).get<std::uint64_t>();
        if (declared != count_kind(kind))
            throw ValidationError(std::string(key) + " = " + std::to_string(declared) + " but descriptor has " +
                                  std::to_string(count_kind(kind)));
    }

    const auto computed = param_count(model);
    if (computed != model.declared_param_count)
        throw ValidationError("parameter count " + std::to_string(computed) + " != declared " +
                              std::to_string(model.declared_param_count));
    return model;
}

DnnModelSpec load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model descriptor '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

std::uint64_t layer_params(const LayerSpec& l) {
    return l.kernel_h * l.kernel_w * l.in_channels * l.out_channels + l.out_channels;
}

std::uint64_t param_count(const DnnModelSpec& model) {
    return std::accumulate(model.layers.begin(), model.layers.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const LayerSpec& l) { return acc + layer_params(l); });
}

TrafficVolume layer_traffic(const LayerSpec& l) {
    TrafficVolume t;
    t.weight_bits = layer_params(l) * l.weight_bitwidth;
    t.input_bits = l.in_h * l.in_w * l.in_channels * l.activation_bitwidth;
    t.output_bits = l.out_h * l.out_w * l.out_channels * l.activation_bitwidth;
    t.dot_length = l.kernel_h * l.kernel_w * l.in_channels;
    t.dot_products = l.out_h * l.out_w * l.out_channels;
    return t;
}

std::uint64_t model_total_bits(const DnnModelSpec& model) {
    std::uint64_t total = 0;
    for (const auto& l : model.layers) {
        auto t = layer_traffic(l);
        total += t.weight_bits + t.input_bits + t.output_bits;
    }
    return total;
}

std::uint64_t multiply_count(const LayerSpec& l) {
    return l.out_h * l.out_w * l.out_channels * l.kernel_h * l.kernel_w * l.in_channels;
}

}  // namespace chipsim::workload
