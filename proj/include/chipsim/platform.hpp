// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chipsim/devices.hpp"

namespace chipsim::platform {

enum class PlatformKind { siph_interposer, elec_interposer, monolithic };

/// Short CLI names: "siph", "elec", "mono".
std::string_view to_string(PlatformKind kind);
PlatformKind parse_platform_kind(std::string_view name);

enum class MacClass { conv, dense };

struct MacUnitType {
    std::string name;
    std::uint64_t vector_len = 1;
    MacClass cls = MacClass::conv;

    bool operator==(const MacUnitType&) const = default;
};

/// conv3x3 (9), conv5x5 (25), conv7x7 (49), dense100 (100).
std::vector<MacUnitType> default_mac_types();

enum class ChipletRole { compute, memory };

struct Position {
    double x_mm = 0.0;
    double y_mm = 0.0;
};

struct GridCell {
    std::size_t row = 0;
    std::size_t col = 0;
};

struct ChipletSpec {
    std::string id;
    ChipletRole role = ChipletRole::compute;
    std::optional<MacUnitType> mac_type;  // compute only
    std::uint64_t macs = 0;
    std::uint64_t macs_per_gateway = 0;
    std::uint64_t gateways = 0;
    GridCell cell;
    Position position;
};

/// One gateway on one chiplet; `chiplet` indexes PlatformTopology::chiplets.
struct Gateway {
    std::string id;
    std::size_t chiplet = 0;
    std::size_t local = 0;
};

/// Microring resonator group of one gateway. Rows hold `mrs_per_row` rings.
struct Mrg {
    std::size_t owner_gateway = 0;
    std::uint64_t filter_rows = 0;
    std::uint64_t modulator_rows = 0;
    std::uint64_t mrs_per_row = 0;
};

enum class Protocol { swsr, swmr };

struct WaveguideRoute {
    std::size_t writer_gateway = 0;
    Protocol protocol = Protocol::swsr;
    std::vector<std::size_t> readers;
    double length_mm = 0.0;
    devices::OpticalPath path;
};

struct ElectricalParams {
    std::uint64_t router_latency_cycles = 3;
    double congestion_factor = 2.0;
    double link_energy_pj_per_bit_hop = 1.0;
    double router_static_w = 0.1;
};

struct MonolithicParams {
    std::uint64_t macs = 128;
    std::uint64_t vector_len = 25;
    double offchip_bw_bps = 256e9;
    double offchip_latency_s = 50e-9;
    double offchip_energy_pj_per_bit = 5.0;
};

/// One row of the chiplet inventory; `count` copies are instantiated with ids
/// `<id>` (count == 1) or `<id>_<n>`.
struct ChipletConfig {
    std::string id;
    ChipletRole role = ChipletRole::compute;
    std::string mac_type;
    std::uint64_t count = 1;
    std::uint64_t macs = 0;
    std::uint64_t macs_per_gateway = 0;
    std::uint64_t gateways = 0;  // memory only
};

struct PlatformConfig {
    PlatformKind kind = PlatformKind::siph_interposer;
    std::uint64_t wavelengths = 64;
    double link_rate_bps = 12e9;
    double gateway_freq_hz = 2e9;
    std::uint64_t noc_width_bits = 128;
    double noc_freq_hz = 2e9;
    double interposer_side_mm = 24.0;
    std::size_t grid_rows = 3;
    std::size_t grid_cols = 3;
    std::vector<MacUnitType> mac_types = default_mac_types();
    std::vector<ChipletConfig> chiplets;
    ElectricalParams electrical;
    MonolithicParams monolithic;
};

/// The evaluated 1 memory + 8 compute chiplet configuration.
PlatformConfig default_platform_config();

struct PlatformTopology {
    PlatformKind kind = PlatformKind::siph_interposer;
    std::vector<ChipletSpec> chiplets;
    std::vector<Gateway> gateways;
    std::vector<Mrg> mrgs;  // siph only; index-aligned with gateways
    std::vector<WaveguideRoute> routes;  // siph only
    std::size_t mesh_rows = 0;  // elec only
    std::size_t mesh_cols = 0;
    std::uint64_t n_wavelengths = 64;
    double link_rate_bps = 12e9;
    double gateway_freq_hz = 2e9;
    std::uint64_t noc_width_bits = 128;
    double noc_freq_hz = 2e9;
    double interposer_side_mm = 24.0;
    ElectricalParams electrical;
    MonolithicParams monolithic;

    std::vector<std::size_t> compute_chiplets() const;
    std::vector<std::size_t> memory_chiplets() const;
    std::uint64_t compute_gateway_count() const;
    std::uint64_t memory_gateway_count() const;
    /// Σ MRG rows * rings per row.
    std::uint64_t total_mrs() const;
    /// Gateways of one chiplet, in local order.
    std::vector<std::size_t> gateways_of(std::size_t chiplet) const;
    std::size_t chiplet_index(std::string_view id) const;
};

/// Siph topology for default_platform_config().
PlatformTopology default_platform();

/// Wires a topology for `config.kind`. Throws ConfigError on schema,
/// divisibility or placement problems.
PlatformTopology build_topology(const PlatformConfig& config);

/// Manhattan distance to the farthest reader plus a 0.1*side trunk.
double route_length(Position src, std::span<const Position> dst, double side_mm);

/// Per-gateway optical bandwidth (bits/s). Siph only.
double gateway_peak_bandwidth(const PlatformTopology& topology);

/// Mesh hops between chiplet routers plus one injection/ejection hop.
/// Elec only; throws UsageError on unknown ids.
std::uint64_t electrical_hops(std::string_view src_chiplet, std::string_view dst_chiplet, const PlatformTopology& topology);
std::uint64_t electrical_hops(std::size_t src_chiplet, std::size_t dst_chiplet, const PlatformTopology& topology);

}  // namespace chipsim::platform
