// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chipsim/devices.hpp"
#include "chipsim/mapper.hpp"
#include "chipsim/platform.hpp"
#include "chipsim/workload.hpp"

namespace chipsim::engine {

/// How the epoch controller estimates the bandwidth a layer needs.
/// `oracle` uses the upcoming layer's known traffic; `trailing` reuses the
/// rate observed during the previous layer.
enum class DemandMode { oracle, trailing };

struct EngineOptions {
    double mac_rate_hz = 10e9;
    double epoch_s = 5e-6;
    bool overlap = true;
    bool resipi = true;
    DemandMode demand = DemandMode::oracle;
    std::uint64_t gateway_overhead_cycles = 4;
    double weight_refetch_factor = 1.0;
    double controller_power_w = 0.05;
    double pcm_switch_energy_pj = 100.0;
    /// Rings per MAC lane kept on resonance (input + weight banks).
    std::uint64_t mac_mrs_per_lane = 2;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Epoch controller state. `active_gateways` is indexed by chiplet and
/// `pcmc` by route.
struct ControllerState {
    double epoch_s = 0.0;
    std::vector<std::uint64_t> active_gateways;
    std::vector<devices::PcmcState> pcmc;
    double current_laser_w = 0.0;
    std::uint64_t reconfig_count = 0;
};

struct EnergyBreakdown {
    double laser = 0.0;
    double tuning = 0.0;
    double conversion = 0.0;
    double mac = 0.0;
    double gateway_elec = 0.0;
    double controller = 0.0;
    double electrical_noc = 0.0;

    double total() const { return laser + tuning + conversion + mac + gateway_elec + controller + electrical_noc; }
    EnergyBreakdown& operator+=(const EnergyBreakdown& o);
};

struct LayerResult {
    std::size_t layer_index = 0;
    double compute_s = 0.0;
    double read_s = 0.0;
    double write_s = 0.0;
    double overhead_s = 0.0;
    double layer_latency_s = 0.0;
    EnergyBreakdown energy;
    std::uint64_t bits_moved = 0;
    double laser_w = 0.0;
    std::vector<std::uint64_t> active_gateways;  // siph only
};

struct RunMetrics {
    std::string model;
    platform::PlatformKind platform = platform::PlatformKind::siph_interposer;
    double total_latency_s = 0.0;
    EnergyBreakdown energy;
    double total_energy_j = 0.0;
    double avg_power_w = 0.0;
    std::uint64_t total_bits = 0;
    double epb_j_per_bit = 0.0;
    std::uint64_t reconfig_count = 0;
    std::vector<LayerResult> per_layer;
};

/// ceil(invocations / total_macs) cycles at `mac_rate_hz`.
double compute_time(const mapper::LayerAssignment& assignment, double mac_rate_hz);

/// Serialization at min(writer_bw, reader_bw) plus time of flight plus the
/// gateway buffering overhead.
double transfer_time_photonic(std::uint64_t bits, double writer_bw, double reader_bw, const platform::WaveguideRoute& route,
                              const devices::DeviceParams& params, double gateway_freq_hz,
                              std::uint64_t gateway_overhead_cycles = 4);

/// Router pipeline latency over `hops` plus link serialization; serialization
/// is scaled by the congestion factor when `congested`.
double transfer_time_electrical(std::uint64_t bits, std::uint64_t hops, const platform::PlatformTopology& topology,
                                bool congested = false);

/// Minimum-activation state (one gateway per chiplet), or every gateway
/// when `all_active`.
ControllerState initial_controller_state(const platform::PlatformTopology& topology, const devices::DeviceParams& params,
                                         double epoch_s, bool all_active = false);

/// Active gateways per chiplet: clamp(ceil(demand / per-gateway bw), 1, G).
/// Routes of inactive gateways get no light; active ones split the laser
/// equally through a PCMC cascade. Laser power is recomputed and
/// reconfig_count increments when the active set changes.
ControllerState reconfigure_epoch(std::span<const double> demand_bps, const ControllerState& state,
                                  const platform::PlatformTopology& topology, const devices::DeviceParams& params);

/// Route indices whose writer gateway is active in `state`.
std::vector<std::size_t> active_routes(const ControllerState& state, const platform::PlatformTopology& topology);

/// required_laser_power over the active route set (0 when none).
double laser_power_for(const ControllerState& state, const platform::PlatformTopology& topology,
                       const devices::DeviceParams& params);

/// Interposer rings that must be held on resonance in `state`.
std::uint64_t active_interposer_mrs(const ControllerState& state, const platform::PlatformTopology& topology);

/// Rings in all MAC units of the platform.
std::uint64_t mac_mr_count(const platform::PlatformTopology& topology, const EngineOptions& options);

/// Runs `plan` on `topology`, layer by layer. Dispatches to
/// simulate_monolithic for monolithic topologies.
/// Throws UsageError if the plan does not belong to this model/topology.
RunMetrics simulate_model(const workload::DnnModelSpec& model, const platform::PlatformTopology& topology,
                          const mapper::MappingPlan& plan, const devices::DeviceParams& params,
                          const EngineOptions& options);

/// Single-die baseline: all traffic goes through the off-chip memory link.
RunMetrics simulate_monolithic(const workload::DnnModelSpec& model, const platform::PlatformTopology& topology,
                               const devices::DeviceParams& params, const EngineOptions& options);

/// Convenience: map then simulate.
RunMetrics run(const workload::DnnModelSpec& model, const platform::PlatformTopology& topology,
               const devices::DeviceParams& params, const EngineOptions& options);

}  // namespace chipsim::engine
