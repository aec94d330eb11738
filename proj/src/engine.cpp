// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/engine.hpp"

#include <algorithm>
#include <cmath>

#include "chipsim/error.hpp"

namespace chipsim::engine {

using platform::ChipletRole;
using platform::PlatformKind;
using platform::PlatformTopology;
using platform::Protocol;

void EngineOptions::validate() const {
    if (!(mac_rate_hz > 0.0)) throw ConfigError("mac_rate_hz must be > 0");
    if (!(epoch_s > 0.0)) throw ConfigError("epoch_s must be > 0");
    if (!(weight_refetch_factor >= 0.0)) throw ConfigError("weight_refetch_factor must be >= 0");
    if (controller_power_w < 0.0 || pcm_switch_energy_pj < 0.0) throw ConfigError("controller energies must be >= 0");
}

EnergyBreakdown& EnergyBreakdown::operator+=(const EnergyBreakdown& o) {
    laser += o.laser;
    tuning += o.tuning;
    conversion += o.conversion;
    mac += o.mac;
    gateway_elec += o.gateway_elec;
    controller += o.controller;
    electrical_noc += o.electrical_noc;
    return *this;
}

double compute_time(const mapper::LayerAssignment& a, double mac_rate_hz) {
    if (a.total_macs == 0 || !(mac_rate_hz > 0.0)) throw UsageError("compute_time: need MACs and a positive rate");
    const auto cycles = (a.invocations + a.total_macs - 1) / a.total_macs;
    return static_cast<double>(cycles) / mac_rate_hz;
}

double transfer_time_photonic(std::uint64_t bits, double writer_bw, double reader_bw, const platform::WaveguideRoute& route,
                              const devices::DeviceParams& params, double gateway_freq_hz,
                              std::uint64_t gateway_overhead_cycles) {
    if (!(writer_bw > 0.0 && reader_bw > 0.0)) throw UsageError("transfer_time_photonic: bandwidths must be > 0");
    const double effective = std::min(writer_bw, reader_bw);
    const double serialization = static_cast<double>(bits) / effective;
    const double flight = route.length_mm / params.group_velocity_mm_per_s;
    const double buffering = static_cast<double>(gateway_overhead_cycles) / gateway_freq_hz;
    return serialization + flight + buffering;
}

double transfer_time_electrical(std::uint64_t bits, std::uint64_t hops, const PlatformTopology& t, bool congested) {
    if (t.kind != PlatformKind::elec_interposer) throw UsageError("transfer_time_electrical needs an electrical topology");
    const double header = static_cast<double>(hops * t.electrical.router_latency_cycles) / t.noc_freq_hz;
    double serialization = static_cast<double>(bits) / (static_cast<double>(t.noc_width_bits) * t.noc_freq_hz);
    if (congested) serialization *= t.electrical.congestion_factor;
    return header + serialization;
}

namespace {

bool gateway_active(const ControllerState& s, const PlatformTopology& t, std::size_t g) {
    const auto& gw = t.gateways[g];
    return gw.local < s.active_gateways[gw.chiplet];
}

// Equal split over the active routes: the i-th of k active couplers diverts
// 1/(k-i) of what reaches it; inactive couplers stay crystalline (pass-by).
std::vector<devices::PcmcState> cascade(const ControllerState& s, const PlatformTopology& t) {
    std::vector<devices::PcmcState> out(t.routes.size(), devices::PcmcState::crystalline());
    const auto active = active_routes(s, t);
    const auto k = active.size();
    for (std::size_t i = 0; i < k; ++i) out[active[i]] = devices::pcmc_for_split(1.0 / static_cast<double>(k - i));
    return out;
}

std::uint64_t llround_bits(double bits) { return static_cast<std::uint64_t>(std::llround(bits)); }

void check_plan(const workload::DnnModelSpec& model, const PlatformTopology& t, const mapper::MappingPlan& plan) {
    if (plan.model_name != model.name || plan.assignments.size() != model.layers.size())
        throw UsageError("mapping plan does not belong to model '" + model.name + "'");
    for (std::size_t i = 0; i < plan.assignments.size(); ++i) {
        const auto& a = plan.assignments[i];
        if (a.layer_index != model.layers[i].index || a.chiplets.empty() || a.total_macs == 0)
            throw UsageError("mapping plan entry " + std::to_string(i) + " is inconsistent");
        std::uint64_t macs = 0;
        for (auto c : a.chiplets) {
            if (c >= t.chiplets.size() || t.chiplets[c].role != ChipletRole::compute ||
                !(t.chiplets[c].mac_type == a.mac_type))
                throw UsageError("mapping plan entry " + std::to_string(i) + " does not match the topology");
            macs += t.chiplets[c].macs;
        }
        if (macs != a.total_macs) throw UsageError("mapping plan entry " + std::to_string(i) + " MAC total mismatch");
    }
}

double mac_energy(const mapper::LayerAssignment& a, const devices::DeviceParams& d) {
    const double per_invocation_pj = d.dac_energy_pj * static_cast<double>(a.mac_type.vector_len) + d.adc_energy_pj;
    return static_cast<double>(a.invocations) * per_invocation_pj * 1e-12;
}

double finish_layer(LayerResult& r, bool overlap) {
    r.layer_latency_s = overlap ? std::max({r.compute_s, r.read_s, r.write_s}) + r.overhead_s
                                : r.compute_s + r.read_s + r.write_s + r.overhead_s;
    return r.layer_latency_s;
}

RunMetrics finalize(const workload::DnnModelSpec& model, PlatformKind kind, std::vector<LayerResult> layers,
                    std::uint64_t reconfigs) {
    RunMetrics m;
    m.model = model.name;
    m.platform = kind;
    for (const auto& l : layers) {
        m.total_latency_s += l.layer_latency_s;
        m.energy += l.energy;
    }
    m.total_energy_j = m.energy.total();
    m.total_bits = workload::model_total_bits(model);
    m.avg_power_w = m.total_latency_s > 0.0 ? m.total_energy_j / m.total_latency_s : 0.0;
    m.epb_j_per_bit = m.total_bits > 0 ? m.total_energy_j / static_cast<double>(m.total_bits) : 0.0;
    m.reconfig_count = reconfigs;
    m.per_layer = std::move(layers);
    return m;
}

struct LayerBits {
    std::uint64_t weights = 0;  // after refetch scaling
    std::uint64_t read = 0;
    std::uint64_t write = 0;
};

LayerBits layer_bits(const workload::LayerSpec& layer, const EngineOptions& o) {
    const auto t = workload::layer_traffic(layer);
    LayerBits b;
    b.weights = llround_bits(static_cast<double>(t.weight_bits) * o.weight_refetch_factor);
    b.read = b.weights + t.input_bits;
    b.write = t.output_bits;
    return b;
}

RunMetrics simulate_photonic(const workload::DnnModelSpec& model, const PlatformTopology& t, const mapper::MappingPlan& plan,
                             const devices::DeviceParams& d, const EngineOptions& o) {
    const double per_gw_bw = platform::gateway_peak_bandwidth(t);
    const auto memory = t.memory_chiplets();
    const double mac_tuning_w = devices::mr_tuning_power(mac_mr_count(t, o), d);

    // The interposer powers up with every gateway lit; the controller's first
    // decision is a real reconfiguration and pays the PCM stall.
    ControllerState state = initial_controller_state(t, d, o.epoch_s, true);
    std::vector<double> trailing(t.chiplets.size(), 0.0);
    std::vector<LayerResult> results;
    results.reserve(model.layers.size());

    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const auto& layer = model.layers[i];
        const auto& a = plan.assignments[i];
        const auto bits = layer_bits(layer, o);

        LayerResult r;
        r.layer_index = layer.index;
        r.compute_s = compute_time(a, o.mac_rate_hz);

        std::uint64_t pcm_switches = 0;
        if (o.resipi) {
            std::vector<double> demand(t.chiplets.size(), 0.0);
            if (o.demand == DemandMode::oracle) {
                const double window = std::max(r.compute_s, o.epoch_s);
                const double total = static_cast<double>(bits.read + bits.write) / window;
                for (auto c : memory) demand[c] = total / static_cast<double>(memory.size());
                for (auto c : a.chiplets) demand[c] = total / static_cast<double>(a.chiplets.size());
            } else {
                demand = trailing;
            }
            auto next = reconfigure_epoch(demand, state, t, d);
            if (next.reconfig_count != state.reconfig_count) {
                r.overhead_s += d.pcm_transition_s;
                for (std::size_t k = 0; k < next.pcmc.size(); ++k)
                    if (!(next.pcmc[k] == state.pcmc[k])) ++pcm_switches;
            }
            state = std::move(next);
        }

        double memory_bw = 0.0;
        for (auto c : memory) memory_bw += static_cast<double>(state.active_gateways[c]) * per_gw_bw;
        double compute_bw = 0.0;
        for (auto c : a.chiplets) compute_bw += static_cast<double>(state.active_gateways[c]) * per_gw_bw;

        const platform::WaveguideRoute* read_route = nullptr;
        const platform::WaveguideRoute* write_route = nullptr;
        for (auto k : active_routes(state, t)) {
            const auto& route = t.routes[k];
            if (route.protocol == Protocol::swmr) {
                if (!read_route || route.length_mm > read_route->length_mm) read_route = &route;
            } else {
                const auto writer_chiplet = t.gateways[route.writer_gateway].chiplet;
                if (std::find(a.chiplets.begin(), a.chiplets.end(), writer_chiplet) == a.chiplets.end()) continue;
                if (!write_route || route.length_mm > write_route->length_mm) write_route = &route;
            }
        }
        if (!read_route || !write_route) throw UsageError("no active route serves layer " + std::to_string(i));

        r.read_s = transfer_time_photonic(bits.read, memory_bw, compute_bw, *read_route, d, t.gateway_freq_hz,
                                          o.gateway_overhead_cycles);
        r.write_s = transfer_time_photonic(bits.write, compute_bw, memory_bw, *write_route, d, t.gateway_freq_hz,
                                           o.gateway_overhead_cycles);
        const double latency = finish_layer(r, o.overlap);

        const auto moved = bits.read + bits.write;
        r.bits_moved = moved;
        r.laser_w = state.current_laser_w;
        r.active_gateways = state.active_gateways;
        const double interposer_tuning_w = devices::mr_tuning_power(active_interposer_mrs(state, t), d);
        r.energy.laser = state.current_laser_w * latency;
        r.energy.tuning = (interposer_tuning_w + mac_tuning_w) * latency;
        r.energy.conversion = static_cast<double>(moved) * (d.modulator_energy_pj_per_bit + d.filter_pd_energy_pj_per_bit) * 1e-12;
        r.energy.gateway_elec = static_cast<double>(moved) * d.gateway_elec_energy_pj_per_bit * 1e-12;
        r.energy.mac = mac_energy(a, d);
        r.energy.controller =
            o.controller_power_w * latency + static_cast<double>(pcm_switches) * o.pcm_switch_energy_pj * 1e-12;

        if (o.demand == DemandMode::trailing) {
            std::fill(trailing.begin(), trailing.end(), 0.0);
            const double rate = static_cast<double>(moved) / latency;
            for (auto c : memory) trailing[c] = rate / static_cast<double>(memory.size());
            for (auto c : a.chiplets) trailing[c] = rate / static_cast<double>(a.chiplets.size());
        }
        results.push_back(std::move(r));
    }
    return finalize(model, t.kind, std::move(results), state.reconfig_count);
}

RunMetrics simulate_electrical(const workload::DnnModelSpec& model, const PlatformTopology& t, const mapper::MappingPlan& plan,
                               const devices::DeviceParams& d, const EngineOptions& o) {
    const auto memory = t.memory_chiplets().front();
    const double static_w = devices::mr_tuning_power(mac_mr_count(t, o), d);
    const double router_w = t.electrical.router_static_w * static_cast<double>(t.mesh_rows * t.mesh_cols);
    std::vector<LayerResult> results;
    results.reserve(model.layers.size());

    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const auto& layer = model.layers[i];
        const auto& a = plan.assignments[i];
        const auto traffic = workload::layer_traffic(layer);
        const auto bits = layer_bits(layer, o);
        const auto n = static_cast<std::uint64_t>(a.chiplets.size());
        const bool congested = n > 1;

        LayerResult r;
        r.layer_index = layer.index;
        r.compute_s = compute_time(a, o.mac_rate_hz);

        // Memory serves the chiplets one after another: each gets its weight
        // share plus its own copy of the input, then returns its output share.
        double bit_hops = 0.0;
        for (std::uint64_t k = 0; k < n; ++k) {
            const auto c = a.chiplets[k];
            const auto hops = platform::electrical_hops(memory, c, t);
            const auto weights = bits.weights / n + (k == 0 ? bits.weights % n : 0);
            const auto outputs = traffic.output_bits / n + (k == 0 ? traffic.output_bits % n : 0);
            const auto in = weights + traffic.input_bits;
            r.read_s += transfer_time_electrical(in, hops, t, congested);
            r.write_s += transfer_time_electrical(outputs, hops, t, congested);
            r.bits_moved += in + outputs;
            bit_hops += static_cast<double>((in + outputs) * hops);
        }
        const double latency = finish_layer(r, o.overlap);

        r.energy.tuning = static_w * latency;
        r.energy.mac = mac_energy(a, d);
        r.energy.electrical_noc = bit_hops * t.electrical.link_energy_pj_per_bit_hop * 1e-12 + router_w * latency;
        results.push_back(std::move(r));
    }
    return finalize(model, t.kind, std::move(results), 0);
}

}  // namespace

std::vector<std::size_t> active_routes(const ControllerState& s, const PlatformTopology& t) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < t.routes.size(); ++k)
        if (gateway_active(s, t, t.routes[k].writer_gateway)) out.push_back(k);
    return out;
}

double laser_power_for(const ControllerState& s, const PlatformTopology& t, const devices::DeviceParams& d) {
    std::vector<devices::OpticalPath> paths;
    for (auto k : active_routes(s, t)) paths.push_back(t.routes[k].path);
    if (paths.empty()) return 0.0;
    return devices::required_laser_power(paths, t.n_wavelengths, d);
}

std::uint64_t active_interposer_mrs(const ControllerState& s, const PlatformTopology& t) {
    std::uint64_t rows = 0;
    for (std::size_t g = 0; g < t.mrgs.size(); ++g) {
        const auto role = t.chiplets[t.gateways[g].chiplet].role;
        if (!gateway_active(s, t, g)) continue;
        rows += role == ChipletRole::compute ? t.mrgs[g].filter_rows + t.mrgs[g].modulator_rows : t.mrgs[g].modulator_rows;
    }
    // Memory-side filter rows listen to one SWSR writer each.
    for (const auto& route : t.routes)
        if (route.protocol == Protocol::swsr && gateway_active(s, t, route.writer_gateway)) ++rows;
    return rows * t.n_wavelengths;
}

std::uint64_t mac_mr_count(const PlatformTopology& t, const EngineOptions& o) {
    std::uint64_t lanes = 0;
    for (const auto& c : t.chiplets)
        if (c.role == ChipletRole::compute) lanes += c.macs * c.mac_type->vector_len;
    return lanes * o.mac_mrs_per_lane;
}

ControllerState initial_controller_state(const PlatformTopology& t, const devices::DeviceParams& d, double epoch_s,
                                         bool all_active) {
    ControllerState s;
    s.epoch_s = epoch_s;
    s.active_gateways.resize(t.chiplets.size());
    for (std::size_t c = 0; c < t.chiplets.size(); ++c)
        s.active_gateways[c] = all_active ? t.chiplets[c].gateways : std::min<std::uint64_t>(1, t.chiplets[c].gateways);
    s.pcmc = cascade(s, t);
    s.current_laser_w = laser_power_for(s, t, d);
    return s;
}

ControllerState reconfigure_epoch(std::span<const double> demand_bps, const ControllerState& state, const PlatformTopology& t,
                                  const devices::DeviceParams& d) {
    if (demand_bps.size() != t.chiplets.size()) throw UsageError("reconfigure_epoch: one demand entry per chiplet");
    const double per_gw = platform::gateway_peak_bandwidth(t);
    ControllerState next = state;
    for (std::size_t c = 0; c < t.chiplets.size(); ++c) {
        const auto limit = t.chiplets[c].gateways;
        const double want = std::ceil(std::max(0.0, demand_bps[c]) / per_gw);
        const auto needed = want >= static_cast<double>(limit) ? limit : static_cast<std::uint64_t>(want);
        next.active_gateways[c] = std::clamp<std::uint64_t>(needed, std::min<std::uint64_t>(1, limit), limit);
    }
    next.pcmc = cascade(next, t);
    next.current_laser_w = laser_power_for(next, t, d);
    if (next.active_gateways != state.active_gateways) ++next.reconfig_count;
    return next;
}

RunMetrics simulate_model(const workload::DnnModelSpec& model, const PlatformTopology& topology, const mapper::MappingPlan& plan,
                          const devices::DeviceParams& params, const EngineOptions& options) {
    options.validate();
    if (topology.kind == PlatformKind::monolithic) return simulate_monolithic(model, topology, params, options);
    check_plan(model, topology, plan);
    if (topology.kind == PlatformKind::siph_interposer) return simulate_photonic(model, topology, plan, params, options);
    return simulate_electrical(model, topology, plan, params, options);
}

RunMetrics simulate_monolithic(const workload::DnnModelSpec& model, const PlatformTopology& t, const devices::DeviceParams& d,
                               const EngineOptions& o) {
    if (t.kind != PlatformKind::monolithic) throw UsageError("simulate_monolithic needs a monolithic topology");
    o.validate();
    const auto plan = mapper::map_model(model, t);
    const auto& mono = t.monolithic;
    const double static_w = devices::mr_tuning_power(mac_mr_count(t, o), d);
    auto offchip = [&](std::uint64_t bits) { return mono.offchip_latency_s + static_cast<double>(bits) / mono.offchip_bw_bps; };

    std::vector<LayerResult> results;
    results.reserve(model.layers.size());
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const auto& a = plan.assignments[i];
        const auto bits = layer_bits(model.layers[i], o);
        LayerResult r;
        r.layer_index = model.layers[i].index;
        r.compute_s = compute_time(a, o.mac_rate_hz);
        r.read_s = offchip(bits.read);
        r.write_s = offchip(bits.write);
        const double latency = finish_layer(r, o.overlap);
        r.bits_moved = bits.read + bits.write;
        r.energy.tuning = static_w * latency;
        r.energy.mac = mac_energy(a, d);
        r.energy.electrical_noc = static_cast<double>(r.bits_moved) * mono.offchip_energy_pj_per_bit * 1e-12;
        results.push_back(std::move(r));
    }
    return finalize(model, t.kind, std::move(results), 0);
}

RunMetrics run(const workload::DnnModelSpec& model, const PlatformTopology& topology, const devices::DeviceParams& params,
               const EngineOptions& options) {
    if (topology.kind == PlatformKind::monolithic) return simulate_monolithic(model, topology, params, options);
    return simulate_model(model, topology, mapper::map_model(model, topology), params, options);
}

}  // namespace chipsim::engine
