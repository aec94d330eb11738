// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include <cmath>
#include <cstring>
#include <random>

#include "chipsim/engine.hpp"
#include "chipsim/error.hpp"
#include "doctest.h"

using namespace chipsim;
using namespace chipsim::engine;
using platform::PlatformKind;

namespace {

mapper::LayerAssignment assignment(std::uint64_t invocations, std::uint64_t macs) {
    mapper::LayerAssignment a;
    a.invocations = invocations;
    a.total_macs = macs;
    return a;
}

platform::PlatformTopology topology(PlatformKind kind) {
    auto c = platform::default_platform_config();
    c.kind = kind;
    return platform::build_topology(c);
}

workload::DnnModelSpec load(const std::string& name) {
    return workload::load_model_file(std::string(CHIPSIM_MODELS_DIR) + "/" + name + ".desc");
}

workload::LayerSpec fc(std::uint64_t in, std::uint64_t out) {
    workload::LayerSpec l;
    l.kind = workload::LayerKind::fc;
    l.in_channels = in;
    l.out_channels = out;
    return l;
}

workload::LayerSpec conv(std::uint64_t k, std::uint64_t cin, std::uint64_t cout, std::uint64_t in) {
    workload::LayerSpec l;
    l.kind = workload::LayerKind::conv;
    l.kernel_h = l.kernel_w = k;
    l.in_channels = cin;
    l.out_channels = cout;
    l.in_h = l.in_w = in;
    l.out_h = l.out_w = in - k + 1;
    return l;
}

workload::DnnModelSpec toy(std::uint64_t scale) {
    workload::DnnModelSpec m;
    m.name = "toy";
    m.layers = {conv(3, 3 * scale, 16 * scale, 32), conv(5, 16 * scale, 32 * scale, 30), fc(32 * scale, 10 * scale)};
    for (std::size_t i = 0; i < m.layers.size(); ++i) m.layers[i].index = i;
    return m;
}

void check_identities(const RunMetrics& m) {
    CHECK(m.total_energy_j > 0.0);
    CHECK(std::abs(m.avg_power_w * m.total_latency_s - m.total_energy_j) <= 1e-9 * m.total_energy_j);
    CHECK(std::abs(m.epb_j_per_bit * static_cast<double>(m.total_bits) - m.total_energy_j) <= 1e-9 * m.total_energy_j);
    double latency = 0.0;
    EnergyBreakdown energy;
    for (const auto& l : m.per_layer) {
        latency += l.layer_latency_s;
        energy += l.energy;
    }
    CHECK(std::abs(latency - m.total_latency_s) <= 1e-12 * m.total_latency_s);
    CHECK(std::abs(energy.total() - m.total_energy_j) <= 1e-9 * m.total_energy_j);
    CHECK(std::abs(m.energy.total() - m.total_energy_j) <= 1e-9 * m.total_energy_j);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("compute_time examples") {
    CHECK(compute_time(assignment(10, 8), 2e9) == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(compute_time(assignment(0, 8), 2e9) == 0.0);
    CHECK(compute_time(assignment(132, 132), 2e9) == doctest::Approx(0.5e-9).epsilon(1e-12));
    CHECK_THROWS_AS(compute_time(assignment(1, 0), 2e9), UsageError);
}

TEST_CASE("transfer_time_photonic examples") {
    devices::DeviceParams d;
    platform::WaveguideRoute r;
    r.length_mm = 18.4;
    const double flight = 18.4 / 7.5e10;
    CHECK(flight == doctest::Approx(0.245e-9).epsilon(1e-2));
    CHECK(transfer_time_photonic(768000, 768e9, 768e9, r, d, 2e9) == doctest::Approx(1e-6 + flight + 2e-9).epsilon(1e-12));
    CHECK(transfer_time_photonic(768000, 768e9, 768e9, r, d, 2e9) == doctest::Approx(1.0022e-6).epsilon(1e-4));
    CHECK(transfer_time_photonic(0, 768e9, 768e9, r, d, 2e9) == doctest::Approx(2.245e-9).epsilon(1e-3));
    const double full = transfer_time_photonic(768000, 768e9, 768e9, r, d, 2e9) - flight - 2e-9;
    const double half = transfer_time_photonic(768000, 768e9, 384e9, r, d, 2e9) - flight - 2e-9;
    CHECK(half == doctest::Approx(2.0 * full).epsilon(1e-9));
    CHECK(transfer_time_photonic(768000, 384e9, 768e9, r, d, 2e9) == doctest::Approx(half + flight + 2e-9));
    CHECK_THROWS_AS(transfer_time_photonic(1, 0.0, 1.0, r, d, 2e9), UsageError);
}

TEST_CASE("transfer_time_electrical examples") {
    const auto t = topology(PlatformKind::elec_interposer);
    CHECK(transfer_time_electrical(256, 1, t) == doctest::Approx(2.5e-9).epsilon(1e-12));
    CHECK(transfer_time_electrical(0, 5, t) == doctest::Approx(7.5e-9).epsilon(1e-12));
    const double header = 1.5e-9;
    CHECK(transfer_time_electrical(256, 1, t, true) - header == doctest::Approx(2.0 * 1e-9));
    CHECK_THROWS_AS(transfer_time_electrical(1, 1, platform::default_platform()), UsageError);
}

TEST_CASE("reconfigure_epoch examples") {
    const auto t = platform::default_platform();
    const devices::DeviceParams d;
    const auto mem = t.chiplet_index("mem");
    const auto start = initial_controller_state(t, d, 5e-6);
    std::vector<double> demand(t.chiplets.size(), 0.0);

    auto s = reconfigure_epoch(demand, start, t, d);
    for (auto a : s.active_gateways) CHECK(a == 1);
    CHECK(s.reconfig_count == 0);

    demand[mem] = 1.6e12;
    s = reconfigure_epoch(demand, start, t, d);
    CHECK(s.active_gateways[mem] == 3);
    CHECK(s.reconfig_count == 1);

    demand[mem] = 10e12;
    s = reconfigure_epoch(demand, s, t, d);
    CHECK(s.active_gateways[mem] == 4);
    CHECK(s.reconfig_count == 2);

    CHECK_THROWS_AS(reconfigure_epoch(std::vector<double>(2, 0.0), start, t, d), UsageError);
}

TEST_CASE("controller is monotone in demand and its laser power always matches the active routes") {
    const auto t = platform::default_platform();
    const devices::DeviceParams d;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 4e12);
    auto s = initial_controller_state(t, d, 5e-6);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> demand(t.chiplets.size());
        for (auto& x : demand) x = u(rng);
        auto more = demand;
        for (auto& x : more) x += u(rng) * 0.5;
        const auto a = reconfigure_epoch(demand, s, t, d);
        const auto b = reconfigure_epoch(more, s, t, d);
        for (std::size_t c = 0; c < t.chiplets.size(); ++c) {
            CHECK(a.active_gateways[c] >= 1);
            CHECK(a.active_gateways[c] <= t.chiplets[c].gateways);
            CHECK(b.active_gateways[c] >= a.active_gateways[c]);
        }
        CHECK(a.current_laser_w == doctest::Approx(laser_power_for(a, t, d)).epsilon(1e-15));

        // Active routes share the laser equally; the rest stay dark.
        const auto active = active_routes(a, t);
        double remaining = 1.0;
        std::vector<double> delivered(t.routes.size(), 0.0);
        for (std::size_t k = 0; k < t.routes.size(); ++k) {
            const auto split = devices::pcmc_transfer(a.pcmc[k]);
            delivered[k] = remaining * split.cross;
            remaining *= split.bar;
        }
        for (std::size_t k = 0; k < t.routes.size(); ++k) {
            const bool on = std::find(active.begin(), active.end(), k) != active.end();
            CHECK(delivered[k] == doctest::Approx(on ? 1.0 / static_cast<double>(active.size()) : 0.0).epsilon(1e-12));
        }
        s = a;
    }
}

TEST_CASE("single fc layer trace") {
    workload::DnnModelSpec m;
    m.name = "fc";
    m.layers = {fc(100, 10)};
    EngineOptions o;
    o.mac_rate_hz = 2e9;
    const auto r = run(m, platform::default_platform(), {}, o);
    CHECK(r.total_bits == 8960);
    REQUIRE(r.per_layer.size() == 1);
    const auto& l = r.per_layer[0];
    CHECK(l.bits_moved == 8960);
    CHECK(l.compute_s == doctest::Approx(1e-9));
    // One gateway per chiplet after the cold-start reconfiguration: the PCM
    // stall dominates.
    CHECK(l.overhead_s == doctest::Approx(1e-6));
    CHECK(l.read_s == doctest::Approx(8880.0 / 768e9 + 2e-9).epsilon(1e-3));
    CHECK(l.layer_latency_s == doctest::Approx(1e-6 + l.read_s));
    check_identities(r);

    const auto mono = run(m, topology(PlatformKind::monolithic), {}, o);
    CHECK(mono.per_layer[0].compute_s == doctest::Approx(0.5e-9));
    check_identities(mono);
}

TEST_CASE("energy identities and determinism on every shipped model and platform") {
    for (const char* name : {"lenet5", "resnet50", "densenet121", "vgg16", "mobilenetv2"}) {
        const auto m = load(name);
        for (auto kind : {PlatformKind::siph_interposer, PlatformKind::elec_interposer, PlatformKind::monolithic}) {
            CAPTURE(name);
            CAPTURE(platform::to_string(kind));
            const auto t = topology(kind);
            const auto a = run(m, t, {}, {});
            check_identities(a);
            const auto b = run(m, t, {}, {});
            CHECK(same_bits(a.total_latency_s, b.total_latency_s));
            CHECK(same_bits(a.total_energy_j, b.total_energy_j));
            CHECK(same_bits(a.epb_j_per_bit, b.epb_j_per_bit));
            CHECK(a.reconfig_count == b.reconfig_count);
            if (kind == PlatformKind::siph_interposer) {
                for (const auto& l : a.per_layer) CHECK(l.laser_w > 0.0);
                CHECK(a.energy.electrical_noc == 0.0);
            } else {
                CHECK(a.energy.laser == 0.0);
                CHECK(a.reconfig_count == 0);
            }
        }
    }
}

TEST_CASE("large models: siph beats elec and mono on latency") {
    for (const char* name : {"resnet50", "vgg16", "densenet121"}) {
        CAPTURE(name);
        const auto m = load(name);
        const auto siph = run(m, topology(PlatformKind::siph_interposer), {}, {});
        const auto elec = run(m, topology(PlatformKind::elec_interposer), {}, {});
        const auto mono = run(m, topology(PlatformKind::monolithic), {}, {});
        CHECK(siph.total_latency_s < elec.total_latency_s);
        CHECK(siph.total_latency_s < mono.total_latency_s);
    }
}

TEST_CASE("doubling channel counts grows bits superlinearly and never shortens latency") {
    for (auto kind : {PlatformKind::siph_interposer, PlatformKind::elec_interposer, PlatformKind::monolithic}) {
        CAPTURE(platform::to_string(kind));
        const auto t = topology(kind);
        const auto a = run(toy(1), t, {}, {});
        const auto b = run(toy(2), t, {}, {});
        CHECK(b.total_bits > 2 * a.total_bits);
        CHECK(b.total_latency_s >= a.total_latency_s);
    }
}

TEST_CASE("disabling the controller never slows a run and never lowers idle laser power") {
    const auto t = platform::default_platform();
    const devices::DeviceParams d;
    EngineOptions off;
    off.resipi = false;
    for (const char* name : {"lenet5", "resnet50", "mobilenetv2"}) {
        CAPTURE(name);
        const auto m = load(name);
        const auto on_run = run(m, t, d, {});
        const auto off_run = run(m, t, d, off);
        CHECK(off_run.total_latency_s <= on_run.total_latency_s);
        CHECK(off_run.reconfig_count == 0);
        for (const auto& l : off_run.per_layer) CHECK(l.overhead_s == 0.0);
    }
    const auto all = initial_controller_state(t, d, 5e-6, true);
    const auto idle = reconfigure_epoch(std::vector<double>(t.chiplets.size(), 0.0), all, t, d);
    CHECK(all.current_laser_w >= idle.current_laser_w);
    CHECK(active_interposer_mrs(all, t) >= active_interposer_mrs(idle, t));
    CHECK(active_interposer_mrs(all, t) == t.total_mrs());
}

TEST_CASE("simulate_model rejects a plan built for another model") {
    const auto t = platform::default_platform();
    const auto plan = mapper::map_model(toy(1), t);
    CHECK_THROWS_AS(simulate_model(load("lenet5"), t, plan, {}, {}), UsageError);
    EngineOptions bad;
    bad.epoch_s = 0.0;
    CHECK_THROWS_AS(run(toy(1), t, {}, bad), ConfigError);
}
