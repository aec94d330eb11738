// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

// Runs acceptance criteria 1-9 and prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "chipsim/config.hpp"
#include "chipsim/devices.hpp"
#include "chipsim/engine.hpp"
#include "chipsim/mapper.hpp"
#include "chipsim/platform.hpp"
#include "chipsim/report.hpp"
#include "chipsim/workload.hpp"

using namespace chipsim;
using platform::PlatformKind;

namespace {

const char* kModels[] = {"lenet5", "resnet50", "densenet121", "vgg16", "mobilenetv2"};

// Collects failures for one criterion; the first few are echoed as detail.
struct Check {
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

workload::DnnModelSpec load(const std::string& name) {
    return workload::load_model_file(std::string(CHIPSIM_MODELS_DIR) + "/" + name + ".desc");
}

Config calibration() { return load_config_file(std::string(CHIPSIM_CONFIGS_DIR) + "/default.json"); }

platform::PlatformTopology topology_for(const Config& c, PlatformKind kind) {
    auto p = c.platform;
    p.kind = kind;
    return platform::build_topology(p);
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

void criterion_1(Check& c) {
    const auto cfg = platform::default_platform_config();
    c.expect(cfg.wavelengths == 64, "wavelengths");
    c.expect(cfg.link_rate_bps == 12e9, "link rate");
    c.expect(cfg.gateway_freq_hz == 2e9, "gateway frequency");
    c.expect(cfg.noc_width_bits == 128 && cfg.noc_freq_hz == 2e9, "NoC width/frequency");
    const auto t = platform::default_platform();
    c.expect(t.memory_chiplets().size() == 1, "one memory chiplet");
    c.expect(t.compute_chiplets().size() == 8, "eight compute chiplets");
    struct Row {
        const char* type;
        std::uint64_t vector_len, chiplets, macs, per_gateway;
    };
    const Row rows[] = {{"dense100", 100, 2, 4, 1}, {"conv7x7", 49, 1, 8, 2}, {"conv5x5", 25, 2, 16, 4}, {"conv3x3", 9, 3, 44, 11}};
    for (const auto& row : rows) {
        std::uint64_t n = 0;
        for (const auto& s : t.chiplets) {
            if (!s.mac_type || s.mac_type->name != row.type) continue;
            ++n;
            c.expect(s.mac_type->vector_len == row.vector_len, std::string(row.type) + " vector length");
            c.expect(s.macs == row.macs, std::string(row.type) + " MACs");
            c.expect(s.macs_per_gateway == row.per_gateway, std::string(row.type) + " MACs per gateway");
        }
        c.expect(n == row.chiplets, std::string(row.type) + " chiplet count");
    }
    c.expect(t.compute_gateway_count() == 32 && t.memory_gateway_count() == 4, "gateway counts");
    c.detail = std::to_string(t.chiplets.size()) + " chiplets, " + std::to_string(t.gateways.size()) + " gateways";
}

void criterion_2(Check& c) {
    const std::uint64_t expected[] = {62006, 25636712, 8062504, 138357544, 3538984};
    for (std::size_t i = 0; i < std::size(kModels); ++i) {
        try {
            const auto m = load(kModels[i]);
            c.expect(workload::param_count(m) == expected[i], std::string(kModels[i]) + " parameter count");
        } catch (const std::exception& e) {
            c.expect(false, std::string(kModels[i]) + ": " + e.what());
        }
    }
    c.detail = "5 descriptors";
}

void criterion_3(Check& c) {
    std::map<std::string, report::RunSummary> by_name;
    for (const auto& r : report::reference_baselines())
        by_name[r.name] = {"", "table", r.power_w, r.latency_ms * 1e-3, r.epb_nj_per_bit * 1e-9};
    auto summary = [&](const char* name, const char* platform) {
        auto s = by_name.at(name);
        s.platform = platform;
        return s;
    };
    const std::vector<report::RunSummary> runs = {summary("CrossLight", "mono"),
                                                  summary("2.5D-CrossLight-Elec-Interposer", "elec"),
                                                  summary("2.5D-CrossLight-SiPh-Interposer", "siph")};
    const auto rows = report::comparison_table(runs, "siph");
    auto get = [&](const char* platform) {
        for (const auto& r : rows)
            if (r.platform == platform && r.model == "table") return r;
        return report::ComparisonRow{};
    };
    const double elec_latency = *get("elec").normalized_latency;
    const double elec_epb = *get("elec").normalized_epb;
    const double mono_latency = *get("mono").normalized_latency;
    const double mono_epb = *get("mono").normalized_epb;
    c.expect(std::abs(elec_latency - 34.2) <= 0.5, "elec latency ratio " + fmt(elec_latency));
    c.expect(std::abs(elec_epb - 15.77) <= 0.3, "elec EPB ratio " + fmt(elec_epb));
    c.expect(std::abs(mono_latency - 6.61) <= 0.2, "mono latency ratio " + fmt(mono_latency));
    c.expect(std::abs(mono_epb - 2.77) <= 0.2, "mono EPB ratio " + fmt(mono_epb));
    c.detail = "latency x" + fmt(elec_latency) + " / x" + fmt(mono_latency) + ", EPB x" + fmt(elec_epb) + " / x" + fmt(mono_epb);
}

struct Sweep {
    std::map<std::string, std::map<PlatformKind, engine::RunMetrics>> runs;
    std::map<std::string, std::uint64_t> params;
};

Sweep sweep(const Config& cfg) {
    Sweep s;
    for (const char* name : kModels) {
        const auto m = load(name);
        s.params[name] = workload::param_count(m);
        for (auto kind : {PlatformKind::siph_interposer, PlatformKind::elec_interposer, PlatformKind::monolithic})
            s.runs[name][kind] = engine::run(m, topology_for(cfg, kind), cfg.devices, cfg.engine);
    }
    return s;
}

void criterion_4(Check& c, const Sweep& s) {
    double worst_latency = INFINITY, worst_power = INFINITY;
    for (const char* name : kModels) {
        if (s.params.at(name) < 1000000) continue;
        const auto& r = s.runs.at(name);
        const double siph = r.at(PlatformKind::siph_interposer).total_latency_s;
        const double mono = r.at(PlatformKind::monolithic).total_latency_s;
        const double elec = r.at(PlatformKind::elec_interposer).total_latency_s;
        c.expect(siph < mono && mono < elec, std::string("(a) ") + name + " latency siph " + fmt(siph) + " mono " + fmt(mono) +
                                                 " elec " + fmt(elec));
        worst_latency = std::min({worst_latency, mono / siph, elec / mono});
        const double p_siph = r.at(PlatformKind::siph_interposer).avg_power_w;
        const double p_elec = r.at(PlatformKind::elec_interposer).avg_power_w;
        c.expect(p_siph > p_elec, std::string("(c) ") + name + " power siph " + fmt(p_siph) + " elec " + fmt(p_elec));
        worst_power = std::min(worst_power, p_siph / p_elec);
    }
    auto epb_ratio = [&](const char* name) {
        const auto& r = s.runs.at(name);
        return r.at(PlatformKind::elec_interposer).epb_j_per_bit / r.at(PlatformKind::siph_interposer).epb_j_per_bit;
    };
    const double lenet = epb_ratio("lenet5");
    const double vgg = epb_ratio("vgg16");
    c.expect(lenet < vgg, "(b) EPB elec/siph lenet5 " + fmt(lenet) + " vgg16 " + fmt(vgg));
    c.detail = "min latency gap x" + fmt(worst_latency) + ", EPB ratio lenet5 " + fmt(lenet) + " < vgg16 " + fmt(vgg) +
               ", min power gap x" + fmt(worst_power);
}

void criterion_5(Check& c, const Sweep& s, const Config& cfg) {
    std::size_t n = 0;
    auto audit = [&](const engine::RunMetrics& m, const std::string& tag) {
        const double e = m.total_energy_j;
        c.expect(e > 0.0, tag + " energy positive");
        c.expect(std::abs(m.avg_power_w * m.total_latency_s - e) <= 1e-9 * e, tag + " power*latency");
        c.expect(std::abs(m.epb_j_per_bit * static_cast<double>(m.total_bits) - e) <= 1e-9 * e, tag + " epb*bits");
        ++n;
    };
    for (const auto& [name, per] : s.runs)
        for (const auto& [kind, m] : per) audit(m, name + "/" + std::string(platform::to_string(kind)));
    auto variant = cfg;
    variant.engine.overlap = false;
    variant.engine.demand = engine::DemandMode::trailing;
    for (const char* name : kModels) {
        const auto m = load(name);
        for (auto kind : {PlatformKind::siph_interposer, PlatformKind::elec_interposer, PlatformKind::monolithic})
            audit(engine::run(m, topology_for(variant, kind), variant.devices, variant.engine), std::string(name) + " variant");
    }
    c.detail = std::to_string(n) + " runs";
}

void criterion_6(Check& c) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double loss = 3.0 * u(rng);
        const int phase = static_cast<int>(u(rng) * 3.0);
        const auto s = phase == 0   ? devices::PcmcState::crystalline(loss)
                       : phase == 1 ? devices::PcmcState::amorphous(loss)
                                    : devices::PcmcState::partial(u(rng), loss);
        const auto out = devices::pcmc_transfer(s);
        const double kept = std::pow(10.0, -loss / 10.0);
        c.expect(out.bar >= 0.0 && out.cross >= 0.0 && std::abs(out.bar + out.cross - kept) <= 1e-12, "PCMC conservation");
    }

    const devices::DeviceParams d;
    for (int i = 0; i < 500; ++i) {
        const devices::OpticalPath p{30.0 * u(rng), static_cast<std::uint64_t>(500 * u(rng)), 1, 1 + static_cast<std::uint64_t>(16 * u(rng)), 1};
        const std::vector<devices::OpticalPath> paths{p};
        auto louder = d;
        louder.coupler_loss_db += 3.0103;
        const double ratio = devices::required_laser_power(paths, 64, louder) / devices::required_laser_power(paths, 64, d);
        c.expect(std::abs(ratio - 2.0) <= 2e-6, "laser doubling " + fmt(ratio));

        const devices::OpticalPath a{20.0 * u(rng), static_cast<std::uint64_t>(100 * u(rng)), 1, 1, 1};
        const devices::OpticalPath b{20.0 * u(rng), static_cast<std::uint64_t>(100 * u(rng)), 2, 1, 0};
        const devices::OpticalPath ab{a.length_mm + b.length_mm, a.mrs_passed + b.mrs_passed, 3, 1, 1};
        const double sum = devices::path_insertion_loss(a, d) + devices::path_insertion_loss(b, d);
        c.expect(close_rel(devices::path_insertion_loss(ab, d), sum, 1e-12), "loss additivity");
    }

    std::uniform_int_distribution<std::uint64_t> bits(0, 1ull << 40);
    for (int i = 0; i < 10000; ++i) {
        const auto b = bits(rng);
        const std::uint64_t lambdas = 1 + static_cast<std::uint64_t>(i % 128);
        const double rate = 1e9 * static_cast<double>(1 + i % 40);
        const double t = devices::serialization_time(b, lambdas, rate);
        const double exact = static_cast<double>(b) / (static_cast<double>(lambdas) * rate);
        const double back = t * static_cast<double>(lambdas) * rate;
        const double ulp = std::nextafter(static_cast<double>(b), INFINITY) - static_cast<double>(b);
        c.expect(t == exact && std::abs(back - static_cast<double>(b)) <= 2.0 * ulp, "serialization exactness");
    }
    c.detail = "10000 PCMC states, 500 laser/loss paths, 10000 serializations";
}

workload::DnnModelSpec two_layer_toy() {
    workload::DnnModelSpec m;
    m.name = "toy2";
    workload::LayerSpec conv;
    conv.kind = workload::LayerKind::conv;
    conv.kernel_h = conv.kernel_w = 3;
    conv.in_channels = 3;
    conv.out_channels = 8;
    conv.in_h = conv.in_w = 16;
    conv.out_h = conv.out_w = 14;
    workload::LayerSpec fc;
    fc.kind = workload::LayerKind::fc;
    fc.index = 1;
    fc.in_channels = 8 * 14 * 14;
    fc.out_channels = 10;
    m.layers = {conv, fc};
    return m;
}

void criterion_7(Check& c, const Config& cfg) {
    const auto t = topology_for(cfg, PlatformKind::siph_interposer);
    const auto& d = cfg.devices;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 4e12);
    auto state = engine::initial_controller_state(t, d, cfg.engine.epoch_s);
    std::size_t audits = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> demand(t.chiplets.size());
        for (auto& x : demand) x = u(rng) * (i % 3 == 0 ? 0.0 : 1.0);
        auto more = demand;
        for (auto& x : more) x += u(rng) * 0.25;
        const auto next = engine::reconfigure_epoch(demand, state, t, d);
        const auto higher = engine::reconfigure_epoch(more, state, t, d);
        for (std::size_t ch = 0; ch < t.chiplets.size(); ++ch) {
            c.expect(next.active_gateways[ch] >= 1 && next.active_gateways[ch] <= t.chiplets[ch].gateways, "clamp");
            c.expect(higher.active_gateways[ch] >= next.active_gateways[ch], "monotone activation");
            if (demand[ch] == 0.0) c.expect(next.active_gateways[ch] == 1, "zero demand floor");
        }
        if (next.reconfig_count != state.reconfig_count) {
            c.expect(next.current_laser_w == engine::laser_power_for(next, t, d), "laser audit");
            ++audits;
        }
        state = next;
    }

    const auto toy = two_layer_toy();
    auto off = cfg.engine;
    off.resipi = false;
    const auto on_run = engine::run(toy, t, d, cfg.engine);
    const auto off_run = engine::run(toy, t, d, off);
    double min_off = INFINITY, max_on = 0.0;
    for (std::size_t i = 0; i < toy.layers.size(); ++i) {
        c.expect(off_run.per_layer[i].laser_w >= on_run.per_layer[i].laser_w, "idle laser power with controller disabled");
        min_off = std::min(min_off, off_run.per_layer[i].laser_w);
        max_on = std::max(max_on, on_run.per_layer[i].laser_w);
    }
    c.detail = std::to_string(audits) + " audited reconfigurations; toy laser " + fmt(max_on) + " W on vs " + fmt(min_off) + " W off";
}

// Counts invocations by walking every output element's dot product in
// vector-length chunks.
std::uint64_t enumerate_invocations(const workload::LayerSpec& l, std::uint64_t vector_len) {
    std::uint64_t invocations = 0;
    const std::uint64_t outputs = l.kind == workload::LayerKind::fc ? l.out_channels : l.out_h * l.out_w * l.out_channels;
    for (std::uint64_t o = 0; o < outputs; ++o) {
        std::uint64_t lanes = 0;
        auto term = [&]() {
            if (lanes == 0) ++invocations;
            lanes = (lanes + 1) % vector_len;
        };
        if (l.kind == workload::LayerKind::fc) {
            for (std::uint64_t ci = 0; ci < l.in_channels; ++ci) term();
        } else {
            for (std::uint64_t ky = 0; ky < l.kernel_h; ++ky)
                for (std::uint64_t kx = 0; kx < l.kernel_w; ++kx)
                    for (std::uint64_t ci = 0; ci < l.in_channels; ++ci) term();
        }
    }
    return invocations;
}

void criterion_8(Check& c) {
    std::size_t layers = 0;
    for (const auto& type : platform::default_mac_types()) {
        platform::PlatformConfig pc;
        pc.chiplets = {{"mem", platform::ChipletRole::memory, "", 1, 0, 0, 1}, {"c", platform::ChipletRole::compute, type.name, 1, 4, 2, 0}};
        const auto t = platform::build_topology(pc);
        std::vector<workload::LayerSpec> grid;
        for (std::uint64_t k : {1, 3, 5, 7})
            for (std::uint64_t cin = 1; cin <= 4; ++cin)
                for (std::uint64_t cout = 1; cout <= 4; ++cout)
                    for (std::uint64_t in = 1; in <= 4; ++in)
                        for (std::uint64_t out = 1; out <= in; ++out) {
                            workload::LayerSpec l;
                            l.kind = workload::LayerKind::conv;
                            l.kernel_h = l.kernel_w = k;
                            l.in_channels = cin;
                            l.out_channels = cout;
                            l.in_h = l.in_w = in;
                            l.out_h = l.out_w = out;
                            grid.push_back(l);
                        }
        for (std::uint64_t cin = 1; cin <= 4; ++cin)
            for (std::uint64_t cout = 1; cout <= 4; ++cout) {
                workload::LayerSpec l;
                l.kind = workload::LayerKind::fc;
                l.in_channels = cin;
                l.out_channels = cout;
                grid.push_back(l);
            }
        workload::DnnModelSpec m;
        m.name = "grid";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid[i].index = i;
            m.layers.push_back(grid[i]);
        }
        const auto plan = mapper::map_model(m, t);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& a = plan.assignments[i];
            c.expect(a.mac_type == type, type.name + " selected");
            c.expect(a.invocations == enumerate_invocations(grid[i], type.vector_len),
                     type.name + " layer " + std::to_string(i) + " invocations");
            c.expect(a.total_macs == 4, "MAC total");
            ++layers;
        }
    }
    c.detail = std::to_string(layers) + " layers x MAC types";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void criterion_9(Check& c) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "chipsim_accept_a.csv").string();
    const std::string b = (dir / "chipsim_accept_b.csv").string();
    const std::string cfg = std::string(CHIPSIM_CONFIGS_DIR) + "/default.json";
    auto run_compare = [&](const std::string& out) {
        const std::string cmd = std::string("\"") + CHIPSIM_BINARY + "\" --models-dir \"" + CHIPSIM_MODELS_DIR +
                                "\" compare --config \"" + cfg + "\" --out \"" + out + "\" > /dev/null";
        return std::system(cmd.c_str());
    };
    c.expect(run_compare(a) == 0, "first compare run");
    c.expect(run_compare(b) == 0, "second compare run");
    const auto x = slurp(a);
    const auto y = slurp(b);
    c.expect(!x.empty(), "non-empty output");
    c.expect(x == y, "byte-identical output");
    c.detail = std::to_string(x.size()) + " bytes, " + std::to_string(std::count(x.begin(), x.end(), '\n')) + " lines";
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const std::string& name, const std::function<void(Check&)>& fn) {
        Check c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = c.failures.empty();
        if (!ok) ++failed;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): ";
        if (ok) {
            std::cout << c.detail;
        } else {
            std::cout << c.failures.size() << " failure(s)";
            for (std::size_t i = 0; i < std::min<std::size_t>(3, c.failures.size()); ++i) std::cout << "; " << c.failures[i];
        }
        std::cout << "\n";
    };

    const auto cfg = calibration();
    Sweep s;
    std::string sweep_error;
    try {
        s = sweep(cfg);
    } catch (const std::exception& e) {
        sweep_error = e.what();
    }
    auto needs_sweep = [&](Check& c) {
        if (!sweep_error.empty()) throw std::runtime_error("sweep failed: " + sweep_error);
        (void)c;
    };

    report(1, "platform configuration golden", criterion_1);
    report(2, "model parameter counts golden", criterion_2);
    report(3, "published ratio consistency", criterion_3);
    report(4, "trend reproduction", [&](Check& c) {
        needs_sweep(c);
        criterion_4(c, s);
    });
    report(5, "energy identities", [&](Check& c) {
        needs_sweep(c);
        criterion_5(c, s, cfg);
    });
    report(6, "device properties", criterion_6);
    report(7, "controller properties", [&](Check& c) { criterion_7(c, cfg); });
    report(8, "mapping oracle", criterion_8);
    report(9, "compare determinism", criterion_9);

    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criterion(s) failed") << "\n";
    return failed == 0 ? 0 : 1;
}
