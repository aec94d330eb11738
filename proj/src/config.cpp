// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "chipsim/error.hpp"
#include "json.hpp"

namespace chipsim {

using nlohmann::ordered_json;
using platform::ChipletRole;
using platform::MacClass;

namespace {

// Reads fields out of one JSON object and rejects anything left over.
class Section {
   public:
    Section(const ordered_json& obj, std::string name) : obj_(obj), name_(std::move(name)) {
        if (!obj_.is_object()) throw ConfigError("config section '" + name_ + "' must be an object");
    }
    ~Section() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& [key, _] : obj_.items())
            if (!seen_.count(key)) throw ConfigError("config section '" + name_ + "': unknown key '" + key + "'");
    }

    template <typename T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        try {
            out = obj_.at(key).get<T>();
        } catch (const ordered_json::exception& e) {
            throw ConfigError("config section '" + name_ + "': bad value for '" + key + "': " + e.what());
        }
    }

    const ordered_json* child(const char* key) {
        seen_.insert(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    const std::string& name() const { return name_; }

   private:
    const ordered_json& obj_;
    std::string name_;
    std::set<std::string> seen_;
};

void read_platform(const ordered_json& j, platform::PlatformConfig& p) {
    Section s(j, "platform");
    std::string kind(platform::to_string(p.kind));
    s.get("kind", kind);
    try {
        p.kind = platform::parse_platform_kind(kind);
    } catch (const UsageError& e) {
        throw ConfigError(e.what());
    }
    s.get("wavelengths", p.wavelengths);
    s.get("link_rate_bps", p.link_rate_bps);
    s.get("gateway_freq_hz", p.gateway_freq_hz);
    s.get("noc_width_bits", p.noc_width_bits);
    s.get("noc_freq_hz", p.noc_freq_hz);
    s.get("interposer_side_mm", p.interposer_side_mm);
    std::vector<std::size_t> grid{p.grid_rows, p.grid_cols};
    s.get("grid", grid);
    if (grid.size() != 2) throw ConfigError("platform.grid must be [rows, cols]");
    p.grid_rows = grid[0];
    p.grid_cols = grid[1];
}

void read_mac_types(const ordered_json& j, platform::PlatformConfig& p) {
    if (!j.is_array()) throw ConfigError("mac_types must be an array");
    p.mac_types.clear();
    for (const auto& e : j) {
        Section s(e, "mac_types[]");
        platform::MacUnitType t;
        std::string cls = "conv";
        s.get("name", t.name);
        s.get("vector_len", t.vector_len);
        s.get("class", cls);
        if (t.name.empty() || t.vector_len < 1) throw ConfigError("mac_types entries need a name and vector_len >= 1");
        if (cls == "conv")
            t.cls = MacClass::conv;
        else if (cls == "dense")
            t.cls = MacClass::dense;
        else
            throw ConfigError("mac_types class must be conv or dense");
        p.mac_types.push_back(std::move(t));
    }
}

void read_chiplets(const ordered_json& j, platform::PlatformConfig& p) {
    if (!j.is_array()) throw ConfigError("chiplets must be an array");
    p.chiplets.clear();
    for (const auto& e : j) {
        Section s(e, "chiplets[]");
        platform::ChipletConfig c;
        std::string role = "compute";
        s.get("id", c.id);
        s.get("role", role);
        s.get("mac_type", c.mac_type);
        s.get("count", c.count);
        s.get("macs", c.macs);
        s.get("macs_per_gateway", c.macs_per_gateway);
        s.get("gateways", c.gateways);
        if (c.id.empty()) throw ConfigError("chiplets entries need an id");
        if (role == "compute")
            c.role = ChipletRole::compute;
        else if (role == "memory")
            c.role = ChipletRole::memory;
        else
            throw ConfigError("chiplet role must be compute or memory");
        p.chiplets.push_back(std::move(c));
    }
}

void read_electrical(const ordered_json& j, platform::ElectricalParams& e) {
    Section s(j, "electrical");
    s.get("router_latency_cycles", e.router_latency_cycles);
    s.get("congestion_factor", e.congestion_factor);
    s.get("link_energy_pj_per_bit_hop", e.link_energy_pj_per_bit_hop);
    s.get("router_static_w", e.router_static_w);
}

void read_monolithic(const ordered_json& j, platform::MonolithicParams& m) {
    Section s(j, "monolithic");
    s.get("macs", m.macs);
    s.get("vector_len", m.vector_len);
    s.get("offchip_bw_bps", m.offchip_bw_bps);
    s.get("offchip_latency_s", m.offchip_latency_s);
    s.get("offchip_energy_pj_per_bit", m.offchip_energy_pj_per_bit);
}

void read_engine(const ordered_json& j, engine::EngineOptions& o) {
    Section s(j, "engine");
    s.get("mac_rate_hz", o.mac_rate_hz);
    s.get("epoch_s", o.epoch_s);
    s.get("overlap", o.overlap);
    s.get("resipi", o.resipi);
    std::string demand = o.demand == engine::DemandMode::oracle ? "oracle" : "trailing";
    s.get("demand", demand);
    if (demand == "oracle")
        o.demand = engine::DemandMode::oracle;
    else if (demand == "trailing")
        o.demand = engine::DemandMode::trailing;
    else
        throw ConfigError("engine.demand must be oracle or trailing");
    s.get("gateway_overhead_cycles", o.gateway_overhead_cycles);
    s.get("weight_refetch_factor", o.weight_refetch_factor);
    s.get("controller_power_w", o.controller_power_w);
    s.get("pcm_switch_energy_pj", o.pcm_switch_energy_pj);
    s.get("mac_mrs_per_lane", o.mac_mrs_per_lane);
}

void read_devices(const ordered_json& j, devices::DeviceParams& d) {
    Section s(j, "devices");
    s.get("coupler_loss_db", d.coupler_loss_db);
    s.get("propagation_loss_db_per_mm", d.propagation_loss_db_per_mm);
    s.get("mr_through_loss_db", d.mr_through_loss_db);
    s.get("mr_drop_loss_db", d.mr_drop_loss_db);
    s.get("splitter_excess_db", d.splitter_excess_db);
    s.get("pd_sensitivity_dbm", d.pd_sensitivity_dbm);
    s.get("laser_efficiency", d.laser_efficiency);
    s.get("mr_tuning_mw", d.mr_tuning_mw);
    s.get("modulator_energy_pj_per_bit", d.modulator_energy_pj_per_bit);
    s.get("filter_pd_energy_pj_per_bit", d.filter_pd_energy_pj_per_bit);
    s.get("gateway_elec_energy_pj_per_bit", d.gateway_elec_energy_pj_per_bit);
    s.get("dac_energy_pj", d.dac_energy_pj);
    s.get("adc_energy_pj", d.adc_energy_pj);
    s.get("pcm_transition_s", d.pcm_transition_s);
    s.get("group_velocity_mm_per_s", d.group_velocity_mm_per_s);
}

}  // namespace

Config load_config(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    Config c;
    {
        Section top(doc, "<root>");
        if (const auto* j = top.child("platform")) read_platform(*j, c.platform);
        if (const auto* j = top.child("mac_types")) read_mac_types(*j, c.platform);
        if (const auto* j = top.child("chiplets")) read_chiplets(*j, c.platform);
        if (const auto* j = top.child("electrical")) read_electrical(*j, c.platform.electrical);
        if (const auto* j = top.child("monolithic")) read_monolithic(*j, c.platform.monolithic);
        if (const auto* j = top.child("engine")) read_engine(*j, c.engine);
        if (const auto* j = top.child("devices")) read_devices(*j, c.devices);
    }
    c.devices.validate();
    c.engine.validate();
    return c;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string dump_config(const Config& c) {
    const auto& p = c.platform;
    ordered_json doc;
    doc["platform"] = {
        {"kind", platform::to_string(p.kind)},
        {"wavelengths", p.wavelengths},
        {"link_rate_bps", p.link_rate_bps},
        {"gateway_freq_hz", p.gateway_freq_hz},
        {"noc_width_bits", p.noc_width_bits},
        {"noc_freq_hz", p.noc_freq_hz},
        {"interposer_side_mm", p.interposer_side_mm},
        {"grid", {p.grid_rows, p.grid_cols}},
    };
    doc["mac_types"] = ordered_json::array();
    for (const auto& t : p.mac_types)
        doc["mac_types"].push_back(
            {{"name", t.name}, {"vector_len", t.vector_len}, {"class", t.cls == MacClass::conv ? "conv" : "dense"}});
    doc["chiplets"] = ordered_json::array();
    for (const auto& ch : p.chiplets) {
        ordered_json e = {{"id", ch.id}, {"role", ch.role == ChipletRole::compute ? "compute" : "memory"}, {"count", ch.count}};
        if (ch.role == ChipletRole::compute) {
            e["mac_type"] = ch.mac_type;
            e["macs"] = ch.macs;
            e["macs_per_gateway"] = ch.macs_per_gateway;
        } else {
            e["gateways"] = ch.gateways;
        }
        doc["chiplets"].push_back(std::move(e));
    }
    const auto& el = p.electrical;
    doc["electrical"] = {{"router_latency_cycles", el.router_latency_cycles},
                         {"congestion_factor", el.congestion_factor},
                         {"link_energy_pj_per_bit_hop", el.link_energy_pj_per_bit_hop},
                         {"router_static_w", el.router_static_w}};
    const auto& m = p.monolithic;
    doc["monolithic"] = {{"macs", m.macs},
                         {"vector_len", m.vector_len},
                         {"offchip_bw_bps", m.offchip_bw_bps},
                         {"offchip_latency_s", m.offchip_latency_s},
                         {"offchip_energy_pj_per_bit", m.offchip_energy_pj_per_bit}};
    const auto& o = c.engine;
    doc["engine"] = {{"mac_rate_hz", o.mac_rate_hz},
                     {"epoch_s", o.epoch_s},
                     {"overlap", o.overlap},
                     {"resipi", o.resipi},
                     {"demand", o.demand == engine::DemandMode::oracle ? "oracle" : "trailing"},
                     {"gateway_overhead_cycles", o.gateway_overhead_cycles},
                     {"weight_refetch_factor", o.weight_refetch_factor},
                     {"controller_power_w", o.controller_power_w},
                     {"pcm_switch_energy_pj", o.pcm_switch_energy_pj},
                     {"mac_mrs_per_lane", o.mac_mrs_per_lane}};
    const auto& d = c.devices;
    doc["devices"] = {{"coupler_loss_db", d.coupler_loss_db},
                      {"propagation_loss_db_per_mm", d.propagation_loss_db_per_mm},
                      {"mr_through_loss_db", d.mr_through_loss_db},
                      {"mr_drop_loss_db", d.mr_drop_loss_db},
                      {"splitter_excess_db", d.splitter_excess_db},
                      {"pd_sensitivity_dbm", d.pd_sensitivity_dbm},
                      {"laser_efficiency", d.laser_efficiency},
                      {"mr_tuning_mw", d.mr_tuning_mw},
                      {"modulator_energy_pj_per_bit", d.modulator_energy_pj_per_bit},
                      {"filter_pd_energy_pj_per_bit", d.filter_pd_energy_pj_per_bit},
                      {"gateway_elec_energy_pj_per_bit", d.gateway_elec_energy_pj_per_bit},
                      {"dac_energy_pj", d.dac_energy_pj},
                      {"adc_energy_pj", d.adc_energy_pj},
                      {"pcm_transition_s", d.pcm_transition_s},
                      {"group_velocity_mm_per_s", d.group_velocity_mm_per_s}};
    return doc.dump(2) + "\n";
}

}  // namespace chipsim
