// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/platform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "chipsim/error.hpp"

namespace chipsim::platform {

std::string_view to_string(PlatformKind kind) {
    switch (kind) {
        case PlatformKind::siph_interposer:
            return "siph";
        case PlatformKind::elec_interposer:
            return "elec";
        case PlatformKind::monolithic:
            return "mono";
    }
    return "?";
}

PlatformKind parse_platform_kind(std::string_view name) {
    if (name == "siph" || name == "siph_interposer") return PlatformKind::siph_interposer;
    if (name == "elec" || name == "elec_interposer") return PlatformKind::elec_interposer;
    if (name == "mono" || name == "monolithic") return PlatformKind::monolithic;
    throw UsageError("unknown platform '" + std::string(name) + "' (expected siph, elec or mono)");
}

std::vector<MacUnitType> default_mac_types() {
    return {
        {"conv3x3", 9, MacClass::conv},
        {"conv5x5", 25, MacClass::conv},
        {"conv7x7", 49, MacClass::conv},
        {"dense100", 100, MacClass::dense},
    };
}

PlatformConfig default_platform_config() {
    PlatformConfig c;
    c.chiplets = {
        {"mem", ChipletRole::memory, "", 1, 0, 0, 4},
        {"dense100", ChipletRole::compute, "dense100", 2, 4, 1, 0},
        {"conv7x7", ChipletRole::compute, "conv7x7", 1, 8, 2, 0},
        {"conv5x5", ChipletRole::compute, "conv5x5", 2, 16, 4, 0},
        {"conv3x3", ChipletRole::compute, "conv3x3", 3, 44, 11, 0},
    };
    return c;
}

std::vector<std::size_t> PlatformTopology::compute_chiplets() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < chiplets.size(); ++i)
        if (chiplets[i].role == ChipletRole::compute) out.push_back(i);
    return out;
}

std::vector<std::size_t> PlatformTopology::memory_chiplets() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < chiplets.size(); ++i)
        if (chiplets[i].role == ChipletRole::memory) out.push_back(i);
    return out;
}

std::uint64_t PlatformTopology::compute_gateway_count() const {
    std::uint64_t n = 0;
    for (const auto& c : chiplets)
        if (c.role == ChipletRole::compute) n += c.gateways;
    return n;
}

std::uint64_t PlatformTopology::memory_gateway_count() const {
    std::uint64_t n = 0;
    for (const auto& c : chiplets)
        if (c.role == ChipletRole::memory) n += c.gateways;
    return n;
}

std::uint64_t PlatformTopology::total_mrs() const {
    std::uint64_t n = 0;
    for (const auto& m : mrgs) n += (m.filter_rows + m.modulator_rows) * m.mrs_per_row;
    return n;
}

std::vector<std::size_t> PlatformTopology::gateways_of(std::size_t chiplet) const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < gateways.size(); ++g)
        if (gateways[g].chiplet == chiplet) out.push_back(g);
    return out;
}

std::size_t PlatformTopology::chiplet_index(std::string_view id) const {
    for (std::size_t i = 0; i < chiplets.size(); ++i)
        if (chiplets[i].id == id) return i;
    throw UsageError("unknown chiplet '" + std::string(id) + "'");
}

double route_length(Position src, std::span<const Position> dst, double side_mm) {
    double farthest = 0.0;
    for (const auto& d : dst) farthest = std::max(farthest, std::abs(d.x_mm - src.x_mm) + std::abs(d.y_mm - src.y_mm));
    return farthest + 0.1 * side_mm;
}

namespace {

void check_scalars(const PlatformConfig& c) {
    if (c.wavelengths < 1) throw ConfigError("wavelengths must be >= 1");
    for (double v : {c.link_rate_bps, c.gateway_freq_hz, c.noc_freq_hz, c.interposer_side_mm})
        if (!(v > 0.0)) throw ConfigError("rates, frequencies and interposer side must be > 0");
    if (c.noc_width_bits < 1) throw ConfigError("noc_width_bits must be >= 1");
    if (c.grid_rows < 1 || c.grid_cols < 1) throw ConfigError("grid dims must be >= 1");
    if (c.electrical.congestion_factor < 1.0) throw ConfigError("electrical congestion_factor must be >= 1");
    if (c.electrical.link_energy_pj_per_bit_hop < 0.0 || c.electrical.router_static_w < 0.0)
        throw ConfigError("electrical energies must be >= 0");
    const auto& m = c.monolithic;
    if (m.macs < 1 || m.vector_len < 1) throw ConfigError("monolithic macs and vector_len must be >= 1");
    if (!(m.offchip_bw_bps > 0.0) || m.offchip_latency_s < 0.0 || m.offchip_energy_pj_per_bit < 0.0)
        throw ConfigError("monolithic off-chip parameters out of range");
}

const MacUnitType& find_mac_type(const PlatformConfig& c, const std::string& name, const std::string& chiplet) {
    for (const auto& t : c.mac_types)
        if (t.name == name) return t;
    throw ConfigError("chiplet '" + chiplet + "': unknown mac_type '" + name + "'");
}

std::vector<ChipletSpec> expand_chiplets(const PlatformConfig& c) {
    std::vector<ChipletSpec> out;
    std::set<std::string> ids;
    for (const auto& row : c.chiplets) {
        if (row.count < 1) throw ConfigError("chiplet '" + row.id + "': count must be >= 1");
        for (std::uint64_t n = 0; n < row.count; ++n) {
            ChipletSpec s;
            s.id = row.count == 1 ? row.id : row.id + "_" + std::to_string(n);
            s.role = row.role;
            if (!ids.insert(s.id).second) throw ConfigError("duplicate chiplet id '" + s.id + "'");
            if (row.role == ChipletRole::compute) {
                s.mac_type = find_mac_type(c, row.mac_type, s.id);
                if (row.macs < 1 || row.macs_per_gateway < 1)
                    throw ConfigError("chiplet '" + s.id + "': macs and macs_per_gateway must be >= 1");
                if (row.macs % row.macs_per_gateway != 0)
                    throw ConfigError("chiplet '" + s.id + "': macs (" + std::to_string(row.macs) +
                                      ") not divisible by macs_per_gateway (" + std::to_string(row.macs_per_gateway) + ")");
                s.macs = row.macs;
                s.macs_per_gateway = row.macs_per_gateway;
                s.gateways = row.macs / row.macs_per_gateway;
            } else {
                if (row.macs != 0) throw ConfigError("memory chiplet '" + s.id + "' cannot host MACs");
                if (row.gateways < 1) throw ConfigError("memory chiplet '" + s.id + "' needs >= 1 gateway");
                s.gateways = row.gateways;
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

// Memory chiplets take the center cell first, then everything fills the
// remaining cells in row-major order.
void place(std::vector<ChipletSpec>& chiplets, const PlatformConfig& c) {
    const std::size_t capacity = c.grid_rows * c.grid_cols;
    if (chiplets.size() > capacity)
        throw ConfigError("placement overflow: " + std::to_string(chiplets.size()) + " chiplets on a " +
                          std::to_string(c.grid_rows) + "x" + std::to_string(c.grid_cols) + " grid");
    std::vector<bool> taken(capacity, false);
    const std::size_t center = (c.grid_rows / 2) * c.grid_cols + c.grid_cols / 2;
    auto next_free = [&]() {
        for (std::size_t i = 0; i < capacity; ++i)
            if (!taken[i]) return i;
        return capacity;
    };
    auto assign = [&](ChipletSpec& s, std::size_t cell) {
        taken[cell] = true;
        s.cell = {cell / c.grid_cols, cell % c.grid_cols};
        const double pitch_x = c.interposer_side_mm / static_cast<double>(c.grid_cols);
        const double pitch_y = c.interposer_side_mm / static_cast<double>(c.grid_rows);
        s.position = {(static_cast<double>(s.cell.col) + 0.5) * pitch_x, (static_cast<double>(s.cell.row) + 0.5) * pitch_y};
    };
    for (auto& s : chiplets)
        if (s.role == ChipletRole::memory) assign(s, taken[center] ? next_free() : center);
    for (auto& s : chiplets)
        if (s.role == ChipletRole::compute) assign(s, next_free());
}

void copy_scalars(PlatformTopology& t, const PlatformConfig& c) {
    t.kind = c.kind;
    t.n_wavelengths = c.wavelengths;
    t.link_rate_bps = c.link_rate_bps;
    t.gateway_freq_hz = c.gateway_freq_hz;
    t.noc_width_bits = c.noc_width_bits;
    t.noc_freq_hz = c.noc_freq_hz;
    t.interposer_side_mm = c.interposer_side_mm;
    t.electrical = c.electrical;
    t.monolithic = c.monolithic;
}

void add_gateways(PlatformTopology& t) {
    for (std::size_t ci = 0; ci < t.chiplets.size(); ++ci)
        for (std::uint64_t g = 0; g < t.chiplets[ci].gateways; ++g)
            t.gateways.push_back({t.chiplets[ci].id + ".gw" + std::to_string(g), ci, static_cast<std::size_t>(g)});
}

void wire_photonic(PlatformTopology& t) {
    const auto n = t.n_wavelengths;
    std::vector<std::size_t> compute_gw;
    std::vector<std::size_t> memory_gw;
    for (std::size_t g = 0; g < t.gateways.size(); ++g)
        (t.chiplets[t.gateways[g].chiplet].role == ChipletRole::compute ? compute_gw : memory_gw).push_back(g);
    if (memory_gw.empty()) throw ConfigError("photonic interposer needs a memory chiplet");

    t.mrgs.resize(t.gateways.size());
    for (std::size_t g = 0; g < t.gateways.size(); ++g) t.mrgs[g] = {g, 0, 1, n};
    for (auto g : compute_gw) t.mrgs[g].filter_rows = 1;

    auto pos = [&](std::size_t g) { return t.chiplets[t.gateways[g].chiplet].position; };

    // Writes: one SWSR waveguide per compute gateway, landing on a dedicated
    // filter row of a memory gateway chosen round-robin.
    for (std::size_t i = 0; i < compute_gw.size(); ++i) {
        const auto writer = compute_gw[i];
        const auto reader = memory_gw[i % memory_gw.size()];
        t.mrgs[reader].filter_rows += 1;
        WaveguideRoute r;
        r.writer_gateway = writer;
        r.protocol = Protocol::swsr;
        r.readers = {reader};
        const Position dst[] = {pos(reader)};
        r.length_mm = route_length(pos(writer), dst, t.interposer_side_mm);
        r.path = {r.length_mm, n, 1, 1, 1};
        t.routes.push_back(std::move(r));
    }
    // Reads: every memory gateway broadcasts to all compute gateways.
    if (!compute_gw.empty()) {
        for (auto writer : memory_gw) {
            WaveguideRoute r;
            r.writer_gateway = writer;
            r.protocol = Protocol::swmr;
            r.readers = compute_gw;
            std::vector<Position> dst;
            for (auto g : compute_gw) dst.push_back(pos(g));
            r.length_mm = route_length(pos(writer), dst, t.interposer_side_mm);
            // Light passes the modulator row and every filter row ahead of
            // the last reader, then splits once per reader.
            const auto readers = static_cast<std::uint64_t>(compute_gw.size());
            r.path = {r.length_mm, n * readers, 1, readers, 1};
            t.routes.push_back(std::move(r));
        }
    }
}

}  // namespace

PlatformTopology build_topology(const PlatformConfig& config) {
    check_scalars(config);
    PlatformTopology t;
    copy_scalars(t, config);

    if (config.kind == PlatformKind::monolithic) {
        const auto& m = config.monolithic;
        ChipletSpec s;
        s.id = "mono";
        s.role = ChipletRole::compute;
        s.mac_type = MacUnitType{"mono" + std::to_string(m.vector_len), m.vector_len, MacClass::conv};
        s.macs = m.macs;
        s.macs_per_gateway = m.macs;
        s.gateways = 1;
        s.position = {config.interposer_side_mm / 2, config.interposer_side_mm / 2};
        t.chiplets.push_back(std::move(s));
        add_gateways(t);
        return t;
    }

    t.chiplets = expand_chiplets(config);
    place(t.chiplets, config);
    add_gateways(t);
    if (config.kind == PlatformKind::elec_interposer) {
        if (t.memory_chiplets().empty()) throw ConfigError("electrical interposer needs a memory chiplet");
        t.mesh_rows = config.grid_rows;
        t.mesh_cols = config.grid_cols;
    } else {
        wire_photonic(t);
    }
    return t;
}

PlatformTopology default_platform() { return build_topology(default_platform_config()); }

double gateway_peak_bandwidth(const PlatformTopology& t) {
    if (t.kind != PlatformKind::siph_interposer) throw UsageError("gateway_peak_bandwidth needs a photonic topology");
    return static_cast<double>(t.n_wavelengths) * t.link_rate_bps;
}

std::uint64_t electrical_hops(std::size_t src, std::size_t dst, const PlatformTopology& t) {
    if (t.kind != PlatformKind::elec_interposer) throw UsageError("electrical_hops needs an electrical topology");
    if (src >= t.chiplets.size() || dst >= t.chiplets.size()) throw UsageError("electrical_hops: chiplet index out of range");
    const auto& a = t.chiplets[src].cell;
    const auto& b = t.chiplets[dst].cell;
    auto diff = [](std::size_t x, std::size_t y) { return x > y ? x - y : y - x; };
    return diff(a.row, b.row) + diff(a.col, b.col) + 1;
}

std::uint64_t electrical_hops(std::string_view src, std::string_view dst, const PlatformTopology& t) {
    return electrical_hops(t.chiplet_index(src), t.chiplet_index(dst), t);
}

}  // namespace chipsim::platform
