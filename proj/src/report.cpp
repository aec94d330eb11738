// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "chipsim/error.hpp"
#include "json.hpp"

namespace chipsim::report {

using nlohmann::ordered_json;

namespace {

const std::array<ReferenceBaseline, 10> kReferences{{
    {"CrossLight", 50.8, 8.0, 3.6},
    {"2.5D-CrossLight-Elec-Interposer", 45.3, 41.4, 20.5},
    {"2.5D-CrossLight-SiPh-Interposer", 89.7, 1.21, 1.3},
    {"Nvidia P100 GPU", 250.0, 13.1, 12.3},
    {"Intel Xeon Platinum 9282 CPU", 400.0, 86.5, 64.4},
    {"AMD Threadripper 3970x CPU", 280.0, 141.3, 73.7},
    {"Edge TPU", 2.0, 2366.4, 17.6},
    {"NullHop", 2.3, 8049.3, 68.9},
    {"DeepCNN", 122.0, 619.01, 1959.4},
    {"HolyLight", 66.5, 86.4, 40.3},
}};

const char* kColumns[] = {"platform",         "model",           "power_w",
                          "latency_s",        "epb_j_per_bit",   "normalized_power",
                          "normalized_latency", "normalized_epb", "reference_only"};

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_text(std::span<const ComparisonRow> rows, char sep, std::ostream& out) {
    auto field = [sep](const std::string& s) { return sep == ',' ? csv_field(s) : s; };
    for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? std::string(1, sep) : "") << kColumns[i];
    out << '\n';
    for (const auto& r : rows) {
        out << field(r.platform) << sep << field(r.model) << sep << format_number(r.power_w) << sep
            << format_number(r.latency_s) << sep << format_number(r.epb_j_per_bit) << sep
            << optional_number(r.normalized_power) << sep << optional_number(r.normalized_latency) << sep
            << optional_number(r.normalized_epb) << sep << (r.reference_only ? "true" : "false") << '\n';
    }
}

ordered_json optional_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json energy_json(const engine::EnergyBreakdown& e) {
    return {{"laser", e.laser},     {"tuning", e.tuning},         {"conversion", e.conversion},
            {"mac", e.mac},         {"gateway_elec", e.gateway_elec}, {"controller", e.controller},
            {"electrical_noc", e.electrical_noc}, {"total", e.total()}};
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    if (name == "tsv") return Format::tsv;
    throw UsageError("unknown format '" + std::string(name) + "' (expected csv, json or tsv)");
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

RunSummary summarize(const engine::RunMetrics& run) {
    return {std::string(platform::to_string(run.platform)), run.model, run.avg_power_w, run.total_latency_s,
            run.epb_j_per_bit};
}

std::span<const ReferenceBaseline> reference_baselines() { return kReferences; }

std::vector<ComparisonRow> reference_rows() {
    std::vector<ComparisonRow> rows;
    for (const auto& ref : kReferences) {
        ComparisonRow r;
        r.platform = ref.name;
        r.model = "reference";
        r.power_w = ref.power_w;
        r.latency_s = ref.latency_ms * 1e-3;
        r.epb_j_per_bit = ref.epb_nj_per_bit * 1e-9;
        r.reference_only = true;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ComparisonRow> comparison_table(std::span<const RunSummary> runs, std::string_view baseline) {
    if (runs.empty()) throw UsageError("comparison_table: no runs");
    std::map<std::string, const RunSummary*, std::less<>> base;
    for (const auto& r : runs)
        if (r.platform == baseline) base.emplace(r.model, &r);
    if (base.empty()) throw UsageError("unknown baseline '" + std::string(baseline) + "'");

    std::vector<ComparisonRow> rows;
    std::vector<std::string> platforms;
    std::map<std::string, std::vector<const ComparisonRow*>> by_platform;
    rows.reserve(runs.size());
    for (const auto& r : runs) {
        const auto it = base.find(r.model);
        if (it == base.end())
            throw UsageError("baseline '" + std::string(baseline) + "' has no run for model '" + r.model + "'");
        const auto& b = *it->second;
        ComparisonRow row{r.platform, r.model, r.power_w, r.latency_s, r.epb_j_per_bit,
                          r.power_w / b.power_w, r.latency_s / b.latency_s, r.epb_j_per_bit / b.epb_j_per_bit, false};
        rows.push_back(std::move(row));
        if (std::find(platforms.begin(), platforms.end(), r.platform) == platforms.end()) platforms.push_back(r.platform);
    }
    for (const auto& row : rows) by_platform[row.platform].push_back(&row);

    std::vector<ComparisonRow> summary;
    for (const auto& p : platforms) {
        const auto& group = by_platform[p];
        double lp = 0, ll = 0, le = 0, np = 0, nl = 0, ne = 0;
        for (const auto* r : group) {
            lp += std::log(r->power_w);
            ll += std::log(r->latency_s);
            le += std::log(r->epb_j_per_bit);
            np += std::log(*r->normalized_power);
            nl += std::log(*r->normalized_latency);
            ne += std::log(*r->normalized_epb);
        }
        const double n = static_cast<double>(group.size());
        summary.push_back({p, std::string(kGeomeanModel), std::exp(lp / n), std::exp(ll / n), std::exp(le / n),
                           std::exp(np / n), std::exp(nl / n), std::exp(ne / n), false});
    }
    rows.insert(rows.end(), summary.begin(), summary.end());
    return rows;
}

std::vector<ComparisonRow> comparison_table(std::span<const engine::RunMetrics> runs, std::string_view baseline) {
    std::vector<RunSummary> s;
    s.reserve(runs.size());
    for (const auto& r : runs) s.push_back(summarize(r));
    return comparison_table(std::span<const RunSummary>(s), baseline);
}

void emit_report(std::span<const ComparisonRow> rows, Format format, std::ostream& out) {
    if (rows.empty()) throw UsageError("emit_report: no rows");
    if (format == Format::csv) return write_text(rows, ',', out);
    if (format == Format::tsv) return write_text(rows, '\t', out);
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows) {
        doc.push_back({{"platform", r.platform},
                       {"model", r.model},
                       {"power_w", r.power_w},
                       {"latency_s", r.latency_s},
                       {"epb_j_per_bit", r.epb_j_per_bit},
                       {"normalized_power", optional_json(r.normalized_power)},
                       {"normalized_latency", optional_json(r.normalized_latency)},
                       {"normalized_epb", optional_json(r.normalized_epb)},
                       {"reference_only", r.reference_only}});
    }
    out << doc.dump(2) << '\n';
}

void emit_report(std::span<const ComparisonRow> rows, Format format, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    emit_report(rows, format, out);
    out.flush();
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

void emit_run(const engine::RunMetrics& run, Format format, std::ostream& out) {
    if (format == Format::json) {
        ordered_json layers = ordered_json::array();
        for (const auto& l : run.per_layer) {
            layers.push_back({{"layer", l.layer_index},
                              {"compute_s", l.compute_s},
                              {"read_s", l.read_s},
                              {"write_s", l.write_s},
                              {"overhead_s", l.overhead_s},
                              {"latency_s", l.layer_latency_s},
                              {"bits_moved", l.bits_moved},
                              {"laser_w", l.laser_w},
                              {"energy_j", energy_json(l.energy)}});
        }
        ordered_json doc = {{"model", run.model},
                            {"platform", platform::to_string(run.platform)},
                            {"latency_s", run.total_latency_s},
                            {"energy_j", run.total_energy_j},
                            {"power_w", run.avg_power_w},
                            {"total_bits", run.total_bits},
                            {"epb_j_per_bit", run.epb_j_per_bit},
                            {"reconfig_count", run.reconfig_count},
                            {"energy_breakdown_j", energy_json(run.energy)},
                            {"layers", layers}};
        out << doc.dump(2) << '\n';
        return;
    }
    const char sep = format == Format::csv ? ',' : '\t';
    const char* cols[] = {"layer",       "compute_s",  "read_s",       "write_s",    "overhead_s",
                          "latency_s",   "bits_moved", "laser_w",      "laser_j",    "tuning_j",
                          "conversion_j", "mac_j",     "gateway_elec_j", "controller_j", "electrical_noc_j",
                          "energy_j"};
    for (std::size_t i = 0; i < std::size(cols); ++i) out << (i ? std::string(1, sep) : "") << cols[i];
    out << '\n';
    auto row = [&](const std::string& name, double c, double rd, double wr, double ov, double lat, std::uint64_t bits,
                   double laser, const engine::EnergyBreakdown& e) {
        const double v[] = {c, rd, wr, ov, lat};
        out << name;
        for (double x : v) out << sep << format_number(x);
        out << sep << bits << sep << format_number(laser);
        const double ev[] = {e.laser, e.tuning, e.conversion, e.mac, e.gateway_elec, e.controller, e.electrical_noc, e.total()};
        for (double x : ev) out << sep << format_number(x);
        out << '\n';
    };
    double c = 0, rd = 0, wr = 0, ov = 0;
    std::uint64_t bits = 0;
    for (const auto& l : run.per_layer) {
        row(std::to_string(l.layer_index), l.compute_s, l.read_s, l.write_s, l.overhead_s, l.layer_latency_s, l.bits_moved,
            l.laser_w, l.energy);
        c += l.compute_s;
        rd += l.read_s;
        wr += l.write_s;
        ov += l.overhead_s;
        bits += l.bits_moved;
    }
    row("total", c, rd, wr, ov, run.total_latency_s, bits, run.avg_power_w, run.energy);
}

std::string topology_json(const platform::PlatformTopology& t) {
    ordered_json chiplets = ordered_json::array();
    for (const auto& c : t.chiplets) {
        ordered_json e = {{"id", c.id},
                          {"role", c.role == platform::ChipletRole::compute ? "compute" : "memory"},
                          {"mac_type", c.mac_type ? ordered_json(c.mac_type->name) : ordered_json(nullptr)},
                          {"vector_len", c.mac_type ? c.mac_type->vector_len : 0},
                          {"macs", c.macs},
                          {"macs_per_gateway", c.macs_per_gateway},
                          {"gateways", c.gateways},
                          {"cell", {c.cell.row, c.cell.col}},
                          {"position_mm", {c.position.x_mm, c.position.y_mm}}};
        chiplets.push_back(std::move(e));
    }
    ordered_json gateways = ordered_json::array();
    for (std::size_t g = 0; g < t.gateways.size(); ++g) {
        ordered_json e = {{"id", t.gateways[g].id}, {"chiplet", t.chiplets[t.gateways[g].chiplet].id}};
        if (g < t.mrgs.size()) {
            e["filter_rows"] = t.mrgs[g].filter_rows;
            e["modulator_rows"] = t.mrgs[g].modulator_rows;
            e["mrs_per_row"] = t.mrgs[g].mrs_per_row;
        }
        gateways.push_back(std::move(e));
    }
    ordered_json routes = ordered_json::array();
    for (const auto& r : t.routes) {
        ordered_json readers = ordered_json::array();
        for (auto g : r.readers) readers.push_back(t.gateways[g].id);
        routes.push_back({{"writer", t.gateways[r.writer_gateway].id},
                          {"protocol", r.protocol == platform::Protocol::swsr ? "swsr" : "swmr"},
                          {"readers", readers},
                          {"length_mm", r.length_mm},
                          {"mrs_passed", r.path.mrs_passed},
                          {"drop_stages", r.path.drop_stages},
                          {"split_fanout", r.path.split_fanout},
                          {"couplers", r.path.couplers}});
    }
    ordered_json doc = {{"kind", platform::to_string(t.kind)},
                        {"wavelengths", t.n_wavelengths},
                        {"link_rate_bps", t.link_rate_bps},
                        {"gateway_freq_hz", t.gateway_freq_hz},
                        {"noc_width_bits", t.noc_width_bits},
                        {"noc_freq_hz", t.noc_freq_hz},
                        {"interposer_side_mm", t.interposer_side_mm},
                        {"compute_gateways", t.compute_gateway_count()},
                        {"memory_gateways", t.memory_gateway_count()},
                        {"total_mrs", t.total_mrs()},
                        {"chiplets", chiplets},
                        {"gateways", gateways},
                        {"routes", routes}};
    if (t.kind == platform::PlatformKind::elec_interposer) doc["mesh"] = {t.mesh_rows, t.mesh_cols};
    return doc.dump(2) + "\n";
}

}  // namespace chipsim::report
