// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chipsim/engine.hpp"
#include "chipsim/platform.hpp"

namespace chipsim::report {

enum class Format { csv, json, tsv };

Format parse_format(std::string_view name);

/// Model name used for the per-platform geometric-mean rows.
inline constexpr std::string_view kGeomeanModel = "geomean";

/// Platform-level metrics of one (model, platform) run.
struct RunSummary {
    std::string platform;
    std::string model;
    double power_w = 0.0;
    double latency_s = 0.0;
    double epb_j_per_bit = 0.0;
};

RunSummary summarize(const engine::RunMetrics& run);

struct ComparisonRow {
    std::string platform;
    std::string model;
    double power_w = 0.0;
    double latency_s = 0.0;
    double epb_j_per_bit = 0.0;
    // Empty for reference rows.
    std::optional<double> normalized_power;
    std::optional<double> normalized_latency;
    std::optional<double> normalized_epb;
    bool reference_only = false;
};

/// Published accelerator figures, carried for context only.
struct ReferenceBaseline {
    std::string name;
    double power_w = 0.0;
    double latency_ms = 0.0;
    double epb_nj_per_bit = 0.0;
};

/// All rows of the published comparison table, in table order.
std::span<const ReferenceBaseline> reference_baselines();

/// Reference constants as rows (SI units, reference_only set).
std::vector<ComparisonRow> reference_rows();

/// Normalizes each run against the `baseline` platform's run of the same
/// model, then appends one geometric-mean row per platform (first-seen order).
/// Throws UsageError if `runs` is empty or some model lacks a baseline run.
std::vector<ComparisonRow> comparison_table(std::span<const RunSummary> runs, std::string_view baseline);
std::vector<ComparisonRow> comparison_table(std::span<const engine::RunMetrics> runs, std::string_view baseline);

/// Columns: platform, model, power_w, latency_s, epb_j_per_bit,
/// normalized_power, normalized_latency, normalized_epb, reference_only.
/// CSV/TSV numbers use 6 significant digits; JSON keeps full precision.
void emit_report(std::span<const ComparisonRow> rows, Format format, std::ostream& out);
/// Throws ConfigError if `path` cannot be written.
void emit_report(std::span<const ComparisonRow> rows, Format format, const std::string& path);

/// Per-layer breakdown plus a `total` row (CSV/TSV) or a nested object (JSON).
void emit_run(const engine::RunMetrics& run, Format format, std::ostream& out);

/// JSON dump of a wired topology.
std::string topology_json(const platform::PlatformTopology& topology);

/// %.6g rendering shared by the text formats.
std::string format_number(double value);

}  // namespace chipsim::report
