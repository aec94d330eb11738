// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "CLI11.hpp"
#include "chipsim/config.hpp"
#include "chipsim/error.hpp"
#include "chipsim/report.hpp"
#include "chipsim/workload.hpp"

#ifndef CHIPSIM_MODELS_DIR
#define CHIPSIM_MODELS_DIR "models"
#endif

namespace chipsim::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string default_models_dir() {
    if (const char* env = std::getenv("CPS_MODELS_DIR"); env && *env) return env;
    return CHIPSIM_MODELS_DIR;
}

Config load_config_arg(const std::string& path) {
    if (!path.empty()) return load_config_file(path);
    if (const char* env = std::getenv("CPS_CONFIG"); env && *env) return load_config_file(env);
    return Config{};
}

engine::RunMetrics run_one(const workload::DnnModelSpec& model, Config config, platform::PlatformKind kind) {
    config.platform.kind = kind;
    const auto topology = platform::build_topology(config.platform);
    return engine::run(model, topology, config.devices, config.engine);
}

// Writes to `path` or, when empty, to `out`.
template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
    if (path.empty()) {
        fn(out);
        return;
    }
    std::ostringstream buf;
    fn(buf);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write '" + path + "'");
    file << buf.str();
    if (!file.flush()) throw UsageError("write to '" + path + "' failed");
}

}  // namespace

const std::vector<std::string>& builtin_models() {
    static const std::vector<std::string> names{"lenet5", "resnet50", "densenet121", "vgg16", "mobilenetv2"};
    return names;
}

std::string resolve_model_path(const std::string& arg, const std::string& models_dir) {
    if (fs::is_regular_file(arg)) return arg;
    const auto candidate = fs::path(models_dir) / (arg + ".desc");
    if (fs::is_regular_file(candidate)) return candidate.string();
    throw UsageError("model '" + arg + "' not found (looked for a file and for " + candidate.string() + ")");
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Performance and energy model for 2.5D chiplet DNN accelerators", "chipsim"};
    app.require_subcommand(1);
    std::string models_dir = default_models_dir();
    app.add_option("--models-dir", models_dir, "Directory holding <name>.desc model files");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Load a model descriptor and check its parameter count");
    validate->add_option("model", validate_path, "Model descriptor path or shipped model name")->required();

    struct {
        std::string model, platform = "siph", config, out, format = "csv";
        bool no_overlap = false, no_resipi = false;
        double epoch_us = 0.0;
    } sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate one model on one platform");
    simulate->add_option("--model", sim.model, "Model descriptor path or shipped model name")->required();
    simulate->add_option("--platform", sim.platform, "siph, elec or mono")->check(CLI::IsMember({"siph", "elec", "mono"}));
    simulate->add_option("--config", sim.config, "JSON config (default: $CPS_CONFIG or built-in defaults)");
    simulate->add_flag("--no-overlap", sim.no_overlap, "Serialize compute and transfers within a layer");
    simulate->add_flag("--no-resipi", sim.no_resipi, "Keep every gateway active");
    simulate->add_option("--epoch-us", sim.epoch_us, "Controller epoch in microseconds")->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim.out, "Output file (default: stdout)");
    simulate->add_option("--format", sim.format, "csv, json or tsv")->check(CLI::IsMember({"csv", "json", "tsv"}));

    struct {
        std::string models = "all", platforms = "siph,elec,mono", baseline = "mono", config, out, format = "csv";
        bool no_references = false;
    } cmp;
    auto* compare = app.add_subcommand("compare", "Sweep models x platforms and normalize against a baseline");
    compare->add_option("--models", cmp.models, "Comma-separated models, or 'all'");
    compare->add_option("--platforms", cmp.platforms, "Comma-separated platforms");
    compare->add_option("--baseline", cmp.baseline, "Platform used for normalization");
    compare->add_option("--config", cmp.config, "JSON config (default: $CPS_CONFIG or built-in defaults)");
    compare->add_option("--out", cmp.out, "Output file (default: stdout)");
    compare->add_option("--format", cmp.format, "csv, json or tsv")->check(CLI::IsMember({"csv", "json", "tsv"}));
    compare->add_flag("--no-references", cmp.no_references, "Omit the published reference rows");

    std::string topo_config, topo_platform;
    auto* topology = app.add_subcommand("topology", "Dump the wired platform topology as JSON");
    topology->add_option("--config", topo_config, "JSON config (default: $CPS_CONFIG or built-in defaults)");
    topology->add_option("--platform", topo_platform, "Override the configured platform kind")
        ->check(CLI::IsMember({"siph", "elec", "mono"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    try {
        if (validate->parsed()) {
            const auto model = workload::load_model_file(resolve_model_path(validate_path, models_dir));
            out << workload::param_count(model) << " parameters OK\n";
            return kExitOk;
        }

        if (simulate->parsed()) {
            auto config = load_config_arg(sim.config);
            if (sim.no_overlap) config.engine.overlap = false;
            if (sim.no_resipi) config.engine.resipi = false;
            if (sim.epoch_us > 0.0) config.engine.epoch_s = sim.epoch_us * 1e-6;
            const auto model = workload::load_model_file(resolve_model_path(sim.model, models_dir));
            const auto metrics = run_one(model, config, platform::parse_platform_kind(sim.platform));
            const auto format = report::parse_format(sim.format);
            with_output(sim.out, out, [&](std::ostream& os) { report::emit_run(metrics, format, os); });
            return kExitOk;
        }

        if (compare->parsed()) {
            const auto config = load_config_arg(cmp.config);
            auto names = cmp.models == "all" ? builtin_models() : split_list(cmp.models);
            std::vector<platform::PlatformKind> kinds;
            for (const auto& p : split_list(cmp.platforms)) kinds.push_back(platform::parse_platform_kind(p));
            if (names.empty() || kinds.empty()) throw UsageError("compare needs at least one model and one platform");
            const auto baseline = std::string(platform::to_string(platform::parse_platform_kind(cmp.baseline)));
            const auto format = report::parse_format(cmp.format);

            std::vector<workload::DnnModelSpec> models;
            for (const auto& n : names) models.push_back(workload::load_model_file(resolve_model_path(n, models_dir)));

            std::vector<std::future<engine::RunMetrics>> jobs;
            for (const auto& m : models)
                for (auto k : kinds) jobs.push_back(std::async(std::launch::async, run_one, std::cref(m), config, k));
            std::vector<engine::RunMetrics> runs;
            for (auto& j : jobs) runs.push_back(j.get());

            auto rows = report::comparison_table(std::span<const engine::RunMetrics>(runs), baseline);
            std::vector<report::ComparisonRow> summary;
            for (const auto& r : rows)
                if (r.model == report::kGeomeanModel) summary.push_back(r);
            if (!cmp.no_references) {
                const auto refs = report::reference_rows();
                rows.insert(rows.end(), refs.begin(), refs.end());
            }
            with_output(cmp.out, out, [&](std::ostream& os) { report::emit_report(rows, format, os); });

            auto& note = cmp.out.empty() ? err : out;
            for (const auto& r : summary)
                note << "geomean vs " << baseline << ": " << r.platform << " latency x" << report::format_number(*r.normalized_latency)
                     << ", power x" << report::format_number(*r.normalized_power) << ", epb x"
                     << report::format_number(*r.normalized_epb) << "\n";
            return kExitOk;
        }

        if (topology->parsed()) {
            auto config = load_config_arg(topo_config);
            if (!topo_platform.empty()) config.platform.kind = platform::parse_platform_kind(topo_platform);
            out << report::topology_json(platform::build_topology(config.platform));
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}

}  // namespace chipsim::cli
