#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "bethelab/config.hpp"
#include "bethelab/io.hpp"
#include "bethelab/runner.hpp"
#include "bethelab/version.hpp"

namespace {

bethe::JsonValue errors_json(const std::vector<bethe::ValidationError>& errors) {
    bethe::JsonValue doc = bethe::JsonValue::object();
    bethe::JsonValue arr = bethe::JsonValue::array();
    for (const auto& e : errors) {
        bethe::JsonValue rec = bethe::JsonValue::object();
        rec.set("path", bethe::JsonValue::string(e.path));
        rec.set("line", bethe::JsonValue::integer(e.line));
        rec.set("message", bethe::JsonValue::string(e.message));
        arr.push_back(std::move(rec));
    }
    doc.set("errors", std::move(arr));
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bethelab: spectral identities of tree and block Schrodinger operators"};
    app.set_version_flag("--version", bethe::kVersion);

    std::string config_path, out_dir, format;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("config", config_path, "config file (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");
    run->add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--threads", threads, "worker threads (speed only, never results)")
        ->check(CLI::Range(1, 256));

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "validate a config file");
    validate->add_option("config", validate_path, "config file (JSON)")->required();

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        std::string text;
        try {
            text = bethe::read_file(validate_path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return 2;
        }
        const bethe::ValidationResult result = bethe::validate_config(text);
        if (!result.ok()) {
            std::fputs(errors_json(result.errors).dump().c_str(), stdout);
            return 2;
        }
        std::fputs(result.config->echo().dump().c_str(), stdout);
        return 0;
    }

    std::string text;
    try {
        text = bethe::read_file(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
    const bethe::ValidationResult result = bethe::validate_config(text);
    if (!result.ok()) {
        std::fputs(errors_json(result.errors).dump().c_str(), stdout);
        return 2;
    }

    bethe::RunOptions opts;
    opts.out_dir_override = out_dir;
    opts.threads = threads;
    if (format == "json") opts.format_override = bethe::OutputFormat::Json;
    if (format == "csv") opts.format_override = bethe::OutputFormat::Csv;

    try {
        const bethe::RunOutcome outcome = bethe::run_experiment(*result.config, opts);
        std::printf("%s: %s (worst residual %.3g)\n", outcome.passed ? "PASS" : "FAIL",
                    outcome.detail.c_str(), outcome.worst_residual);
        std::printf("outputs in %s\n", outcome.out_dir.c_str());
        return outcome.passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
