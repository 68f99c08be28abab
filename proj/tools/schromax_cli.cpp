// Command-line front end for the experiment harness.
//
//   schromax <experiment> [--config FILE] [--set section.key=value ...]
//   schromax run FILE [--set ...]
//
// Exit status: 0 when every verification passes, 1 when any fails,
// 2 for usage or configuration errors.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "schromax/harness/config.hpp"
#include "schromax/harness/experiments.hpp"
#include "schromax/harness/report.hpp"

namespace {

namespace h = schromax::harness;

struct CommonOptions {
    std::string config;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::string prefix;
    bool emit_plot_data = false;
    std::optional<unsigned> threads;
};

void add_common(CLI::App& cmd, CommonOptions& opts) {
    cmd.add_option("--set", opts.overrides, "Override a config key, as section.key=value")->take_all();
    cmd.add_option("--out", opts.out_dir, "Output directory (overrides output.dir)");
    cmd.add_option("--prefix", opts.prefix, "Output file prefix (overrides output.prefix)");
    cmd.add_flag("--emit-plot-data", opts.emit_plot_data, "Also write two-column plot data files");
    cmd.add_option("--threads", opts.threads, "Worker threads for maximal functions (0 = all cores)");
}

int execute(const std::string& experiment, const CommonOptions& opts) {
    std::vector<std::string> overrides = opts.overrides;
    if (!experiment.empty()) overrides.push_back("experiment.name=" + experiment);
    if (!opts.out_dir.empty()) overrides.push_back("output.dir=" + opts.out_dir);
    if (!opts.prefix.empty()) overrides.push_back("output.prefix=" + opts.prefix);
    if (opts.emit_plot_data) overrides.push_back("output.emit_plot_data=true");
    if (opts.threads) overrides.push_back("params.threads=" + std::to_string(*opts.threads));

    h::ExperimentConfig config;
    h::ExperimentResult result;
    try {
        config = opts.config.empty() ? h::parse_config("", overrides) : h::load_config(opts.config, overrides);
        result = h::run_experiment(config);
    } catch (const h::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    }

    h::Json echo = h::Json::object();
    for (const auto& [key, value] : config.echo) echo[key] = value;
    const std::string prefix = config.prefix.empty() ? result.name : config.prefix;
    std::vector<std::filesystem::path> files;
    try {
        files = h::write_result(result, echo, config.output_dir, prefix, config.emit_plot_data);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return 2;
    }

    std::cout << result.name << ": " << (result.pass ? "PASS" : "FAIL") << '\n';
    for (const auto& f : files) std::cout << "  " << f.string() << '\n';
    std::fprintf(stderr, "runtime %.3f s\n", result.runtime_seconds);
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schrodinger maximal function laboratory"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
    };
    const std::vector<Entry> entries = {
        {"cover", "Covering profile m -> N(2^-m) of the configured set"},
        {"rhs-sum", "Covering profile and the weighted series"},
        {"propagate", "Dump the spectrum and S_t f(x + y)"},
        {"maximal", "Dump the maximal function over the sampled set"},
        {"verify-cube", "Single-cube bound on band-limited data"},
        {"verify-cover", "Cube-cover bound on band-limited data"},
        {"verify-thmA", "Time-only ratio report (interval coverings)"},
        {"verify-thm1", "Space-time ratio report (a-cube coverings)"},
        {"scan-s", "Summability scan across s"},
        {"converge", "Decay table of S_{t_k} f(x + Gamma(t_k)) - f(x)"},
    };

    std::vector<CommonOptions> options(entries.size());
    std::vector<CLI::App*> commands;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto* cmd = app.add_subcommand(entries[i].name, entries[i].help);
        cmd->add_option("--config", options[i].config, "Config file")->check(CLI::ExistingFile);
        add_common(*cmd, options[i]);
        commands.push_back(cmd);
    }
    CommonOptions run_options;
    auto* run = app.add_subcommand("run", "Run the experiment named in a config file");
    run->add_option("config", run_options.config, "Config file")->required()->check(CLI::ExistingFile);
    add_common(*run, run_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (run->parsed()) return execute("", run_options);
    for (std::size_t i = 0; i < commands.size(); ++i)
        if (commands[i]->parsed()) return execute(entries[i].name, options[i]);
    return 2;
}
