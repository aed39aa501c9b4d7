#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <tbb/global_control.h>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace gids;
    CLI::App cli{"Integrated density of states via gauge transform and resonance geometry"};
    cli.require_subcommand(1);
    cli.fallthrough();
    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid, ktilde;
    std::optional<std::string> csv;
    int threads = 0;
    cli.add_option("--config", config_path, "JSON run configuration")->required();
    cli.add_option("--out", out_path, "write results here instead of stdout");
    cli.add_option("--seed", seed, "override every seed in the configuration");
    cli.add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    cli.add_option("--grid", grid, "Brillouin-zone grid per axis for the oracle")->check(CLI::PositiveNumber);
    cli.add_option("--ktilde", ktilde, "number of gauge steps")->check(CLI::PositiveNumber);
    cli.add_option("--csv", csv, "ids CSV consumed by fit");
    const std::vector<std::pair<std::string, app::CommandOutput (*)(const app::RunConfig&)>> commands{
        {"validate", app::cmd_validate}, {"symbols", app::cmd_symbols}, {"gauge", app::cmd_gauge},
        {"regions", app::cmd_regions},   {"ids", app::cmd_ids},         {"fit", app::cmd_fit}};
    const std::map<std::string, std::string> help{{"validate", "check parameters, frequencies and conditions A and C"},
                                                  {"symbols", "summarise the perturbation symbol"},
                                                  {"gauge", "run the gauge recursion and report residuals"},
                                                  {"regions", "classify random points of the shell"},
                                                  {"ids", "integrated density of states on a lambda grid (CSV)"},
                                                  {"fit", "fit the asymptotic expansion on one window (JSON)"}};
    for (const auto& [name, fn] : commands) cli.add_subcommand(name, help.at(name));
    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors share the configuration exit code.
        return cli.exit(e) == 0 ? 0 : static_cast<int>(ErrorKind::config);
    }

    std::unique_ptr<tbb::global_control> limit;
    if (threads > 0) limit = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, threads);

    try {
        app::RunConfig cfg = app::load_config(config_path);
        if (seed) {
            cfg.ids.volume.seed = *seed;
            cfg.gauge.seed = *seed;
            cfg.regions.seed = *seed;
        }
        if (grid) cfg.ids.oracle.grid = *grid;
        if (ktilde) cfg.scale.k_tilde = *ktilde;
        if (csv) cfg.fit.csv = *csv;
        for (const auto& [name, fn] : commands) {
            if (!cli.got_subcommand(name)) continue;
            const app::CommandOutput res = fn(cfg);
            if (out_path.empty()) {
                std::cout << res.text;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) throw Error(ErrorKind::config, "cannot write " + out_path);
                f << res.text;
            }
            return res.exit_code;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    }
    return 0;
}
