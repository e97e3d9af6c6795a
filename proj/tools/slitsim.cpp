#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slitsim/scenario.hpp"

namespace {

struct CliState {
    std::string config_path;
    std::string out_dir = ".";
    std::string loops;
    int max_hops = -1;
    bool max_hops_set = false;
    bool plot = false;
};

void attach_common(CLI::App* cmd, CliState& state) {
    cmd->add_option("--config", state.config_path, "scenario configuration file")
        ->required();
    cmd->add_option("--out", state.out_dir, "output directory (default .)");
    cmd->add_option("--loops", state.loops, "force looped paths on or off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--max-hops", state.max_hops, "override the hop-order cutoff")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--plot", state.plot, "emit an SVG plot next to the CSV");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-slit far-field interference with looped (slit-to-slit) paths"};
    app.require_subcommand(1);

    CliState state;
    CLI::App* pattern = app.add_subcommand("pattern", "per-mask far-field patterns");
    CLI::App* sorkin = app.add_subcommand("sorkin", "seven-mask Sorkin analysis (epsilon, kappa)");
    CLI::App* sweep = app.add_subcommand("sweep", "wavelength/width sweeps");
    CLI::App* validate = app.add_subcommand("validate", "run the built-in numerical checks");
    for (CLI::App* cmd : {pattern, sorkin, sweep, validate}) attach_common(cmd, state);

    CLI11_PARSE(app, argc, argv);

    slitsim::Command command = slitsim::Command::pattern;
    if (sorkin->parsed()) command = slitsim::Command::sorkin;
    if (sweep->parsed()) command = slitsim::Command::sweep;
    if (validate->parsed()) command = slitsim::Command::validate;

    std::ifstream in(state.config_path, std::ios::binary);
    if (!in) {
        std::cerr << "io error: cannot read " << state.config_path << "\n";
        return slitsim::exit_io;
    }
    std::ostringstream text;
    text << in.rdbuf();

    slitsim::ScenarioConfig config;
    try {
        config = slitsim::parse_config(text.str());
    } catch (const slitsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return slitsim::exit_config;
    }

    slitsim::RunOptions options;
    options.out_dir = state.out_dir;
    options.plot = state.plot;
    if (!state.loops.empty()) options.loops = (state.loops == "on");
    if (app.get_subcommands().front()->count("--max-hops") > 0) options.max_hops = state.max_hops;

    return slitsim::run_scenario(config, command, options, std::cout);
}
