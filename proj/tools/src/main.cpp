#include "polaromech/errors.hpp"
#include "polaromech_cli/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    using namespace pm::cli;
    CLI::App app{"Polariton optomechanics: modes, couplings and back-action"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    RunOptions options;
    std::string format;
    std::string materials;
    for (const auto& cmd : commands()) {
        auto* sub = app.add_subcommand(cmd.name, cmd.summary);
        sub->add_option("--config", options.config, "Scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", options.out_dir, "Output directory")->capture_default_str();
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", options.threads, "Worker threads (0: all cores)")->capture_default_str();
        sub->add_option("--materials", materials, "Material table overriding the built-in one")
            ->check(CLI::ExistingFile);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!format.empty()) options.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!materials.empty()) options.materials = materials;
    const auto* chosen = app.get_subcommands().front();
    try {
        for (const auto& path : run_scenario(chosen->get_name(), options)) std::cout << path.string() << '\n';
        return 0;
    } catch (const pm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const pm::ComputeError& e) {
        std::cerr << "compute error in '" << chosen->get_name() << "': " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
