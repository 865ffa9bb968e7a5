#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "affine/harness.hpp"

#ifndef AFFINE_CONFIG_DIR
#define AFFINE_CONFIG_DIR "configs"
#endif

int main(int argc, char** argv)
{
    CLI::App app{"affine-synth: run affine synthesis/analysis experiments"};
    bool list = false;
    std::string configsDir = AFFINE_CONFIG_DIR;
    app.add_flag("--list", list, "print the shipped configs");
    app.add_option("--configs-dir", configsDir, "directory searched by --list");

    std::string config, format = "csv", out;
    for (const char* name : {"kernel", "synth", "analyze", "converge", "check"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "experiment config (JSON)")->required();
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out, "write the report here instead of stdout");
    }
    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);

    try {
        if (list) {
            for (auto& path : affine::shippedConfigs(configsDir)) {
                auto c = affine::loadConfig(path);
                std::cout << c.name << '\t' << c.command << '\t' << c.experiment << '\t' << path << '\n';
            }
            return 0;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return 2;
        }
        std::string command = app.get_subcommands().front()->get_name();
        auto cfg = affine::loadConfig(config);
        auto report = affine::runCommand(command, cfg);
        auto fmt = affine::parseFormat(format);
        if (out.empty())
            affine::emitReport(report, fmt, std::cout);
        else
            affine::emitReport(report, fmt, out);
        return report.allPass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
