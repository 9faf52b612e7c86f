#include "tadecay/commands.hpp"
#include "tadecay/errors.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Resonance decay numerics and quantum-jump statistics"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = ".";
    for (const char* name : {"simulate", "detect", "survival", "fit", "gamow", "hardy", "report"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value configuration file")->required();
        sub->add_option("--out-dir", out_dir, "directory for output artifacts");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 1;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        const tadecay::RunConfig cfg = tadecay::load_config(config_path);
        const auto mode = tadecay::parse_mode(sub->get_name());
        const fs::path base = fs::path(config_path).parent_path();
        const auto result = tadecay::run_subcommand(cfg, *mode, out_dir, base.empty() ? fs::path(".") : base);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& p : result.written) std::cout << p.string() << '\n';
    } catch (const tadecay::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
