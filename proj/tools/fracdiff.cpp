// Command-line front end: runs the preset convergence studies or a custom
// experiment described by a key = value config file.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracdiff/config.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Time-fractional diffusion in expanding media: P1 FEM + convolution quadrature"};

    std::string config_path;
    std::string preset;
    std::string output;
    double alpha = 0.0;
    app.add_option("--config", config_path, "Experiment file (key = value lines)");
    app.add_option("--preset", preset, "table1 | table2 | table3 | oracle (overrides the file)");
    app.add_option("--output", output, "CSV path (default <preset>.csv)");
    auto* alpha_opt = app.add_option("--alpha", alpha, "Run a single fractional order");

    CLI11_PARSE(app, argc, argv);

    try {
        fracdiff::ExperimentConfig config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot read config file '" << config_path << "'\n";
                return 1;
            }
            std::stringstream text;
            text << in.rdbuf();
            config = fracdiff::parse_config(text.str());
        } else if (preset.empty()) {
            std::cerr << "either --config or --preset is required\n" << app.help();
            return 1;
        }

        if (!preset.empty()) {
            const auto p = fracdiff::preset_from_name(preset);
            if (!p || *p == fracdiff::Preset::custom) {
                std::cerr << "unknown preset '" << preset
                          << "' (custom experiments need --config)\n";
                return 1;
            }
            config.preset = *p;
        }
        if (*alpha_opt)
            config.alpha = alpha;
        if (!output.empty())
            config.output = output;

        return fracdiff::run(config, std::cout, std::cerr);
    } catch (const fracdiff::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
