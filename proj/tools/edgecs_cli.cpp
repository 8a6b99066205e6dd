// edgecs <scenario> --config <path> [--seed S] [--out DIR]
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "edgecs/error.hpp"
#include "edgecs/harness/scenarios.hpp"

using namespace edgecs;

int main(int argc, char** argv) {
    CLI::App app{"compressed aggregation and training-schedule experiments"};
    std::string scenario;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool quiet = false;
    app.add_option("scenario", scenario, "scenario to run")
        ->required()
        ->check(CLI::IsMember(harness::scenario_names()));
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "master seed (overrides the config)");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_flag("-q,--quiet", quiet, "only print failures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : harness::kExitValidation;
    }

    try {
        nlohmann::json doc = nlohmann::json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            doc = nlohmann::json::parse(in);
        }
        auto cfg = harness::config_from_json(doc);
        const auto& body = doc.contains("config") ? doc.at("config") : doc;
        if (!seed && !body.contains("seed")) throw InvalidArgument("a seed is required (config 'seed' or --seed)");
        if (!cfg.scenario.empty() && cfg.scenario != scenario)
            std::cerr << "note: config names scenario '" << cfg.scenario << "', running '" << scenario << "'\n";
        cfg.scenario = scenario;
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        auto result = harness::run_scenario(cfg);
        for (const auto& f : result.failures) std::cerr << "FAIL: " << f << '\n';
        if (!quiet) std::cout << result.summary.dump(2) << '\n';
        return result.exit_code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return harness::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return harness::kExitValidation;
    }
}
