// Command-line front end: solve, table1, figure-data, dump-gram.
#include "fredholm/errors.hpp"
#include "fredholm/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace fredholm;

namespace {

enum Exit { ok = 0, user_error = 1, numeric_failure = 2 };

int report(Exit code, const std::string& kind, const std::string& message)
{
    nlohmann::json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = static_cast<int>(code);
    std::cerr << j.dump() << std::endl;
    return code;
}

std::string default_output_dir()
{
    const char* env = std::getenv("FREDHOLM_OUTPUT_DIR");
    return env && *env ? env : ".";
}

nlohmann::json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("config file " + path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Regularized solver for systems of first-kind Fredholm integral equations"};
    app.require_subcommand(1);

    std::string output_dir = default_output_dir();

    // solve
    auto* solve = app.add_subcommand("solve", "Run an experiment grid over (n, delta, seed)");
    std::string config_file, problem;
    std::vector<int> sizes;
    std::vector<double> deltas;
    std::uint64_t seed = 0;
    int repeats = 0, grid_points = 0;
    double tau = 0.0, z0 = 0.0;
    std::vector<std::string> selectors, formats;
    bool no_lcurve = false;
    solve->add_option("-c,--config", config_file, "JSON experiment config; flags override its values")
        ->check(CLI::ExistingFile);
    solve->add_option("-p,--problem", problem, "tp1, tp2, fdem:sigma1, fdem:sigma2 or fdem:sigma3");
    solve->add_option("-n,--n", sizes, "Nodes per equation (repeatable)");
    solve->add_option("-d,--delta", deltas, "Noise level (repeatable)");
    solve->add_option("-s,--seed", seed, "Noise seed");
    solve->add_option("--repeats", repeats, "Number of consecutive seeds");
    solve->add_option("--tau", tau, "Discrepancy safety factor");
    solve->add_option("--z0", z0, "FDEM truncation depth");
    solve->add_option("--selector", selectors, "best, discrepancy, lcurve or all (repeatable)");
    solve->add_option("--grid-points", grid_points, "Points of the evaluation grid");
    solve->add_option("--format", formats, "csv and/or json");
    solve->add_flag("--no-lcurve", no_lcurve, "Do not write L-curve files");
    solve->add_option("-o,--output-dir", output_dir, "Output directory (default $FREDHOLM_OUTPUT_DIR or .)");

    // table1
    auto* t1 = app.add_subcommand("table1", "Riesz vs box-function Galerkin errors, noise-free");
    t1->add_option("-o,--output-dir", output_dir, "Output directory");

    // figure-data
    auto* fig = app.add_subcommand("figure-data", "Write the series behind a figure");
    std::string figure;
    std::uint64_t fig_seed = 1;
    fig->add_option("name", figure, "fig2, fig3, fig4, fig7, fig8 or fig12")->required();
    fig->add_option("-s,--seed", fig_seed, "Noise seed");
    fig->add_option("-o,--output-dir", output_dir, "Output directory");

    // dump-gram
    auto* dump = app.add_subcommand("dump-gram", "Write the Gram matrix and its spectrum");
    std::string dump_problem = "tp1";
    int dump_n = 10;
    double dump_z0 = 4.0;
    dump->add_option("-p,--problem", dump_problem, "Problem name");
    dump->add_option("-n,--n", dump_n, "Nodes per equation");
    dump->add_option("--z0", dump_z0, "FDEM truncation depth");
    dump->add_option("-o,--output-dir", output_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(user_error, "usage", e.what());
    }

    try {
        if (*solve) {
            nlohmann::json j = config_file.empty() ? nlohmann::json::object() : load_config(config_file);
            if (!problem.empty()) j["problem"] = problem;
            if (!sizes.empty()) j["n"] = sizes;
            if (!deltas.empty()) j["delta"] = deltas;
            if (solve->count("--seed")) j["seed"] = seed;
            if (solve->count("--repeats")) j["repeats"] = repeats;
            if (solve->count("--tau")) j["tau"] = tau;
            if (solve->count("--z0")) j["z0"] = z0;
            if (!selectors.empty()) j["selector"] = selectors;
            if (solve->count("--grid-points")) j["grid_points"] = grid_points;
            if (!formats.empty()) j["formats"] = formats;
            if (no_lcurve) j["lcurve"] = false;
            if (solve->count("--output-dir") || !j.contains("output_dir")) j["output_dir"] = output_dir;

            const ExperimentConfig cfg = ExperimentConfig::from_json(j);
            const std::vector<CellResult> cells = run_experiment(cfg);
            nlohmann::json out = nlohmann::json::array();
            for (const CellResult& c : cells) {
                nlohmann::json s = summary_json(c);
                s.erase("data");
                s.erase("selection");
                for (auto& [k, v] : s["selected"].items()) v.erase("coeffs");
                s["full"].erase("coeffs");
                out.push_back(s);
            }
            std::cout << out.dump(2) << std::endl;
        } else if (*t1) {
            const auto rows = table1();
            const std::filesystem::path dir(output_dir);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            write_text(dir / "table1.csv", table1_csv(rows));
            std::cout << table1_csv(rows);
        } else if (*fig) {
            for (const auto& p : figure_data(figure, output_dir, fig_seed)) std::cout << p.string() << '\n';
        } else if (*dump) {
            for (const auto& p : dump_gram(dump_problem, dump_n, dump_z0, output_dir)) std::cout << p.string() << '\n';
        }
    } catch (const InvalidArgument& e) {
        return report(user_error, "invalid_argument", e.what());
    } catch (const NumericError& e) {
        return report(numeric_failure, "numeric_failure", e.what());
    } catch (const std::exception& e) {
        return report(numeric_failure, "internal", e.what());
    }
    return ok;
}
