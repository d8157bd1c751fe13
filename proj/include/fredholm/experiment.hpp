#pragma once

#include "fredholm/regparam.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fredholm {

enum class Selector { best, discrepancy, lcurve };

std::string to_string(Selector s);
/// "best", "discrepancy" or "lcurve". "all" is expanded by the config parser.
Selector parse_selector(const std::string& s);

struct ExperimentConfig {
    std::string problem = "tp1";
    /// FDEM truncation depth.
    double z0 = 4.0;
    std::vector<int> n{10};
    std::vector<double> delta{0.0};
    std::uint64_t seed = 1;
    /// Seeds seed, seed + 1, ..., seed + repeats - 1 per (n, delta).
    int repeats = 1;
    /// Discrepancy safety factor; unset means 1.1 for tp1/tp2 and 1.3 for FDEM.
    std::optional<double> tau;
    std::vector<Selector> selectors{Selector::best};
    int grid_points = 1000;
    std::string output_dir = ".";
    bool write_csv = true;
    bool write_json = true;
    bool write_lcurve = true;

    double effective_tau() const;
    /// Throws InvalidArgument on an inconsistent config.
    void validate() const;

    /// Missing keys keep their defaults. Unknown keys are rejected.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Wall-clock seconds per phase.
struct PhaseTimes {
    double basis = 0.0;
    double gram = 0.0;
    double factorize = 0.0;
    double solve = 0.0;
    double select = 0.0;
};

struct SelectedSolution {
    Selector selector = Selector::best;
    RegularizedSolution solution;
    ErrorNorms errors;
    std::vector<double> values;
};

/// Everything computed for one (n, delta, seed) combination.
struct CellResult {
    std::string problem;
    int n = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    double tau = 0.0;
    Eigen::Index size = 0;
    Eigen::Index cutoff = 0;
    double cond_estimate = 0.0;
    double noise_norm = 0.0;
    std::vector<std::string> notes;

    std::vector<double> grid;
    std::vector<double> exact;
    /// kappa = N, no regularization.
    SelectedSolution full;
    std::vector<SelectedSolution> selected;
    ParamSelectionReport report;
    Eigen::VectorXd data;
    PhaseTimes times;

    const SelectedSolution* find(Selector s) const;
    std::string stem() const;
};

/// Runs one cell without touching the file system.
CellResult run_cell(const ExperimentConfig& cfg, int n, double delta, std::uint64_t seed);

nlohmann::json summary_json(const CellResult& cell);
nlohmann::json timing_json(const CellResult& cell);
/// Header "t,exact,full,<selectors...>", 17 significant digits.
std::string solution_csv(const CellResult& cell);

/// Runs every cell (concurrently) and writes per-cell files into
/// cfg.output_dir. Returns the cells in (n, delta, seed) order.
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

struct Table1Row {
    int n = 0;
    double galerkin_error = 0.0;
    double riesz_error = 0.0;
};

/// Noise-free second test problem with kappa = N against the box-function
/// Galerkin baseline, max-norm errors on a uniform grid.
std::vector<Table1Row> table1(int grid_points = 1000);
std::string table1_csv(const std::vector<Table1Row>& rows);

/// Writes the series behind a figure (fig2, fig3, fig4, fig7, fig8, fig12) as
/// CSV files plus a JSON file with the kappa values. Returns the paths written.
std::vector<std::filesystem::path> figure_data(const std::string& name, const std::filesystem::path& dir,
                                               std::uint64_t seed = 1, int grid_points = 1000);

/// Gram matrix, spectrum and data projections for inspection.
std::vector<std::filesystem::path> dump_gram(const std::string& problem, int n, double z0,
                                             const std::filesystem::path& dir);

/// "%.17g".
std::string format_double(double v);
/// Writes `text` to `path`, throwing InvalidArgument when it cannot be opened.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fredholm
