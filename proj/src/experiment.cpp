#include "fredholm/experiment.hpp"

#include "fredholm/errors.hpp"
#include "fredholm/gram.hpp"
#include "fredholm/problems.hpp"
#include "fredholm/rkhs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

namespace fredholm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (c == ':' || c == '/' || c == ' ') c = '-';
    return s;
}

std::string short_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns)
{
    std::ostringstream out;
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c][r]);
        out << '\n';
    }
    return out.str();
}

std::vector<double> pointwise_error(const std::vector<double>& approx, const std::vector<double>& exact)
{
    std::vector<double> e(approx.size());
    for (std::size_t k = 0; k < approx.size(); ++k) e[k] = approx[k] - exact[k];
    return e;
}

}  // namespace

std::string to_string(Selector s)
{
    switch (s) {
    case Selector::best: return "best";
    case Selector::discrepancy: return "discrepancy";
    case Selector::lcurve: return "lcurve";
    }
    return "?";
}

Selector parse_selector(const std::string& s)
{
    if (s == "best") return Selector::best;
    if (s == "discrepancy") return Selector::discrepancy;
    if (s == "lcurve") return Selector::lcurve;
    throw InvalidArgument("unknown selector '" + s + "'");
}

double ExperimentConfig::effective_tau() const
{
    if (tau) return *tau;
    return problem.rfind("fdem:", 0) == 0 ? 1.3 : 1.1;
}

void ExperimentConfig::validate() const
{
    if (problem.empty()) throw InvalidArgument("config: problem is empty");
    if (n.empty()) throw InvalidArgument("config: no problem size given");
    for (int v : n)
        if (v < 2) throw InvalidArgument("config: n must be >= 2");
    if (delta.empty()) throw InvalidArgument("config: no noise level given");
    for (double d : delta)
        if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidArgument("config: delta must be a finite value >= 0");
    if (repeats < 1) throw InvalidArgument("config: repeats must be >= 1");
    if (selectors.empty()) throw InvalidArgument("config: at least one selector is required");
    if (grid_points < 2) throw InvalidArgument("config: grid_points must be >= 2");
    if (!(z0 > 0.0)) throw InvalidArgument("config: z0 must be > 0");
    if (tau && !(*tau > 1.0)) throw InvalidArgument("config: tau must be > 1");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw InvalidArgument("config: expected a JSON object");
    static const std::set<std::string> known = {"problem", "z0", "n", "delta", "seed", "repeats", "tau",
                                                "selector", "grid_points", "output_dir", "formats", "lcurve"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw InvalidArgument("config: unknown key '" + key + "'");

    ExperimentConfig cfg;
    try {
        if (j.contains("problem")) {
            const auto& p = j.at("problem");
            if (p.is_string()) {
                cfg.problem = p.get<std::string>();
            } else {
                cfg.problem = p.at("name").get<std::string>();
                if (p.contains("z0")) cfg.z0 = p.at("z0").get<double>();
            }
        }
        if (j.contains("z0")) cfg.z0 = j.at("z0").get<double>();
        if (j.contains("n")) {
            const auto& v = j.at("n");
            cfg.n = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
        }
        if (j.contains("delta")) {
            const auto& v = j.at("delta");
            cfg.delta = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("repeats")) cfg.repeats = j.at("repeats").get<int>();
        if (j.contains("tau") && !j.at("tau").is_null()) cfg.tau = j.at("tau").get<double>();
        if (j.contains("selector")) {
            const auto& v = j.at("selector");
            std::vector<std::string> names =
                v.is_array() ? v.get<std::vector<std::string>>() : std::vector<std::string>{v.get<std::string>()};
            cfg.selectors.clear();
            for (const std::string& s : names) {
                if (s == "all") {
                    cfg.selectors = {Selector::best, Selector::discrepancy, Selector::lcurve};
                    break;
                }
                cfg.selectors.push_back(parse_selector(s));
            }
        }
        if (j.contains("grid_points")) cfg.grid_points = j.at("grid_points").get<int>();
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("formats")) {
            const auto f = j.at("formats").get<std::vector<std::string>>();
            cfg.write_csv = std::find(f.begin(), f.end(), "csv") != f.end();
            cfg.write_json = std::find(f.begin(), f.end(), "json") != f.end();
        }
        if (j.contains("lcurve")) cfg.write_lcurve = j.at("lcurve").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const
{
    nlohmann::json j;
    j["problem"] = problem;
    j["z0"] = z0;
    j["n"] = n;
    j["delta"] = delta;
    j["seed"] = seed;
    j["repeats"] = repeats;
    j["tau"] = effective_tau();
    std::vector<std::string> sel;
    for (Selector s : selectors) sel.push_back(to_string(s));
    j["selector"] = sel;
    j["grid_points"] = grid_points;
    j["output_dir"] = output_dir;
    std::vector<std::string> formats;
    if (write_csv) formats.push_back("csv");
    if (write_json) formats.push_back("json");
    j["formats"] = formats;
    j["lcurve"] = write_lcurve;
    return j;
}

const SelectedSolution* CellResult::find(Selector s) const
{
    for (const SelectedSolution& x : selected)
        if (x.selector == s) return &x;
    return nullptr;
}

std::string CellResult::stem() const
{
    return sanitize(problem) + "_n" + std::to_string(n) + "_d" + short_double(delta) + "_s" + std::to_string(seed);
}

CellResult run_cell(const ExperimentConfig& cfg, int n, double delta, std::uint64_t seed)
{
    cfg.validate();
    CellResult cell;
    cell.problem = cfg.problem;
    cell.n = n;
    cell.delta = delta;
    cell.seed = seed;
    cell.tau = cfg.effective_tau();

    auto t0 = Clock::now();
    auto ps = make_problem(cfg.problem, n, cfg.z0);
    if (!ps->rhs_exact) throw InvalidArgument("problem '" + cfg.problem + "' has no exact data");
    if (!ps->truth) throw InvalidArgument("problem '" + cfg.problem + "' has no exact solution");
    cell.notes = ps->warnings;
    RieszBasis basis = build_basis(ps);
    cell.times.basis = seconds_since(t0);

    t0 = Clock::now();
    Eigen::MatrixXd gram = assemble_gram(basis);
    cell.times.gram = seconds_since(t0);

    t0 = Clock::now();
    const GramFactorization fac = spectral_factorize(gram);
    cell.times.factorize = seconds_since(t0);
    cell.size = fac.size();
    cell.cutoff = fac.cutoff;
    cell.cond_estimate = fac.cond_estimate;

    t0 = Clock::now();
    DataVector exact;
    exact.values = *ps->rhs_exact;
    DataVector measured = exact;
    if (delta > 0.0) {
        auto [noisy, model] = add_noise(exact, delta, seed);
        measured = noisy;
        cell.noise_norm = model.realized_norm;
    }
    cell.data = shift_rhs(*ps, measured.values);
    const TeigExpansion teig(fac, cell.data);

    cell.grid = uniform_grid(ps->iv, cfg.grid_points);
    cell.exact.resize(cell.grid.size());
    for (std::size_t k = 0; k < cell.grid.size(); ++k) cell.exact[k] = ps->truth(cell.grid[k]);
    const Eigen::MatrixXd values = basis.value_matrix(cell.grid);

    const auto finish = [&](Selector s, Eigen::Index kappa) {
        SelectedSolution out;
        out.selector = s;
        out.solution = regularized_solution(teig, kappa);
        out.values = evaluate_solution(basis, values, out.solution.coeffs, cell.grid);
        out.errors = grid_errors(out.values, cell.exact, ps->iv);
        return out;
    };
    cell.full = finish(Selector::best, fac.cutoff);
    cell.times.solve = seconds_since(t0);

    t0 = Clock::now();
    ParamSelectionReport& report = cell.report;
    report.tau = cell.tau;
    try {
        report.lcurve = lcurve_points(teig);
    } catch (const InsufficientCurve& e) {
        cell.notes.push_back(std::string("L-curve: ") + e.what());
    }
    for (Selector s : cfg.selectors) {
        std::optional<Eigen::Index> kappa;
        switch (s) {
        case Selector::best:
            kappa = kappa_best_grid(teig, basis, values, cell.grid, cell.exact, ErrorMetric::grid_l2).kappa;
            report.kappa_best = kappa;
            break;
        case Selector::discrepancy:
            if (cell.noise_norm > 0.0) {
                const DiscrepancyResult d = discrepancy_kappa(teig, cell.noise_norm, cell.tau);
                kappa = d.kappa;
                report.kappa_d = kappa;
                report.discrepancy_satisfied = d.satisfied;
                report.discrepancy_trace = d.trace;
                if (!d.satisfied) cell.notes.push_back("discrepancy bound not met; kappa_d set to N");
            } else {
                cell.notes.push_back("discrepancy principle skipped: noise-free data");
            }
            break;
        case Selector::lcurve:
            if (!report.lcurve.points.empty()) {
                const CornerResult c = lcurve_corner(report.lcurve.points);
                kappa = c.kappa;
                report.kappa_lc = kappa;
                report.corner_degenerate = c.degenerate;
                if (c.degenerate) cell.notes.push_back("L-curve has no convex corner; last point used");
            }
            break;
        }
        if (kappa) cell.selected.push_back(finish(s, *kappa));
    }
    cell.times.select = seconds_since(t0);
    return cell;
}

nlohmann::json summary_json(const CellResult& cell)
{
    nlohmann::json j;
    j["problem"] = cell.problem;
    j["n"] = cell.n;
    j["delta"] = cell.delta;
    j["seed"] = cell.seed;
    j["tau"] = cell.tau;
    j["size"] = cell.size;
    j["cutoff"] = cell.cutoff;
    j["cond_estimate"] = cell.cond_estimate;
    j["noise_norm"] = cell.noise_norm;
    j["grid_points"] = cell.grid.size();
    j["notes"] = cell.notes;
    j["data"] = std::vector<double>(cell.data.data(), cell.data.data() + cell.data.size());

    const auto entry = [](const SelectedSolution& s) {
        nlohmann::json e;
        e["kappa"] = s.solution.kappa;
        e["max_error"] = s.errors.max;
        e["l2_error"] = s.errors.l2;
        e["residual"] = s.solution.residual;
        e["w_norm"] = s.solution.w_norm;
        e["coeffs"] = std::vector<double>(s.solution.coeffs.data(), s.solution.coeffs.data() + s.solution.coeffs.size());
        return e;
    };
    j["full"] = entry(cell.full);
    nlohmann::json sel = nlohmann::json::object();
    for (const SelectedSolution& s : cell.selected) sel[to_string(s.selector)] = entry(s);
    j["selected"] = sel;
    j["selection"] = to_json(cell.report);
    return j;
}

nlohmann::json timing_json(const CellResult& cell)
{
    nlohmann::json j;
    j["cell"] = cell.stem();
    j["basis"] = cell.times.basis;
    j["gram"] = cell.times.gram;
    j["factorize"] = cell.times.factorize;
    j["solve"] = cell.times.solve;
    j["select"] = cell.times.select;
    return j;
}

std::string solution_csv(const CellResult& cell)
{
    std::vector<std::string> header{"t", "exact", "full"};
    std::vector<std::vector<double>> cols{cell.grid, cell.exact, cell.full.values};
    for (const SelectedSolution& s : cell.selected) {
        header.push_back(to_string(s.selector));
        cols.push_back(s.values);
    }
    return csv_table(header, cols);
}

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument("cannot create output directory " + dir.string());

    struct Job {
        int n;
        double delta;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int n : cfg.n)
        for (double d : cfg.delta)
            for (int r = 0; r < cfg.repeats; ++r) jobs.push_back({n, d, cfg.seed + static_cast<std::uint64_t>(r)});

    const auto run_and_write = [&cfg, &dir](const Job& job) {
        CellResult cell = run_cell(cfg, job.n, job.delta, job.seed);
        const std::string stem = cell.stem();
        if (cfg.write_json) {
            write_text(dir / (stem + "_summary.json"), summary_json(cell).dump(2) + "\n");
            write_text(dir / (stem + "_timing.json"), timing_json(cell).dump(2) + "\n");
        }
        if (cfg.write_csv) {
            write_text(dir / (stem + "_solution.csv"), solution_csv(cell));
            if (cfg.write_lcurve && !cell.report.lcurve.points.empty())
                write_text(dir / (stem + "_lcurve.csv"), lcurve_csv(cell.report.lcurve));
        }
        return cell;
    };

    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<CellResult> cells;
    cells.reserve(jobs.size());
    for (std::size_t start = 0; start < jobs.size(); start += workers) {
        std::vector<std::future<CellResult>> batch;
        for (std::size_t k = start; k < std::min(jobs.size(), start + workers); ++k)
            batch.push_back(std::async(std::launch::async, run_and_write, jobs[k]));
        for (auto& f : batch) cells.push_back(f.get());
    }
    return cells;
}

std::vector<Table1Row> table1(int grid_points)
{
    std::vector<Table1Row> rows;
    for (int n : {6, 10, 20}) {
        ExperimentConfig cfg;
        cfg.problem = "tp2";
        cfg.grid_points = grid_points;
        const CellResult cell = run_cell(cfg, n, 0.0, 1);

        const GalerkinResult gal = galerkin_baseline(n);
        double gal_err = 0.0;
        for (std::size_t k = 0; k < cell.grid.size(); ++k)
            gal_err = std::max(gal_err, std::abs(gal.value(cell.grid[k]) - cell.exact[k]));
        rows.push_back({n, gal_err, cell.full.errors.max});
    }
    return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows)
{
    std::ostringstream out;
    out << "n,galerkin_error,riesz_error\n";
    for (const Table1Row& r : rows)
        out << r.n << ',' << format_double(r.galerkin_error) << ',' << format_double(r.riesz_error) << '\n';
    return out.str();
}

namespace {

struct Series {
    std::string label;
    std::string problem;
    int n;
    double delta;
    /// Unset: kappa = N.
    std::optional<Selector> selector;
};

struct Panel {
    std::string file;
    bool errors;
    std::vector<Series> series;
};

std::vector<Panel> figure_panels(const std::string& name)
{
    const std::vector<double> deltas{1e-8, 1e-4, 1e-2};
    const auto by_n = [](const std::string& p, double d, std::optional<Selector> s) {
        std::vector<Series> out;
        for (int n : {5, 10, 20}) out.push_back({"n" + std::to_string(n), p, n, d, s});
        return out;
    };
    const auto by_delta = [&deltas](const std::string& p, int n) {
        std::vector<Series> out;
        for (double d : deltas) out.push_back({"d" + short_double(d), p, n, d, Selector::best});
        return out;
    };
    const auto by_selector = [](const std::string& p, int n, double d) {
        return std::vector<Series>{{"best", p, n, d, Selector::best},
                                   {"discrepancy", p, n, d, Selector::discrepancy},
                                   {"lcurve", p, n, d, Selector::lcurve}};
    };

    if (name == "fig2")
        return {{"fig2_solutions", false, by_n("tp1", 0.0, std::nullopt)},
                {"fig2_errors", true, by_n("tp1", 0.0, std::nullopt)}};
    if (name == "fig3")
        return {{"fig3_unregularized", false, by_n("tp1", 1e-4, std::nullopt)},
                {"fig3_best", false, by_n("tp1", 1e-4, Selector::best)}};
    if (name == "fig4")
        return {{"fig4_noise_levels", true, by_delta("tp1", 10)},
                {"fig4_selectors", true, by_selector("tp1", 20, 1e-4)}};
    if (name == "fig7")
        return {{"fig7_noise_levels", false, by_delta("fdem:sigma1", 10)},
                {"fig7_sizes", false, by_n("fdem:sigma1", 1e-2, Selector::best)}};
    if (name == "fig8")
        return {{"fig8_sigma2", false, by_delta("fdem:sigma2", 10)},
                {"fig8_sigma3", false, by_delta("fdem:sigma3", 10)}};
    if (name == "fig12") return {{"fig12_selectors", false, by_selector("fdem:sigma1", 10, 1e-4)}};
    throw InvalidArgument("unknown figure '" + name + "' (expected fig2, fig3, fig4, fig7, fig8 or fig12)");
}

}  // namespace

std::vector<std::filesystem::path> figure_data(const std::string& name, const std::filesystem::path& dir,
                                               std::uint64_t seed, int grid_points)
{
    const std::vector<Panel> panels = figure_panels(name);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument("cannot create output directory " + dir.string());

    std::vector<std::filesystem::path> written;
    nlohmann::json kappas = nlohmann::json::object();
    for (const Panel& panel : panels) {
        std::vector<std::string> header{"t"};
        std::vector<std::vector<double>> cols;
        nlohmann::json pk = nlohmann::json::object();
        for (const Series& s : panel.series) {
            ExperimentConfig cfg;
            cfg.problem = s.problem;
            cfg.grid_points = grid_points;
            cfg.selectors = {s.selector.value_or(Selector::best)};
            const CellResult cell = run_cell(cfg, s.n, s.delta, seed);
            const SelectedSolution* sol = s.selector ? cell.find(*s.selector) : &cell.full;
            if (!sol) throw NumericError("figure " + name + ": selector gave no parameter for " + s.label);
            if (cols.empty()) {
                cols.push_back(cell.grid);
                if (!panel.errors) {
                    header.push_back("exact");
                    cols.push_back(cell.exact);
                }
            }
            header.push_back(s.label);
            cols.push_back(panel.errors ? pointwise_error(sol->values, cell.exact) : sol->values);
            pk[s.label] = {{"kappa", sol->solution.kappa}, {"cutoff", cell.cutoff},
                           {"max_error", sol->errors.max}, {"l2_error", sol->errors.l2}};
        }
        kappas[panel.file] = pk;
        const auto path = dir / (panel.file + ".csv");
        write_text(path, csv_table(header, cols));
        written.push_back(path);
    }
    const auto path = dir / (name + "_kappa.json");
    write_text(path, kappas.dump(2) + "\n");
    written.push_back(path);
    return written;
}

std::vector<std::filesystem::path> dump_gram(const std::string& problem, int n, double z0,
                                             const std::filesystem::path& dir)
{
    auto ps = make_problem(problem, n, z0);
    const RieszBasis basis = build_basis(ps);
    const GramFactorization fac = spectral_factorize(assemble_gram(basis));

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument("cannot create output directory " + dir.string());

    const std::string stem = sanitize(problem) + "_n" + std::to_string(n);
    std::ostringstream m;
    for (Eigen::Index p = 0; p < fac.gram.rows(); ++p) {
        for (Eigen::Index q = 0; q < fac.gram.cols(); ++q) m << (q ? "," : "") << format_double(fac.gram(p, q));
        m << '\n';
    }
    std::vector<double> idx, lam, proj;
    std::optional<TeigExpansion> teig;
    if (ps->rhs_exact) teig.emplace(fac, shift_rhs(*ps, *ps->rhs_exact));
    for (Eigen::Index l = 0; l < fac.size(); ++l) {
        idx.push_back(static_cast<double>(l + 1));
        lam.push_back(fac.eigenvalues[l]);
        proj.push_back(teig ? teig->projections()[l] : 0.0);
    }

    nlohmann::json info;
    info["problem"] = problem;
    info["n"] = n;
    info["size"] = fac.size();
    info["cutoff"] = fac.cutoff;
    info["cond_estimate"] = fac.cond_estimate;
    info["nonpositive_tail"] = fac.nonpositive_tail;
    info["reconstruction_error"] = reconstruction_error(fac);

    const std::vector<std::filesystem::path> paths{dir / (stem + "_gram.csv"), dir / (stem + "_spectrum.csv"),
                                                   dir / (stem + "_gram.json")};
    write_text(paths[0], m.str());
    write_text(paths[1], csv_table({"l", "lambda", "projection"}, {idx, lam, proj}));
    write_text(paths[2], info.dump(2) + "\n");
    return paths;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
    if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace fredholm
