#include "fredholm/regparam.hpp"

#include "fredholm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace fredholm {

std::vector<double> gaussian_stream(std::uint64_t seed, std::size_t count)
{
    std::mt19937_64 engine(seed);
    // 53-bit uniform in (0, 1]; never zero so the logarithm is finite.
    const auto uniform = [&engine] { return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53; };

    std::vector<double> out;
    out.reserve(count + 1);
    while (out.size() < count) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out.push_back(radius * std::cos(angle));
        out.push_back(radius * std::sin(angle));
    }
    out.resize(count);
    return out;
}

std::pair<DataVector, NoiseModel> add_noise(const DataVector& exact, double delta, std::uint64_t seed)
{
    if (!(delta >= 0.0)) throw InvalidArgument("add_noise: delta must be >= 0");
    const Eigen::Index n = exact.size();
    if (n == 0) throw InvalidArgument("add_noise: empty data vector");

    NoiseModel model{delta, seed, 0.0};
    DataVector noisy = exact;
    noisy.kind = DataVector::Kind::noisy;
    if (delta > 0.0) {
        const std::vector<double> w = gaussian_stream(seed, static_cast<std::size_t>(n));
        const double scale = delta / std::sqrt(static_cast<double>(n)) * exact.values.norm();
        Eigen::VectorXd e(n);
        for (Eigen::Index k = 0; k < n; ++k) e[k] = scale * w[static_cast<std::size_t>(k)];
        noisy.values += e;
        model.realized_norm = e.norm();
    }
    noisy.noise_norm = model.realized_norm;
    return {noisy, model};
}

DiscrepancyResult discrepancy_kappa(const TeigExpansion& teig, double noise_norm, double tau)
{
    if (!(noise_norm > 0.0)) throw InvalidArgument("discrepancy_kappa: noise norm must be > 0");
    if (!(tau > 1.0)) throw InvalidArgument("discrepancy_kappa: tau must be > 1");

    DiscrepancyResult result;
    const double bound = tau * noise_norm;
    for (Eigen::Index k = 1; k <= teig.cutoff(); ++k) {
        const double r = teig.residual(k);
        result.trace.emplace_back(k, r);
        if (r <= bound) {
            result.kappa = k;
            result.satisfied = true;
            return result;
        }
    }
    result.kappa = teig.cutoff();
    result.satisfied = false;
    return result;
}

LCurve lcurve_points(const TeigExpansion& teig)
{
    const Eigen::Index n = teig.cutoff();
    Eigen::Index last = n;
    while (last >= 1 && !(teig.residual(last) > 0.0)) --last;

    LCurve curve;
    curve.dropped = n - last;
    for (Eigen::Index k = 1; k <= last; ++k) {
        const double r = teig.residual(k);
        const double w = teig.w_norm(k);
        if (!(r > 0.0) || !(w > 0.0)) continue;
        curve.points.push_back({k, std::log10(r), std::log10(w)});
    }
    if (curve.points.size() < 3)
        throw InsufficientCurve("lcurve_points: fewer than 3 usable L-curve points");
    return curve;
}

namespace {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double wedge(const Vec2& u, const Vec2& v) { return u.x * v.y - v.x * u.y; }

// Corner of a pruned curve: the most negative wedge product between
// consecutive normalized vectors. Returns the point index at the joint.
std::optional<std::size_t> angle_candidate(const std::vector<Vec2>& dirs, const std::vector<std::size_t>& kept)
{
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t k = 0; k + 1 < kept.size(); ++k) {
        const double d = wedge(dirs[kept[k]], dirs[kept[k + 1]]);
        if (d < best) {
            best = d;
            at = k;
        }
    }
    if (best < 0.0) return kept[at] + 1;
    return std::nullopt;
}

// Corner from the global shape: intersect the most horizontal and the most
// vertical pruned vectors (horizontal one first) and take the curve point
// nearest to that "origin".
std::size_t global_candidate(const std::vector<Vec2>& pts, const std::vector<Vec2>& dirs,
                             const std::vector<std::size_t>& kept)
{
    const std::size_t ln = kept.size();
    std::vector<std::size_t> order(ln);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return std::fabs(dirs[kept[l]].y) < std::fabs(dirs[kept[r]].y);
    });

    std::size_t count = 1;
    std::size_t mn = order.front();
    std::size_t mx = order.back();
    while (mn >= mx && count < ln) {
        mx = std::max(mx, order[ln - 1 - count]);
        ++count;
        mn = std::min(mn, order[count - 1]);
    }

    std::size_t horiz = order.front();
    std::size_t vert = order.back();
    if (count > 1) {
        bool found = false;
        for (std::size_t i = 0; i < count && !found; ++i) {
            for (std::size_t j = ln; j-- > ln - count;) {
                if (order[i] < order[j]) {
                    horiz = order[i];
                    vert = order[j];
                    found = true;
                    break;
                }
            }
        }
    }

    const std::size_t h = kept[horiz];
    const std::size_t v = kept[vert];
    const Vec2& v0 = pts[v];
    const Vec2& v1 = pts[v + 1];
    double x3 = v1.x;
    if (v1.y != v0.y) x3 = v1.x + (pts[h].y - v1.y) / (v1.y - v0.y) * (v1.x - v0.x);
    const Vec2 origin{x3, pts[h].y};

    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double dx = origin.x - pts[k].x;
        const double dy = origin.y - pts[k].y;
        const double d = dx * dx + dy * dy;
        if (d < best_dist) {
            best_dist = d;
            best = k;
        }
    }
    return best;
}

CornerResult pruning_corner(const std::vector<Vec2>& pts)
{
    const std::size_t np = pts.size();
    std::vector<Vec2> dirs(np - 1);
    std::vector<double> lengths(np - 1);
    for (std::size_t k = 0; k + 1 < np; ++k) {
        const Vec2 d{pts[k + 1].x - pts[k].x, pts[k + 1].y - pts[k].y};
        lengths[k] = std::hypot(d.x, d.y);
        dirs[k] = lengths[k] > 0.0 ? Vec2{d.x / lengths[k], d.y / lengths[k]} : Vec2{};
    }

    // Longest vectors first; ties keep the later vector first.
    std::vector<std::size_t> by_length(np - 1);
    std::iota(by_length.begin(), by_length.end(), 0);
    std::stable_sort(by_length.begin(), by_length.end(),
                     [&](std::size_t l, std::size_t r) { return lengths[l] < lengths[r]; });
    std::reverse(by_length.begin(), by_length.end());

    std::vector<std::size_t> candidates;
    const auto add = [&candidates](std::size_t c) {
        if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(c);
    };

    bool convex = false;
    for (std::size_t p = std::min<std::size_t>(5, np - 1); p < (np - 1) * 2; p *= 2) {
        std::vector<std::size_t> kept(by_length.begin(), by_length.begin() + std::min(p, np - 1));
        std::sort(kept.begin(), kept.end());

        if (const auto c = angle_candidate(dirs, kept)) {
            convex = true;
            add(*c);
        }
        add(global_candidate(pts, dirs, kept));
    }

    if (!convex) return {np - 1, 0, true};

    add(0);
    std::sort(candidates.begin(), candidates.end());

    // Walk the candidates from the right; stop at the first one where the
    // next step gains more in norm than it loses in residual and the curve
    // turns convexly.
    const std::size_t m = candidates.size();
    std::vector<std::size_t> steep;
    std::vector<Vec2> segs;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const Vec2& p0 = pts[candidates[k]];
        const Vec2& p1 = pts[candidates[k + 1]];
        const Vec2 d{p1.x - p0.x, p1.y - p0.y};
        if (d.y >= std::fabs(d.x)) steep.push_back(k);
        const double len = std::hypot(d.x, d.y);
        segs.push_back(len > 0.0 ? Vec2{d.x / len, d.y / len} : Vec2{});
    }

    std::size_t index = candidates.back();
    if (!steep.empty()) {
        index = candidates[steep.back()];
        for (std::size_t k : steep) {
            // The turn into segment k happens at candidate k; the first
            // candidate has no incoming segment.
            if (k >= 1 && wedge(segs[k - 1], segs[k]) <= 0.0) {
                index = candidates[k];
                break;
            }
        }
    }
    return {index, 0, false};
}

CornerResult curvature_corner(const std::vector<Vec2>& pts)
{
    double best = 0.0;
    std::size_t at = pts.size() - 1;
    bool found = false;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        const double dx = 0.5 * (pts[k + 1].x - pts[k - 1].x);
        const double dy = 0.5 * (pts[k + 1].y - pts[k - 1].y);
        const double ddx = pts[k + 1].x - 2.0 * pts[k].x + pts[k - 1].x;
        const double ddy = pts[k + 1].y - 2.0 * pts[k].y + pts[k - 1].y;
        const double speed = std::pow(dx * dx + dy * dy, 1.5);
        if (!(speed > 0.0)) continue;
        const double curvature = (dx * ddy - dy * ddx) / speed;
        if (curvature < best) {
            best = curvature;
            at = k;
            found = true;
        }
    }
    return {at, 0, !found};
}

}  // namespace

CornerResult lcurve_corner(const std::vector<LCurvePoint>& points, CornerMethod method)
{
    if (points.size() < 3) throw InsufficientCurve("lcurve_corner: need at least 3 points");
    std::vector<Vec2> pts;
    pts.reserve(points.size());
    for (const LCurvePoint& p : points) {
        if (!std::isfinite(p.log_residual) || !std::isfinite(p.log_norm))
            throw InvalidArgument("lcurve_corner: non-finite L-curve coordinate");
        pts.push_back({p.log_residual, p.log_norm});
    }

    CornerResult result = method == CornerMethod::pruning ? pruning_corner(pts) : curvature_corner(pts);
    result.kappa = points[result.index].kappa;
    return result;
}

BestKappa kappa_best_grid(const TeigExpansion& teig, const RieszBasis& basis, const Eigen::MatrixXd& values,
                          const std::vector<double>& grid, const std::vector<double>& truth, ErrorMetric metric)
{
    if (metric == ErrorMetric::w_norm) throw InvalidArgument("kappa_best_grid: w_norm is not a grid metric");
    if (truth.size() != grid.size()) throw InvalidArgument("kappa_best_grid: truth does not match grid");

    const GramFactorization& fac = teig.factorization();
    const ProblemSpec& ps = basis.problem();
    Eigen::VectorXd lift(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) lift[static_cast<Eigen::Index>(k)] = boundary_lift(grid[k], ps.iv, ps.bv);

    // f^(kappa) on the grid is accumulated one eigen-term at a time.
    const Eigen::MatrixXd valuesT = values.transpose();
    Eigen::VectorXd f = lift;
    BestKappa best;
    double best_err = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k <= teig.cutoff(); ++k) {
        const double coef = teig.projections()[k - 1] / fac.eigenvalues[k - 1];
        f += coef * (valuesT * fac.eigenvectors.col(k - 1));
        std::vector<double> approx(f.data(), f.data() + f.size());
        const ErrorNorms e = grid_errors(approx, truth, ps.iv);
        const double err = metric == ErrorMetric::grid_max ? e.max : e.l2;
        best.errors.push_back(err);
        if (err < best_err) {
            best_err = err;
            best.kappa = k;
        }
    }
    return best;
}

BestKappa kappa_best_wnorm(const TeigExpansion& teig, const Eigen::VectorXd& c_ref)
{
    const GramFactorization& fac = teig.factorization();
    BestKappa best;
    double best_err = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k <= teig.cutoff(); ++k) {
        const double err = w_norm(fac, c_ref - teig.coefficients(k));
        best.errors.push_back(err);
        if (err < best_err) {
            best_err = err;
            best.kappa = k;
        }
    }
    return best;
}

BestKappa kappa_best(const TeigExpansion& teig, const RieszBasis& basis, const RealFunction& truth,
                     ErrorMetric metric, int grid_points, const std::optional<Eigen::VectorXd>& exact)
{
    if (metric == ErrorMetric::w_norm) {
        if (!exact) throw InvalidArgument("kappa_best: w_norm metric needs the exact data vector");
        return kappa_best_wnorm(teig, coefficients_full(teig.factorization(), *exact));
    }
    const std::vector<double> grid = uniform_grid(basis.problem().iv, grid_points);
    std::vector<double> t(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) t[k] = truth(grid[k]);
    return kappa_best_grid(teig, basis, basis.value_matrix(grid), grid, t, metric);
}

nlohmann::json to_json(const ParamSelectionReport& report)
{
    nlohmann::json j;
    const auto opt = [](const std::optional<Eigen::Index>& v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j["kappa_d"] = opt(report.kappa_d);
    j["kappa_lc"] = opt(report.kappa_lc);
    j["kappa_best"] = opt(report.kappa_best);
    j["tau"] = report.tau;
    j["discrepancy_satisfied"] = report.discrepancy_satisfied;
    j["corner_degenerate"] = report.corner_degenerate;
    j["lcurve_dropped"] = report.lcurve.dropped;
    nlohmann::json pts = nlohmann::json::array();
    for (const LCurvePoint& p : report.lcurve.points) pts.push_back({p.kappa, p.log_residual, p.log_norm});
    j["lcurve_points"] = pts;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [k, r] : report.discrepancy_trace) trace.push_back({k, r});
    j["discrepancy_trace"] = trace;
    return j;
}

std::string lcurve_csv(const LCurve& curve)
{
    std::ostringstream out;
    out << std::setprecision(17);
    out << "kappa,log_residual,log_norm\n";
    for (const LCurvePoint& p : curve.points) out << p.kappa << ',' << p.log_residual << ',' << p.log_norm << '\n';
    return out.str();
}

}  // namespace fredholm
