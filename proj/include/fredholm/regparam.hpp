#pragma once

#include "fredholm/solver.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fredholm {

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

struct NoiseModel {
    double delta = 0.0;
    std::uint64_t seed = 0;
    double realized_norm = 0.0;
};

/// Standard normal variates from std::mt19937_64 (whose output sequence is
/// fixed by the standard) via the Box-Muller transform. Identical on every
/// platform for a given seed.
std::vector<double> gaussian_stream(std::uint64_t seed, std::size_t count);

/// g = g_exact + e with e = delta / sqrt(N_m) * ||g_exact||_2 * w, w ~ N(0, I).
std::pair<DataVector, NoiseModel> add_noise(const DataVector& exact, double delta, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Discrepancy principle
// ---------------------------------------------------------------------------

struct DiscrepancyResult {
    Eigen::Index kappa = 0;
    /// False when no kappa <= N met the bound and N was returned.
    bool satisfied = false;
    std::vector<std::pair<Eigen::Index, double>> trace;
};

/// Smallest kappa in 1..N with ||G c^(kappa) - g|| <= tau * noise_norm.
DiscrepancyResult discrepancy_kappa(const TeigExpansion& teig, double noise_norm, double tau);

// ---------------------------------------------------------------------------
// L-curve
// ---------------------------------------------------------------------------

/// One L-curve point; coordinates are base-10 logarithms.
struct LCurvePoint {
    Eigen::Index kappa = 0;
    double log_residual = 0.0;
    double log_norm = 0.0;
};

struct LCurve {
    std::vector<LCurvePoint> points;
    /// Trailing points with zero residual that were left out.
    Eigen::Index dropped = 0;
};

/// Points for kappa = 1..N. Throws InsufficientCurve with fewer than 3 usable points.
LCurve lcurve_points(const TeigExpansion& teig);

enum class CornerMethod {
    pruning,        ///< adaptive pruning over dyadic subsamples of the curve
    max_curvature,  ///< largest discrete turning on the log-log points
};

struct CornerResult {
    std::size_t index = 0;  ///< position in the point list
    Eigen::Index kappa = 0;
    bool degenerate = false;
};

CornerResult lcurve_corner(const std::vector<LCurvePoint>& points, CornerMethod method = CornerMethod::pruning);

// ---------------------------------------------------------------------------
// Optimal parameter (known truth)
// ---------------------------------------------------------------------------

enum class ErrorMetric { w_norm, grid_l2, grid_max };

struct BestKappa {
    Eigen::Index kappa = 0;
    /// errors[k - 1] is the error at kappa = k.
    std::vector<double> errors;
};

/// Grid-metric sweep given eta_j on the grid (value_matrix) and the truth there.
BestKappa kappa_best_grid(const TeigExpansion& teig, const RieszBasis& basis, const Eigen::MatrixXd& values,
                          const std::vector<double>& grid, const std::vector<double>& truth, ErrorMetric metric);

/// W-norm sweep ||L (c_ref - c^(kappa))|| against reference coefficients.
BestKappa kappa_best_wnorm(const TeigExpansion& teig, const Eigen::VectorXd& c_ref);

/// Convenience wrapper building a uniform grid of `grid_points` on [a, b].
/// The w_norm metric uses the full coefficients of `exact` as reference.
BestKappa kappa_best(const TeigExpansion& teig, const RieszBasis& basis, const RealFunction& truth,
                     ErrorMetric metric, int grid_points = 1000,
                     const std::optional<Eigen::VectorXd>& exact = std::nullopt);

// ---------------------------------------------------------------------------

struct ParamSelectionReport {
    std::optional<Eigen::Index> kappa_d;
    std::optional<Eigen::Index> kappa_lc;
    std::optional<Eigen::Index> kappa_best;
    double tau = 0.0;
    bool discrepancy_satisfied = true;
    bool corner_degenerate = false;
    LCurve lcurve;
    std::vector<std::pair<Eigen::Index, double>> discrepancy_trace;
};

nlohmann::json to_json(const ParamSelectionReport& report);
/// "kappa,log_residual,log_norm" with 17 significant digits.
std::string lcurve_csv(const LCurve& curve);

}  // namespace fredholm
