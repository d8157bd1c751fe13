#pragma once

#include "fredholm/riesz.hpp"

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fredholm {

/// int_0^1 x/(t+1) f = x(log 4 - 1/2), int_0^1 cos(xt) f = 2(x cos x + (x^2-1) sin x)/x^3,
/// f(0) = 1, f(1) = 2, exact solution t^2 + 1. Nodes 0.1 + 0.9 (i-1)/(n-1).
std::shared_ptr<const ProblemSpec> test_problem_1(int n);

/// Baart's equation int_0^pi e^{x cos t} f = 2 sinh(x)/x coupled with
/// int_0^pi (xt + e^{xt}) f = pi x + (1 + e^{pi x})/(1 + x^2), exact solution sin t.
/// Nodes 0.1 + (pi/2 - 0.1)(i-1)/(n-1). Only the second equation has closed forms.
std::shared_ptr<const ProblemSpec> test_problem_2(int n);

// ---------------------------------------------------------------------------
// Ground conductivity meter (two coil orientations)
// ---------------------------------------------------------------------------

/// Vertical-coil sensitivity 4z / (4z^2 + 1)^{3/2}.
double fdem_kernel_vertical(double z);
/// Horizontal-coil sensitivity 2 - 4z / (4z^2 + 1)^{1/2}.
double fdem_kernel_horizontal(double z);
/// sqrt(4 (z + h)^2 + 1).
double fdem_theta(double z, double h);

struct TruthProfile {
    std::string name;
    std::function<double(double)> eval;
    /// sigma(0) and sigma(z0) suggested as boundary values.
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> breakpoints;
};

/// sigma1 (smooth bump), sigma2 (piecewise linear/exponential), sigma3 (step).
TruthProfile truth_profile(const std::string& name);

struct FdemConfig {
    double z0 = 4.0;
    /// Boundary values; default to the truth profile's.
    std::optional<double> alpha;
    std::optional<double> beta;
    int n = 10;
    /// Heights in meters; empty means 0.1 + 0.9 (i-1)/(n-1).
    std::vector<double> heights;
};

/// Truncated two-equation FDEM system on [0, z0]. Exact data are computed by
/// quadrature of the truth over [0, z0] plus the closed-form tails for
/// sigma = beta below z0.
std::shared_ptr<const ProblemSpec> fdem_problem(const FdemConfig& cfg, const TruthProfile& truth);

/// Built-in problem by name: tp1, tp2, fdem:sigma1, fdem:sigma2, fdem:sigma3.
std::shared_ptr<const ProblemSpec> make_problem(const std::string& name, int n, double z0 = 4.0);

// ---------------------------------------------------------------------------
// Box-function Galerkin baseline for the second test problem
// ---------------------------------------------------------------------------

struct GalerkinResult {
    int n = 0;
    /// 2n x n, both equations stacked.
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    Eigen::VectorXd solution;
    Eigen::Index rank = 0;
    bool rank_deficient = false;

    /// Piecewise-constant solution on [0, pi].
    double value(double t) const;
};

/// Orthonormal box functions on [0, pi/2] (x) and [0, pi] (t), discretized the
/// way the classic `baart` generator does: Gauss-Legendre in x, Simpson's rule
/// in t for the matrix and Simpson's rule in x for the data. Solved by
/// minimum-norm least squares.
GalerkinResult galerkin_baseline(int n);

}  // namespace fredholm
