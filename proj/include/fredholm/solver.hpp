#pragma once

#include "fredholm/gram.hpp"
#include "fredholm/riesz.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fredholm {

/// Shifted data in block order (the right-hand side of G c = g).
struct DataVector {
    enum class Kind { exact, noisy };

    Eigen::VectorXd values;
    Kind kind = Kind::exact;
    std::optional<double> noise_norm;

    Eigen::Index size() const { return values.size(); }
};

/// Truncated eigendecomposition of G c = g. The projections U^T g are formed
/// once; every quantity for any kappa is read off them.
class TeigExpansion {
public:
    TeigExpansion(const GramFactorization& fac, const Eigen::VectorXd& g);

    const GramFactorization& factorization() const { return *fac_; }
    const Eigen::VectorXd& projections() const { return proj_; }
    Eigen::Index cutoff() const { return fac_->cutoff; }

    /// c^(kappa) = sum_{l <= kappa} (u_l^T g / lambda_l) u_l, 1 <= kappa <= N.
    Eigen::VectorXd coefficients(Eigen::Index kappa) const;
    /// ||G c^(kappa) - g||_2 from the tail sum over l > kappa, 0 <= kappa <= N_m.
    double residual(Eigen::Index kappa) const;
    /// ||f^(kappa)||_W = ||Lambda^{-1/2} U^T g|| over the first kappa terms.
    double w_norm(Eigen::Index kappa) const;

private:
    const GramFactorization* fac_;
    Eigen::VectorXd proj_;
};

Eigen::VectorXd coefficients_full(const GramFactorization& fac, const Eigen::VectorXd& g);
Eigen::VectorXd coefficients_teig(const GramFactorization& fac, const Eigen::VectorXd& g, Eigen::Index kappa);
/// U Lambda_kappa^+ U^T g as a matrix product; the summed form's cross-check.
Eigen::VectorXd coefficients_teig_pinv(const GramFactorization& fac, const Eigen::VectorXd& g,
                                       Eigen::Index kappa);

double residual_norm(const GramFactorization& fac, const Eigen::VectorXd& g, Eigen::Index kappa);
/// ||G c - g||_2 formed explicitly.
double residual_norm_direct(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c, const Eigen::VectorXd& g);

/// ||Lambda^{1/2} U^T c||_2 over the first N eigenpairs.
double w_norm(const GramFactorization& fac, const Eigen::VectorXd& c);
/// sqrt(c^T G c), clamped at zero.
double w_norm_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c);

/// f(t) = sum_j c_j eta_j(t) + gamma(t).
std::vector<double> evaluate_solution(const RieszBasis& basis, const Eigen::VectorXd& c,
                                      const std::vector<double>& grid);
/// Same, reusing a precomputed value_matrix(grid).
std::vector<double> evaluate_solution(const RieszBasis& basis, const Eigen::MatrixXd& values,
                                      const Eigen::VectorXd& c, const std::vector<double>& grid);

/// Coefficients of the orthonormal function eta-hat_l = sum_j u_jl / sqrt(lambda_l) eta_j,
/// 1 <= l <= N.
Eigen::VectorXd orthonormal_coefficients(const GramFactorization& fac, Eigen::Index l);
double orthonormal_function(const GramFactorization& fac, const RieszBasis& basis, Eigen::Index l, double y);

/// (K_l f)(x_{l,i}) for every node by direct quadrature over [a, b].
Eigen::VectorXd apply_forward(const ProblemSpec& ps, const RealFunction& f,
                              const IntegrationConfig& cfg = {},
                              const std::vector<double>& breakpoints = {});

struct RegularizedSolution {
    Eigen::Index kappa = 0;
    Eigen::VectorXd coeffs;
    double w_norm = 0.0;
    double residual = 0.0;
};

RegularizedSolution regularized_solution(const TeigExpansion& teig, Eigen::Index kappa);

/// n points a, a + h, ..., b with the last point exactly b.
std::vector<double> uniform_grid(const Interval& iv, int points);

struct ErrorNorms {
    double max = 0.0;
    /// sqrt((b - a) / M * sum e_i^2), a discrete L2 norm.
    double l2 = 0.0;
};

ErrorNorms grid_errors(const std::vector<double>& approx, const std::vector<double>& exact, const Interval& iv);

nlohmann::json to_json(const RegularizedSolution& sol, const std::vector<double>& grid,
                       const std::vector<double>& values);

}  // namespace fredholm
