#pragma once

#include "fredholm/riesz.hpp"

#include <Eigen/Core>

namespace fredholm {

/// Spectral factorization G = U diag(lambda) U^T with eigenvalues in
/// decreasing order and the positivity cutoff N (number of leading positive
/// eigenvalues under the chosen policy).
struct GramFactorization {
    Eigen::MatrixXd gram;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    Eigen::Index cutoff = 0;
    /// lambda_1 / |lambda_{N_m}|.
    double cond_estimate = 0.0;
    /// True when lambda_{N_m} <= 0, so cond_estimate is not a true condition number.
    bool nonpositive_tail = false;

    Eigen::Index size() const { return eigenvalues.size(); }
};

struct CutoffPolicy {
    /// Keep lambda_N > relative * lambda_1. Zero keeps every positive eigenvalue.
    double relative = 0.0;
};

/// Entry (p, q) = int eta''_p eta''_q on the basis grid, then (G + G^T) / 2.
Eigen::MatrixXd assemble_gram(const RieszBasis& basis);

/// Symmetric eigendecomposition, eigenvalues sorted decreasing, each
/// eigenvector's largest-magnitude component made positive.
GramFactorization spectral_factorize(const Eigen::MatrixXd& gram, const CutoffPolicy& policy = {});

/// Largest N with lambda_N > threshold for a decreasing sequence.
/// Throws DegenerateProblem when lambda_1 is not positive.
Eigen::Index positivity_cutoff(const Eigen::VectorXd& eigenvalues, const CutoffPolicy& policy = {});

/// ||G - U Lambda U^T||_F / ||G||_F.
double reconstruction_error(const GramFactorization& fac);

}  // namespace fredholm
