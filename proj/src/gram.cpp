#include "fredholm/gram.hpp"

#include "fredholm/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace fredholm {

Eigen::MatrixXd assemble_gram(const RieszBasis& basis)
{
    const Eigen::MatrixXd& s = basis.second_samples();
    const QuadratureGrid& grid = basis.grid();
    const Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(), static_cast<Eigen::Index>(grid.size()));

    Eigen::MatrixXd g = s * w.asDiagonal() * s.transpose();
    if (!g.allFinite()) throw NumericError("assemble_gram: non-finite Gram entry");
    return 0.5 * (g + g.transpose());
}

Eigen::Index positivity_cutoff(const Eigen::VectorXd& eigenvalues, const CutoffPolicy& policy)
{
    if (eigenvalues.size() == 0 || !(eigenvalues[0] > 0.0))
        throw DegenerateProblem("positivity_cutoff: largest eigenvalue is not positive");
    const double threshold = policy.relative * eigenvalues[0];
    Eigen::Index n = 0;
    while (n < eigenvalues.size() && eigenvalues[n] > threshold) ++n;
    return n;
}

GramFactorization spectral_factorize(const Eigen::MatrixXd& gram, const CutoffPolicy& policy)
{
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        throw InvalidArgument("spectral_factorize: matrix must be square and non-empty");
    if (!gram.allFinite()) throw InvalidArgument("spectral_factorize: non-finite matrix entry");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw NumericError("spectral_factorize: eigensolver did not converge");

    const Eigen::Index n = gram.rows();
    GramFactorization fac;
    fac.gram = gram;
    fac.eigenvalues = solver.eigenvalues().reverse();
    fac.eigenvectors = solver.eigenvectors().rowwise().reverse();

    for (Eigen::Index l = 0; l < n; ++l) {
        Eigen::Index at = 0;
        fac.eigenvectors.col(l).cwiseAbs().maxCoeff(&at);
        if (fac.eigenvectors(at, l) < 0.0) fac.eigenvectors.col(l) *= -1.0;
    }

    fac.cutoff = positivity_cutoff(fac.eigenvalues, policy);
    const double last = fac.eigenvalues[n - 1];
    fac.nonpositive_tail = !(last > 0.0);
    fac.cond_estimate = last == 0.0 ? std::numeric_limits<double>::infinity()
                                    : fac.eigenvalues[0] / std::fabs(last);
    return fac;
}

double reconstruction_error(const GramFactorization& fac)
{
    const Eigen::MatrixXd rebuilt =
        fac.eigenvectors * fac.eigenvalues.asDiagonal() * fac.eigenvectors.transpose();
    return (fac.gram - rebuilt).norm() / fac.gram.norm();
}

}  // namespace fredholm
