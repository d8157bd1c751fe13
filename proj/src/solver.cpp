#include "fredholm/solver.hpp"

#include "fredholm/errors.hpp"

#include <cmath>

namespace fredholm {

namespace {

void check_length(const GramFactorization& fac, Eigen::Index n, const char* what)
{
    if (n != fac.size()) throw InvalidArgument(std::string(what) + ": vector length does not match the Gram matrix");
}

void check_kappa(const GramFactorization& fac, Eigen::Index kappa)
{
    if (kappa < 1 || kappa > fac.cutoff)
        throw InvalidArgument("truncation index must satisfy 1 <= kappa <= N");
}

}  // namespace

TeigExpansion::TeigExpansion(const GramFactorization& fac, const Eigen::VectorXd& g) : fac_(&fac)
{
    check_length(fac, g.size(), "TeigExpansion");
    proj_ = fac.eigenvectors.transpose() * g;
}

Eigen::VectorXd TeigExpansion::coefficients(Eigen::Index kappa) const
{
    check_kappa(*fac_, kappa);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(fac_->size());
    for (Eigen::Index l = 0; l < kappa; ++l)
        c += (proj_[l] / fac_->eigenvalues[l]) * fac_->eigenvectors.col(l);
    return c;
}

double TeigExpansion::residual(Eigen::Index kappa) const
{
    if (kappa < 0 || kappa > fac_->size()) throw InvalidArgument("residual: kappa out of range");
    return proj_.tail(fac_->size() - kappa).norm();
}

double TeigExpansion::w_norm(Eigen::Index kappa) const
{
    check_kappa(*fac_, kappa);
    double sum = 0.0;
    for (Eigen::Index l = 0; l < kappa; ++l) sum += proj_[l] * proj_[l] / fac_->eigenvalues[l];
    return std::sqrt(sum);
}

Eigen::VectorXd coefficients_full(const GramFactorization& fac, const Eigen::VectorXd& g)
{
    return TeigExpansion(fac, g).coefficients(fac.cutoff);
}

Eigen::VectorXd coefficients_teig(const GramFactorization& fac, const Eigen::VectorXd& g, Eigen::Index kappa)
{
    return TeigExpansion(fac, g).coefficients(kappa);
}

Eigen::VectorXd coefficients_teig_pinv(const GramFactorization& fac, const Eigen::VectorXd& g,
                                       Eigen::Index kappa)
{
    check_length(fac, g.size(), "coefficients_teig_pinv");
    check_kappa(fac, kappa);
    Eigen::VectorXd pinv = Eigen::VectorXd::Zero(fac.size());
    for (Eigen::Index l = 0; l < kappa; ++l) pinv[l] = 1.0 / fac.eigenvalues[l];
    return fac.eigenvectors * (pinv.asDiagonal() * (fac.eigenvectors.transpose() * g));
}

double residual_norm(const GramFactorization& fac, const Eigen::VectorXd& g, Eigen::Index kappa)
{
    return TeigExpansion(fac, g).residual(kappa);
}

double residual_norm_direct(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c, const Eigen::VectorXd& g)
{
    if (gram.cols() != c.size() || gram.rows() != g.size())
        throw InvalidArgument("residual_norm_direct: dimension mismatch");
    return (gram * c - g).norm();
}

double w_norm(const GramFactorization& fac, const Eigen::VectorXd& c)
{
    check_length(fac, c.size(), "w_norm");
    const Eigen::Index n = fac.cutoff;
    const Eigen::VectorXd proj = fac.eigenvectors.leftCols(n).transpose() * c;
    return (fac.eigenvalues.head(n).cwiseSqrt().asDiagonal() * proj).norm();
}

double w_norm_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& c)
{
    if (gram.cols() != c.size()) throw InvalidArgument("w_norm_gram: dimension mismatch");
    return std::sqrt(std::max(0.0, c.dot(gram * c)));
}

std::vector<double> evaluate_solution(const RieszBasis& basis, const Eigen::MatrixXd& values,
                                      const Eigen::VectorXd& c, const std::vector<double>& grid)
{
    if (c.size() != basis.size()) throw InvalidArgument("evaluate_solution: coefficient length mismatch");
    if (values.rows() != basis.size() || values.cols() != static_cast<Eigen::Index>(grid.size()))
        throw InvalidArgument("evaluate_solution: value matrix does not match grid");
    const ProblemSpec& ps = basis.problem();
    const Eigen::VectorXd combined = values.transpose() * c;
    std::vector<double> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        out[k] = combined[static_cast<Eigen::Index>(k)] + boundary_lift(grid[k], ps.iv, ps.bv);
    return out;
}

std::vector<double> evaluate_solution(const RieszBasis& basis, const Eigen::VectorXd& c,
                                      const std::vector<double>& grid)
{
    for (double t : grid) basis.problem().iv.clamp(t);
    return evaluate_solution(basis, basis.value_matrix(grid), c, grid);
}

Eigen::VectorXd orthonormal_coefficients(const GramFactorization& fac, Eigen::Index l)
{
    if (l < 1 || l > fac.cutoff) throw InvalidArgument("orthonormal_function: index must satisfy 1 <= l <= N");
    return fac.eigenvectors.col(l - 1) / std::sqrt(fac.eigenvalues[l - 1]);
}

double orthonormal_function(const GramFactorization& fac, const RieszBasis& basis, Eigen::Index l, double y)
{
    const Eigen::VectorXd coeffs = orthonormal_coefficients(fac, l);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) sum += coeffs[j] * basis.eval_value(j, y);
    return sum;
}

Eigen::VectorXd apply_forward(const ProblemSpec& ps, const RealFunction& f, const IntegrationConfig& cfg,
                              const std::vector<double>& breakpoints)
{
    Eigen::VectorXd out(ps.total_nodes());
    Eigen::Index j = 0;
    for (const Equation& eq : ps.equations) {
        std::vector<double> cuts = breakpoints;
        cuts.insert(cuts.end(), eq.kernel_breakpoints.begin(), eq.kernel_breakpoints.end());
        for (double x : eq.nodes) {
            const auto integrand = [&](double t) { return eq.kernel(x, t) * f(t); };
            out[j++] = integrate_split(integrand, ps.iv.a, ps.iv.b, cuts, cfg);
        }
    }
    return out;
}

RegularizedSolution regularized_solution(const TeigExpansion& teig, Eigen::Index kappa)
{
    RegularizedSolution sol;
    sol.kappa = kappa;
    sol.coeffs = teig.coefficients(kappa);
    sol.w_norm = teig.w_norm(kappa);
    sol.residual = teig.residual(kappa);
    return sol;
}

std::vector<double> uniform_grid(const Interval& iv, int points)
{
    if (points < 2) throw InvalidArgument("uniform_grid: need at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double h = iv.length() / (points - 1);
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = iv.a + k * h;
    grid.back() = iv.b;
    return grid;
}

ErrorNorms grid_errors(const std::vector<double>& approx, const std::vector<double>& exact, const Interval& iv)
{
    if (approx.size() != exact.size() || approx.empty())
        throw InvalidArgument("grid_errors: size mismatch");
    ErrorNorms e;
    double sq = 0.0;
    for (std::size_t k = 0; k < approx.size(); ++k) {
        const double d = std::fabs(approx[k] - exact[k]);
        e.max = std::max(e.max, d);
        sq += d * d;
    }
    e.l2 = std::sqrt(iv.length() / static_cast<double>(approx.size()) * sq);
    return e;
}

nlohmann::json to_json(const RegularizedSolution& sol, const std::vector<double>& grid,
                       const std::vector<double>& values)
{
    nlohmann::json j;
    j["kappa"] = sol.kappa;
    j["coeffs"] = std::vector<double>(sol.coeffs.data(), sol.coeffs.data() + sol.coeffs.size());
    j["w_norm"] = sol.w_norm;
    j["residual"] = sol.residual;
    j["grid"] = grid;
    j["values"] = values;
    return j;
}

}  // namespace fredholm
