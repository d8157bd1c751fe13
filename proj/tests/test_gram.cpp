#include "fredholm/errors.hpp"
#include "fredholm/gram.hpp"
#include "fredholm/problems.hpp"

#include <doctest.h>

#include <cmath>

using namespace fredholm;

TEST_CASE("cutoff rule")
{
    CHECK(positivity_cutoff(Eigen::Vector3d(3.0, 2.0, 1.0)) == 3);
    CHECK(positivity_cutoff(Eigen::Vector3d(1.0, 1e-20, -1e-18)) == 2);
    CHECK_THROWS_AS(positivity_cutoff(Eigen::Vector2d(0.0, -1.0)), DegenerateProblem);
    CutoffPolicy rel;
    rel.relative = 1e-10;
    CHECK(positivity_cutoff(Eigen::Vector3d(1.0, 1e-9, 1e-12), rel) == 2);
}

TEST_CASE("small factorizations")
{
    const GramFactorization id = spectral_factorize(Eigen::MatrixXd::Identity(4, 4));
    CHECK(id.cutoff == 4);
    CHECK((id.eigenvalues - Eigen::VectorXd::Ones(4)).norm() == 0.0);

    const GramFactorization d = spectral_factorize(Eigen::Vector3d(2.0, 3.0, -1.0).asDiagonal().toDenseMatrix());
    CHECK(d.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(d.eigenvalues[2] == doctest::Approx(-1.0));
    CHECK(d.cutoff == 2);
    CHECK(d.nonpositive_tail);
    // sign convention: largest component positive
    for (Eigen::Index l = 0; l < 3; ++l) {
        Eigen::Index k;
        d.eigenvectors.col(l).cwiseAbs().maxCoeff(&k);
        CHECK(d.eigenvectors(k, l) > 0.0);
    }
}

TEST_CASE("single representer")
{
    ProblemSpec ps = *test_problem_1(2);
    ps.equations.resize(1);
    ps.equations[0].nodes = {0.5};
    ps.rhs_exact.reset();
    auto p = std::make_shared<const ProblemSpec>(ps);
    const RieszBasis basis = build_basis(p);
    const Eigen::MatrixXd g = assemble_gram(basis);
    REQUIRE(g.rows() == 1);
    CHECK(g(0, 0) > 0.0);
    const double direct = integrate([&](double z) { return std::pow(basis.eval_second(0, z), 2); }, 0.0, 1.0);
    CHECK(std::abs(g(0, 0) - direct) <= 1e-13 * direct);
}

TEST_CASE("tp1 Gram matrix")
{
    auto ps = test_problem_1(5);
    const RieszBasis basis = build_basis(ps);
    const Eigen::MatrixXd g = assemble_gram(basis);
    CHECK(g == g.transpose());

    // cross-block entries against direct inner products
    for (auto [p, q] : {std::pair{0, 5}, std::pair{2, 8}, std::pair{4, 9}}) {
        const double direct =
            integrate([&](double z) { return basis.eval_second(p, z) * basis.eval_second(q, z); }, 0.0, 1.0);
        CHECK(std::abs(g(p, q) - direct) <= 1e-12 * std::abs(direct));
    }

    const GramFactorization fac = spectral_factorize(g);
    CHECK(reconstruction_error(fac) <= 1e-12);
    CHECK(fac.eigenvalues[fac.cutoff - 1] > 0.0);
    if (fac.cutoff < fac.size()) CHECK(fac.eigenvalues[fac.cutoff] <= 0.0);
    // The first equation's representers are all multiples of x, so the exact
    // rank is 6; how many round-off eigenvalues come out positive varies.
    CHECK(fac.cutoff >= 6);
    CHECK(fac.cutoff <= 8);
}

TEST_CASE("tp1 n=10 is severely ill-conditioned")
{
    const GramFactorization fac = spectral_factorize(assemble_gram(build_basis(test_problem_1(10))));
    CHECK(fac.cond_estimate >= 1e15);
}
