#include "symbif/galerkin.hpp"
#include "symbif/bifurcation.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace symbif;
using namespace symbif::galerkin;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXd random_state(Eigen::Index n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, scale);
  Eigen::VectorXd c(n);
  for (Eigen::Index j = 0; j < n; ++j) c(j) = d(rng);
  return c;
}

std::vector<Rational> crossing_values(const std::vector<Crossing> &cs) {
  std::vector<Rational> out;
  for (const auto &c : cs) out.push_back(c.lambda);
  return out;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  Eigen::VectorXd x, w;
  gauss_legendre(9, x, w);
  for (int k = 0; k <= 17; ++k) {
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(w.dot(x.array().pow(k).matrix()) == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("basis is orthonormal and sized (K+1)^2") {
  for (int K : {0, 1, 4, 8, 12}) {
    const GalerkinBasis basis(K);
    CHECK(basis.size() == (K + 1) * (K + 1));
    CHECK(basis.orthonormality_error() <= 1e-12);
    CHECK(basis.weights().sum() == doctest::Approx(4 * pi).epsilon(1e-14));
  }
  CHECK_THROWS_WITH_AS(GalerkinBasis(8, 10), "quadrature underresolved", std::invalid_argument);
}

TEST_CASE("low-degree harmonics match their closed forms") {
  const GalerkinBasis basis(3);
  for (Eigen::Index q = 0; q < basis.values().rows(); q += 7) {
    const double th = basis.theta()(q), ph = basis.phi()(q);
    CHECK(basis.values()(q, basis.index_of(0, 0)) == doctest::Approx(1 / std::sqrt(4 * pi)));
    CHECK(basis.values()(q, basis.index_of(1, 0)) == doctest::Approx(std::sqrt(3 / (4 * pi)) * std::cos(th)));
    CHECK(std::abs(basis.values()(q, basis.index_of(1, 1))) ==
          doctest::Approx(std::abs(std::sqrt(3 / (4 * pi)) * std::sin(th) * std::cos(ph))));
    CHECK(basis.values()(q, basis.index_of(2, 0)) ==
          doctest::Approx(std::sqrt(5 / (16 * pi)) * (3 * std::cos(th) * std::cos(th) - 1)));
  }
}

TEST_CASE("residual on simple states") {
  const GalerkinBasis basis(8);
  const GalerkinSystem quartic(basis, Nonlinearity::quartic(), {-1});
  CHECK(quartic.residual(Eigen::VectorXd::Zero(quartic.dimension()), 3.0).norm() == 0.0);

  const GalerkinSystem linear(basis, Nonlinearity::linear(), {-1});
  Eigen::VectorXd c = Eigen::VectorXd::Zero(linear.dimension());
  c(basis.index_of(1, 0)) = 0.7;
  CHECK(linear.residual(c, 2.0).norm() == 0.0);
  CHECK(linear.residual(c, 3.0)(basis.index_of(1, 0)) == doctest::Approx(-0.7));

  // u = eps * Y00 is constant; the cubic term integrates to eps^3 / (4 pi).
  const double eps = 0.3, lambda = 1.7;
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(quartic.dimension());
  c0(0) = eps;
  const Eigen::VectorXd r = quartic.residual(c0, lambda);
  CHECK(r(0) == doctest::Approx(-lambda * eps + eps * eps * eps / (4 * pi)).epsilon(1e-13));
  CHECK(r.tail(r.size() - 1).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(quartic.residual(Eigen::VectorXd::Zero(5), 0.0), std::invalid_argument);
}

TEST_CASE("quadrature resolution is checked against the nonlinearity") {
  const GalerkinBasis coarse(8, 24);
  CHECK_THROWS_WITH_AS(GalerkinSystem(coarse, Nonlinearity::quartic(), {-1}), "quadrature underresolved",
                       std::invalid_argument);
  CHECK_NOTHROW(GalerkinSystem(coarse, Nonlinearity::linear(), {-1}));
}

TEST_CASE("nonlinearity assumptions") {
  CHECK_NOTHROW(check_assumptions(Nonlinearity::quartic(), 2));
  Nonlinearity bad = Nonlinearity::linear();
  bad.grad = [](std::span<const double> u, double, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i];
  };
  bad.hessian = {};
  CHECK_THROWS_AS(check_assumptions(bad, 1), std::invalid_argument);
  Nonlinearity steep = Nonlinearity::quartic();
  steep.growth_exponent = 7;
  CHECK_THROWS_AS(check_assumptions(steep, 1, 3), std::invalid_argument);
  CHECK_NOTHROW(check_assumptions(steep, 1, 2));
}

TEST_CASE("residual is the gradient of the discrete functional") {
  const GalerkinBasis basis(8);
  for (const std::vector<int> &a : {std::vector<int>{-1}, std::vector<int>{1, -1}}) {
    const GalerkinSystem sys(basis, Nonlinearity::quartic(), a);
    const Eigen::VectorXd c = random_state(sys.dimension(), 11, 0.2);
    CHECK(gradient_check(sys, c, 2.3, 1e-5, 50, 3) <= 1e-6);
    CHECK(gradient_check(sys, Eigen::VectorXd::Zero(sys.dimension()), 2.3, 1e-5) == 0.0);
  }
  const GalerkinSystem lin(basis, Nonlinearity::linear(), {-1});
  // Both sides are linear; what remains is the roundoff of the difference quotient.
  const Eigen::VectorXd cl = random_state(lin.dimension(), 5, 0.3);
  const double roundoff = 10 * std::numeric_limits<double>::epsilon() * (1 + std::abs(lin.functional(cl, -1.0))) / 1e-5;
  CHECK(gradient_check(lin, cl, -1.0, 1e-5) <= roundoff);
  CHECK_THROWS_AS(gradient_check(lin, Eigen::VectorXd::Zero(lin.dimension()), 0.0, 1e-2), std::invalid_argument);
}

TEST_CASE("analytic Jacobian agrees with differences of the residual") {
  const GalerkinBasis basis(4);
  const GalerkinSystem sys(basis, Nonlinearity::quartic(), {-1, 1});
  const Eigen::VectorXd c = random_state(sys.dimension(), 2, 0.3);
  const Eigen::MatrixXd J = sys.jacobian(c, 1.5);
  const double h = 1e-6;
  for (Eigen::Index j = 0; j < sys.dimension(); j += 5) {
    Eigen::VectorXd cp = c, cm = c;
    cp(j) += h;
    cm(j) -= h;
    const Eigen::VectorXd col = (sys.residual(cp, 1.5) - sys.residual(cm, 1.5)) / (2 * h);
    CHECK((col - J.col(j)).norm() < 1e-7);
  }
  Nonlinearity no_hessian = Nonlinearity::quartic();
  no_hessian.hessian = {};
  const GalerkinSystem fd(basis, no_hessian, {-1, 1});
  CHECK((fd.jacobian(c, 1.5) - J).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((sys.lambda_derivative(c, 1.5) + c).norm() == 0.0);
}

TEST_CASE("residual is equivariant under rotation about the axis") {
  const GalerkinBasis basis(8);
  const GalerkinSystem sys(basis, Nonlinearity::quartic(), {-1, 1});
  const Eigen::Index nb = basis.size();
  auto rotate_all = [&](const Eigen::VectorXd &c, double angle) {
    Eigen::VectorXd out(c.size());
    for (int i = 0; i < sys.components(); ++i) out.segment(i * nb, nb) = basis.rotate(c.segment(i * nb, nb), angle);
    return out;
  };
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::VectorXd c = random_state(sys.dimension(), seed, 0.4);
    const double angle = 0.37 + seed;
    const Eigen::VectorXd lhs = sys.residual(rotate_all(c, angle), 1.1);
    const Eigen::VectorXd rhs = rotate_all(sys.residual(c, 1.1), angle);
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
  }
}

TEST_CASE("trivial-branch crossings") {
  const GalerkinBasis basis(8);
  const int minus[] = {-1}, plus[] = {1}, two[] = {-1, -1};
  CHECK(crossing_values(trivial_branch_crossings(basis, minus, 0, 7)) ==
        std::vector<Rational>{Rational(0), Rational(2), Rational(6)});
  CHECK(crossing_values(trivial_branch_crossings(basis, plus, -7, 0)) ==
        std::vector<Rational>{Rational(-6), Rational(-2), Rational(0)});
  const auto at2 = trivial_branch_crossings(basis, two, 2, 2);
  REQUIRE(at2.size() == 1);
  CHECK(at2[0].kernel.size() == 6);
  for (const auto &c : trivial_branch_crossings(basis, two, Rational(1, 2), 72))
    for (const auto &km : c.kernel) CHECK(km.mode.k > 0);
}

TEST_CASE("crossings agree with the bifurcation levels on S^2") {
  const GalerkinBasis basis(8);
  const auto s2 = SymmetricSpaceData::sphere(2);
  for (int p = 1; p <= 3; ++p)
    for (int mask = 0; mask < (1 << p); ++mask) {
      std::vector<int> a;
      for (int i = 0; i < p; ++i) a.push_back(mask & (1 << i) ? 1 : -1);
      const auto sig = SystemSignature::from_coefficients(a);
      for (long cutoff : {0L, 5L, 30L, 72L}) {
        std::vector<Rational> expected;
        for (const auto &l : bifurcation_levels(s2, sig, cutoff)) expected.push_back(l.lambda0);
        const auto got = trivial_branch_crossings(basis, a, -cutoff, cutoff);
        CHECK(crossing_values(got) == expected);
        for (const auto &l : bifurcation_levels(s2, sig, cutoff))
          for (const auto &c : got)
            if (c.lambda == l.lambda0) CHECK(l.kernel_dim == static_cast<long>(c.kernel.size()));
      }
    }
}

TEST_CASE("continuation from lambda = 2 follows the reduced equation and grows") {
  const GalerkinBasis basis(8);
  const GalerkinSystem sys(basis, Nonlinearity::quartic(), {-1});
  ContinuationOptions opts;
  const auto result = continue_branch(sys, 2, opts);
  CHECK(result.outcome == BranchOutcome::reached_target);
  CHECK(static_cast<int>(result.states.size()) <= 500);
  CHECK(result.states.back().h1_norm >= 1.0);

  // One-mode reduction: (2 - lambda) t + gamma t^3 = 0, gamma = int Y10^4 = 9/(20 pi).
  const double gamma = 9.0 / (20.0 * pi);
  const auto &onset = result.states.front();
  const double t0 = onset.coeffs(basis.index_of(1, 0));
  CHECK(t0 == doctest::Approx(1e-3));
  CHECK((onset.lambda - 2) / (t0 * t0) == doctest::Approx(gamma).epsilon(1e-3));

  for (const auto &s : result.states) {
    CHECK(std::abs(sys.h1_norm(s.coeffs) - s.h1_norm) <= 1e-12);
    CHECK(sys.max_component_variance(s.coeffs) > 1e-8 * s.h1_norm * s.h1_norm);
    CHECK(sys.residual(s.coeffs, s.lambda).norm() < 1e-9);
    CHECK(s.lambda > 2);
    for (Eigen::Index j = 0; j < basis.size(); ++j)
      if (basis.modes()[j].m != 0) CHECK(s.coeffs(j) == 0.0);
  }
  for (std::size_t i = 1; i < result.states.size(); ++i)
    CHECK(result.states[i].arclength > result.states[i - 1].arclength);
}

TEST_CASE("continuation along constants from lambda = 0") {
  const GalerkinBasis basis(6);
  const GalerkinSystem sys(basis, Nonlinearity::quartic(), {-1});
  ContinuationOptions opts;
  opts.target_norm = 2.0;
  const auto result = continue_branch(sys, 0, opts);
  CHECK(result.outcome == BranchOutcome::reached_target);
  for (const auto &s : result.states) {
    const double c = s.coeffs(0);
    // -lambda c + c^3 / (4 pi) = 0 up to the corrector tolerance.
    CHECK(std::abs(s.lambda - c * c / (4 * pi)) <= opts.newton_tol / std::abs(c));
    CHECK(s.coeffs.tail(s.coeffs.size() - 1).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("continuation errors and budgets") {
  const GalerkinBasis basis(6);
  const GalerkinSystem sys(basis, Nonlinearity::quartic(), {-1});
  CHECK_THROWS_WITH_AS(continue_branch(sys, 3), "not a crossing", std::invalid_argument);
  ContinuationOptions open;
  open.isotropy = IsotropyRestriction::none();
  CHECK_THROWS_WITH_AS(continue_branch(sys, 2, open), "apply isotropy restriction", std::invalid_argument);

  ContinuationOptions one;
  one.max_steps = 1;
  const auto r = continue_branch(sys, 2, one);
  CHECK(r.outcome == BranchOutcome::incomplete);
  CHECK(r.states.size() == 1);

  ContinuationOptions hopeless;
  hopeless.newton_tol = 0;
  hopeless.max_newton = 3;
  CHECK_THROWS_AS(continue_branch(sys, 2, hopeless), ContinuationError);

  // Two equations: restricting to one component makes the kernel simple.
  const GalerkinSystem pair(basis, Nonlinearity::quartic(), {-1, -1});
  ContinuationOptions first = ContinuationOptions{};
  CHECK_THROWS_AS(continue_branch(pair, 2, first), std::invalid_argument);
  first.isotropy.components = {0};
  CHECK(continue_branch(pair, 2, first).outcome == BranchOutcome::reached_target);
}
