#pragma once

#include "symbif/numeric.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbif::galerkin {

/// Real spherical harmonic label; m < 0 selects the sin(|m| phi) partner.
struct Mode {
  int k = 0;
  int m = 0;
  friend bool operator==(const Mode &, const Mode &) = default;
};

/// Orthonormal real spherical harmonics of degree <= K on the unit sphere,
/// sampled on a product Gauss-Legendre (in cos theta) x uniform (in phi)
/// grid that integrates spherical polynomials of degree <= quadrature_degree
/// exactly.
class GalerkinBasis {
 public:
  /// quadrature_degree defaults to 4K.
  explicit GalerkinBasis(int max_degree, std::optional<int> quadrature_degree = std::nullopt);

  int max_degree() const { return max_degree_; }
  int quadrature_degree() const { return quadrature_degree_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(modes_.size()); }
  const std::vector<Mode> &modes() const { return modes_; }
  Eigen::Index index_of(int k, int m) const;

  /// values()(q, j) = Y_j at node q.
  const Eigen::MatrixXd &values() const { return values_; }
  const Eigen::VectorXd &weights() const { return weights_; }
  const Eigen::VectorXd &theta() const { return theta_; }
  const Eigen::VectorXd &phi() const { return phi_; }
  /// k(k+1) for every mode.
  const Eigen::VectorXd &laplace_eigenvalues() const { return laplace_; }

  /// max |<Y_i, Y_j>_quadrature - delta_ij|.
  double orthonormality_error() const;

  /// Coefficients of u(phi - angle) given those of u, for one scalar field.
  Eigen::VectorXd rotate(const Eigen::Ref<const Eigen::VectorXd> &coeffs, double angle) const;

 private:
  int max_degree_;
  int quadrature_degree_;
  std::vector<Mode> modes_;
  Eigen::MatrixXd values_;
  Eigen::VectorXd weights_, theta_, phi_, laplace_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, Eigen::VectorXd &nodes, Eigen::VectorXd &weights);

/// h(u, lambda) with its u-gradient; the Hessian is optional (finite
/// differences of the gradient are used when it is absent).
struct Nonlinearity {
  using Scalar = std::function<double(std::span<const double> u, double lambda)>;
  using Gradient = std::function<void(std::span<const double> u, double lambda, std::span<double> out)>;
  using Hessian = std::function<void(std::span<const double> u, double lambda, Eigen::Ref<Eigen::MatrixXd> out)>;

  std::string name;
  Scalar h;
  Gradient grad;
  Hessian hessian;
  /// Polynomial degree of grad h in u; empty when not polynomial, which skips
  /// the quadrature exactness check.
  std::optional<int> gradient_degree;
  /// Growth exponent q with |grad h| <= C(1 + |u|^{q-1}).
  double growth_exponent = 2.0;

  /// h = -1/4 |u|^4.
  static Nonlinearity quartic();
  /// h = 0.
  static Nonlinearity linear();
};

/// Checks grad h(0) = 0, Hessian(0) = 0 and subcritical growth on a manifold
/// of dimension `dim`. Throws std::invalid_argument on violation.
void check_assumptions(const Nonlinearity &nl, int components, int dim = 2);

/// Galerkin problem for a_i Delta u_i = lambda u_i + d_{u_i} h on S^2 with
/// coefficient vector layout [component][mode].
class GalerkinSystem {
 public:
  /// Throws std::invalid_argument("quadrature underresolved") when the grid
  /// cannot integrate grad h(u) * Y exactly, and on a malformed a.
  GalerkinSystem(const GalerkinBasis &basis, Nonlinearity nl, std::vector<int> a);

  const GalerkinBasis &basis() const { return *basis_; }
  const Nonlinearity &nonlinearity() const { return nl_; }
  const std::vector<int> &a() const { return a_; }
  int components() const { return static_cast<int>(a_.size()); }
  Eigen::Index dimension() const { return basis_->size() * components(); }

  /// Discrete functional: -1/2 sum a_i lambda_k c^2 - lambda/2 |c|^2 - sum_q w_q h(u_q).
  double functional(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const;
  /// Gradient of functional() in c.
  Eigen::VectorXd residual(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const;
  /// d residual / d c.
  Eigen::MatrixXd jacobian(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const;
  /// d residual / d lambda.
  Eigen::VectorXd lambda_derivative(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const;

  /// sqrt(sum (lambda_k + 1) c^2), the H^1 norm of u.
  double h1_norm(const Eigen::Ref<const Eigen::VectorXd> &c) const;
  /// u_i at every node, as a nodes x components matrix.
  Eigen::MatrixXd field(const Eigen::Ref<const Eigen::VectorXd> &c) const;
  /// Largest area-weighted variance of a component over the sphere.
  double max_component_variance(const Eigen::Ref<const Eigen::VectorXd> &c) const;

 private:
  void check_size(const Eigen::Ref<const Eigen::VectorXd> &c) const;
  /// B^T (w * grad h(u)) per component.
  Eigen::VectorXd nonlinear_projection(const Eigen::MatrixXd &u, double lambda) const;

  const GalerkinBasis *basis_;
  Nonlinearity nl_;
  std::vector<int> a_;
};

struct KernelMode {
  int component = 0;
  Mode mode;
  friend bool operator==(const KernelMode &, const KernelMode &) = default;
};

struct Crossing {
  Rational lambda;
  std::vector<KernelMode> kernel;
};

/// Parameters in [lo, hi] where a diagonal entry -a_i k(k+1) - lambda of the
/// trivial-branch linearization vanishes, k <= K, ascending.
std::vector<Crossing> trivial_branch_crossings(const GalerkinBasis &basis, std::span<const int> a,
                                               const Rational &lo, const Rational &hi);

/// Max relative error between central differences of functional() and
/// residual() over `samples` random coordinates. The error is measured as
/// |fd - g| / max(1, |g|).
double gradient_check(const GalerkinSystem &system, const Eigen::Ref<const Eigen::VectorXd> &c, double lambda,
                      double epsilon, int samples = 50, std::uint64_t seed = 0);

/// Subspace the continuation is restricted to: allowed components and
/// azimuthal labels m (signed as in Mode). Empty sets mean "all".
struct IsotropyRestriction {
  std::set<int> components;
  std::set<int> azimuthal;

  static IsotropyRestriction none() { return {}; }
  /// m = 0 modes only: the fixed subspace of the rotation torus.
  static IsotropyRestriction axisymmetric() { return {{}, {0}}; }
  bool allows(int component, const Mode &mode) const;
};

struct BranchState {
  Eigen::VectorXd coeffs;
  double lambda = 0;
  double arclength = 0;
  double h1_norm = 0;
};

enum class BranchOutcome { reached_target, returned_to_trivial, incomplete };
const char *to_string(BranchOutcome outcome);

struct ContinuationOptions {
  double step = 0.05;
  double min_step = 1e-4;
  double max_step = 0.2;
  /// Step size at which a failing corrector is declared divergent.
  double failure_step = 1e-6;
  /// Upper bound on the number of recorded states, the onset point included.
  int max_steps = 500;
  double target_norm = 1.0;
  double onset_amplitude = 1e-3;
  double newton_tol = 1e-10;
  int max_newton = 25;
  IsotropyRestriction isotropy = IsotropyRestriction::axisymmetric();
};

struct BranchResult {
  std::vector<BranchState> states;
  BranchOutcome outcome = BranchOutcome::incomplete;
};

/// Raised when the corrector fails even at the smallest step; carries the
/// states accepted so far.
class ContinuationError : public std::runtime_error {
 public:
  ContinuationError(const std::string &what, std::vector<BranchState> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<BranchState> &partial() const { return partial_; }

 private:
  std::vector<BranchState> partial_;
};

/// Pseudo-arclength continuation of the branch bifurcating at `crossing`.
/// Throws std::invalid_argument("not a crossing") if crossing is not a
/// trivial-branch crossing and std::invalid_argument("apply isotropy
/// restriction") unless the restricted kernel is one-dimensional.
BranchResult continue_branch(const GalerkinSystem &system, const Rational &crossing,
                             const ContinuationOptions &opts = {});

}  // namespace symbif::galerkin
