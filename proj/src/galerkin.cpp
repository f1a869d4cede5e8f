#include "symbif/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace symbif::galerkin {

namespace {
constexpr double pi = std::numbers::pi;
}

void gauss_legendre(int n, Eigen::VectorXd &nodes, Eigen::VectorXd &weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes(i) = x;
    weights(i) = 2 / ((1 - x * x) * dp * dp);
  }
}

GalerkinBasis::GalerkinBasis(int max_degree, std::optional<int> quadrature_degree)
    : max_degree_(max_degree), quadrature_degree_(quadrature_degree.value_or(4 * max_degree)) {
  if (max_degree_ < 0) throw std::invalid_argument("max_degree must be nonnegative");
  if (quadrature_degree_ < 2 * max_degree_) throw std::invalid_argument("quadrature underresolved");

  const int K = max_degree_;
  for (int k = 0; k <= K; ++k)
    for (int m = -k; m <= k; ++m) modes_.push_back({k, m});
  laplace_.resize(size());
  for (Eigen::Index j = 0; j < size(); ++j) laplace_(j) = modes_[j].k * (modes_[j].k + 1.0);

  const int n_theta = quadrature_degree_ / 2 + 1;
  const int n_phi = quadrature_degree_ + 1;
  Eigen::VectorXd x, wx;
  gauss_legendre(n_theta, x, wx);

  const Eigen::Index nodes = static_cast<Eigen::Index>(n_theta) * n_phi;
  values_.resize(nodes, size());
  weights_.resize(nodes);
  theta_.resize(nodes);
  phi_.resize(nodes);

  // Normalized associated Legendre functions, 2 pi int P(k,m)^2 dx = 1.
  Eigen::MatrixXd P(K + 1, K + 1);
  Eigen::Index q = 0;
  for (int it = 0; it < n_theta; ++it) {
    const double ct = x(it), st = std::sqrt(std::max(0.0, 1 - ct * ct));
    P.setZero();
    P(0, 0) = 1 / std::sqrt(4 * pi);
    for (int m = 1; m <= K; ++m) P(m, m) = std::sqrt((2 * m + 1) / (2.0 * m)) * st * P(m - 1, m - 1);
    for (int m = 0; m < K; ++m) P(m + 1, m) = std::sqrt(2 * m + 3.0) * ct * P(m, m);
    for (int m = 0; m <= K; ++m)
      for (int k = m + 2; k <= K; ++k) {
        const double a = std::sqrt((4.0 * k * k - 1) / (1.0 * k * k - m * m));
        const double b = std::sqrt(((k - 1.0) * (k - 1) - m * m) / (4.0 * (k - 1) * (k - 1) - 1));
        P(k, m) = a * (ct * P(k - 1, m) - b * P(k - 2, m));
      }
    for (int ip = 0; ip < n_phi; ++ip, ++q) {
      const double ph = 2 * pi * ip / n_phi;
      theta_(q) = std::acos(ct);
      phi_(q) = ph;
      weights_(q) = wx(it) * 2 * pi / n_phi;
      for (Eigen::Index j = 0; j < size(); ++j) {
        const auto [k, m] = modes_[j];
        if (m == 0) values_(q, j) = P(k, 0);
        else if (m > 0) values_(q, j) = std::sqrt(2.0) * P(k, m) * std::cos(m * ph);
        else values_(q, j) = std::sqrt(2.0) * P(k, -m) * std::sin(-m * ph);
      }
    }
  }
}

Eigen::Index GalerkinBasis::index_of(int k, int m) const {
  if (k < 0 || k > max_degree_ || std::abs(m) > k) throw std::out_of_range("mode outside basis");
  return static_cast<Eigen::Index>(k) * k + (m + k);
}

double GalerkinBasis::orthonormality_error() const {
  const Eigen::MatrixXd gram = values_.transpose() * weights_.asDiagonal() * values_;
  return (gram - Eigen::MatrixXd::Identity(size(), size())).cwiseAbs().maxCoeff();
}

Eigen::VectorXd GalerkinBasis::rotate(const Eigen::Ref<const Eigen::VectorXd> &coeffs, double angle) const {
  if (coeffs.size() != size()) throw std::invalid_argument("coefficient size mismatch");
  Eigen::VectorXd out = coeffs;
  for (int k = 0; k <= max_degree_; ++k)
    for (int m = 1; m <= k; ++m) {
      const Eigen::Index ic = index_of(k, m), is = index_of(k, -m);
      const double c = std::cos(m * angle), s = std::sin(m * angle);
      out(ic) = c * coeffs(ic) - s * coeffs(is);
      out(is) = s * coeffs(ic) + c * coeffs(is);
    }
  return out;
}

Nonlinearity Nonlinearity::quartic() {
  Nonlinearity nl;
  nl.name = "quartic";
  nl.h = [](std::span<const double> u, double) {
    double r2 = 0;
    for (double v : u) r2 += v * v;
    return -0.25 * r2 * r2;
  };
  nl.grad = [](std::span<const double> u, double, std::span<double> out) {
    double r2 = 0;
    for (double v : u) r2 += v * v;
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = -r2 * u[i];
  };
  nl.hessian = [](std::span<const double> u, double, Eigen::Ref<Eigen::MatrixXd> out) {
    double r2 = 0;
    for (double v : u) r2 += v * v;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t l = 0; l < u.size(); ++l)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = -2 * u[i] * u[l] - (i == l ? r2 : 0.0);
  };
  nl.gradient_degree = 3;
  nl.growth_exponent = 4;
  return nl;
}

Nonlinearity Nonlinearity::linear() {
  Nonlinearity nl;
  nl.name = "linear";
  nl.h = [](std::span<const double>, double) { return 0.0; };
  nl.grad = [](std::span<const double>, double, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
  nl.hessian = [](std::span<const double>, double, Eigen::Ref<Eigen::MatrixXd> out) { out.setZero(); };
  nl.gradient_degree = 0;
  nl.growth_exponent = 1;
  return nl;
}

namespace {

void eval_hessian(const Nonlinearity &nl, std::span<const double> u, double lambda, Eigen::Ref<Eigen::MatrixXd> out) {
  if (nl.hessian) {
    nl.hessian(u, lambda, out);
    return;
  }
  const std::size_t p = u.size();
  std::vector<double> up(u.begin(), u.end()), gp(p), gm(p);
  for (std::size_t l = 0; l < p; ++l) {
    const double eps = 1e-6 * std::max(1.0, std::abs(u[l]));
    up[l] = u[l] + eps;
    nl.grad(up, lambda, gp);
    up[l] = u[l] - eps;
    nl.grad(up, lambda, gm);
    up[l] = u[l];
    for (std::size_t i = 0; i < p; ++i)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = (gp[i] - gm[i]) / (2 * eps);
  }
}

}  // namespace

void check_assumptions(const Nonlinearity &nl, int components, int dim) {
  if (!nl.h || !nl.grad) throw std::invalid_argument("nonlinearity needs h and grad h");
  const std::vector<double> zero(static_cast<std::size_t>(components), 0.0);
  std::vector<double> g(zero.size());
  Eigen::MatrixXd hess(components, components);
  for (double lambda : {-3.0, 0.0, 2.5}) {
    nl.grad(zero, lambda, g);
    for (double v : g)
      if (std::abs(v) > 1e-12) throw std::invalid_argument("grad h(0, lambda) must vanish");
    eval_hessian(nl, zero, lambda, hess);
    if (hess.cwiseAbs().maxCoeff() > 1e-8) throw std::invalid_argument("h must be o(|u|^2) at u = 0");
  }
  if (dim > 2 && !(nl.growth_exponent < 2.0 * dim / (dim - 2)))
    throw std::invalid_argument("growth exponent is not subcritical");
  if (!std::isfinite(nl.growth_exponent)) throw std::invalid_argument("growth exponent must be finite");
}

GalerkinSystem::GalerkinSystem(const GalerkinBasis &basis, Nonlinearity nl, std::vector<int> a)
    : basis_(&basis), nl_(std::move(nl)), a_(std::move(a)) {
  if (a_.empty()) throw std::invalid_argument("signature list must be nonempty");
  for (int ai : a_)
    if (ai != 1 && ai != -1) throw std::invalid_argument("Laplacian coefficients must be +1 or -1");
  if (nl_.gradient_degree && (*nl_.gradient_degree + 1) * basis.max_degree() > basis.quadrature_degree())
    throw std::invalid_argument("quadrature underresolved");
}

void GalerkinSystem::check_size(const Eigen::Ref<const Eigen::VectorXd> &c) const {
  if (c.size() != dimension())
    throw std::invalid_argument("coefficient vector has length " + std::to_string(c.size()) + ", expected " +
                                std::to_string(dimension()));
}

Eigen::MatrixXd GalerkinSystem::field(const Eigen::Ref<const Eigen::VectorXd> &c) const {
  check_size(c);
  const Eigen::Index nb = basis_->size();
  Eigen::MatrixXd u(basis_->values().rows(), components());
  for (int i = 0; i < components(); ++i) u.col(i) = basis_->values() * c.segment(i * nb, nb);
  return u;
}

double GalerkinSystem::functional(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const {
  const Eigen::MatrixXd u = field(c);
  const Eigen::Index nb = basis_->size();
  double quad = 0;
  for (int i = 0; i < components(); ++i) {
    const auto ci = c.segment(i * nb, nb);
    quad += -0.5 * a_[i] * (basis_->laplace_eigenvalues().array() * ci.array().square()).sum();
  }
  quad -= 0.5 * lambda * c.squaredNorm();
  double nonlinear = 0;
  std::vector<double> uq(static_cast<std::size_t>(components()));
  for (Eigen::Index q = 0; q < u.rows(); ++q) {
    for (int i = 0; i < components(); ++i) uq[i] = u(q, i);
    nonlinear += basis_->weights()(q) * nl_.h(uq, lambda);
  }
  return quad - nonlinear;
}

Eigen::VectorXd GalerkinSystem::nonlinear_projection(const Eigen::MatrixXd &u, double lambda) const {
  const Eigen::Index nb = basis_->size();
  const int p = components();
  Eigen::MatrixXd g(u.rows(), p);
  std::vector<double> uq(static_cast<std::size_t>(p)), gq(static_cast<std::size_t>(p));
  for (Eigen::Index q = 0; q < u.rows(); ++q) {
    for (int i = 0; i < p; ++i) uq[i] = u(q, i);
    nl_.grad(uq, lambda, gq);
    for (int i = 0; i < p; ++i) g(q, i) = basis_->weights()(q) * gq[i];
  }
  Eigen::VectorXd out(dimension());
  for (int i = 0; i < p; ++i) out.segment(i * nb, nb).noalias() = basis_->values().transpose() * g.col(i);
  return out;
}

Eigen::VectorXd GalerkinSystem::residual(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const {
  Eigen::VectorXd r = -nonlinear_projection(field(c), lambda);
  const Eigen::Index nb = basis_->size();
  for (int i = 0; i < components(); ++i)
    r.segment(i * nb, nb).array() +=
        (-a_[i] * basis_->laplace_eigenvalues().array() - lambda) * c.segment(i * nb, nb).array();
  return r;
}

Eigen::MatrixXd GalerkinSystem::jacobian(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const {
  const Eigen::MatrixXd u = field(c);
  const Eigen::Index nb = basis_->size(), nq = u.rows();
  const int p = components();
  std::vector<Eigen::VectorXd> weighted(static_cast<std::size_t>(p * p), Eigen::VectorXd(nq));
  std::vector<double> uq(static_cast<std::size_t>(p));
  Eigen::MatrixXd hq(p, p);
  for (Eigen::Index q = 0; q < nq; ++q) {
    for (int i = 0; i < p; ++i) uq[i] = u(q, i);
    eval_hessian(nl_, uq, lambda, hq);
    for (int i = 0; i < p; ++i)
      for (int l = 0; l < p; ++l) weighted[i * p + l](q) = basis_->weights()(q) * hq(i, l);
  }
  const Eigen::MatrixXd &B = basis_->values();
  Eigen::MatrixXd J(dimension(), dimension());
  for (int i = 0; i < p; ++i)
    for (int l = 0; l < p; ++l) {
      auto block = J.block(i * nb, l * nb, nb, nb);
      block.noalias() = -B.transpose() * weighted[i * p + l].asDiagonal() * B;
      if (i == l) block.diagonal().array() += -a_[i] * basis_->laplace_eigenvalues().array() - lambda;
    }
  return J;
}

Eigen::VectorXd GalerkinSystem::lambda_derivative(const Eigen::Ref<const Eigen::VectorXd> &c, double lambda) const {
  const Eigen::MatrixXd u = field(c);
  const double eps = 1e-6 * std::max(1.0, std::abs(lambda));
  return -c - (nonlinear_projection(u, lambda + eps) - nonlinear_projection(u, lambda - eps)) / (2 * eps);
}

double GalerkinSystem::h1_norm(const Eigen::Ref<const Eigen::VectorXd> &c) const {
  check_size(c);
  const Eigen::Index nb = basis_->size();
  double s = 0;
  for (int i = 0; i < components(); ++i)
    s += ((basis_->laplace_eigenvalues().array() + 1) * c.segment(i * nb, nb).array().square()).sum();
  return std::sqrt(s);
}

double GalerkinSystem::max_component_variance(const Eigen::Ref<const Eigen::VectorXd> &c) const {
  const Eigen::MatrixXd u = field(c);
  const Eigen::VectorXd &w = basis_->weights();
  const double area = w.sum();
  double best = 0;
  for (int i = 0; i < components(); ++i) {
    const double mean = w.dot(u.col(i)) / area;
    best = std::max(best, w.dot((u.col(i).array() - mean).square().matrix()) / area);
  }
  return best;
}

std::vector<Crossing> trivial_branch_crossings(const GalerkinBasis &basis, std::span<const int> a, const Rational &lo,
                                               const Rational &hi) {
  std::vector<Crossing> out;
  for (int k = 0; k <= basis.max_degree(); ++k)
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Rational lambda = Rational(-a[i]) * k * (k + 1);
      if (lambda < lo || lambda > hi) continue;
      auto it = std::find_if(out.begin(), out.end(), [&](const Crossing &x) { return x.lambda == lambda; });
      if (it == out.end()) {
        out.push_back({lambda, {}});
        it = std::prev(out.end());
      }
      for (int m = -k; m <= k; ++m) it->kernel.push_back({static_cast<int>(i), {k, m}});
    }
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.lambda < y.lambda; });
  for (auto &c : out)
    std::sort(c.kernel.begin(), c.kernel.end(), [](const KernelMode &x, const KernelMode &y) {
      return std::tie(x.component, x.mode.k, x.mode.m) < std::tie(y.component, y.mode.k, y.mode.m);
    });
  return out;
}

double gradient_check(const GalerkinSystem &system, const Eigen::Ref<const Eigen::VectorXd> &c, double lambda,
                      double epsilon, int samples, std::uint64_t seed) {
  if (!(epsilon >= 1e-8 && epsilon <= 1e-3)) throw std::invalid_argument("epsilon must lie in [1e-8, 1e-3]");
  const Eigen::VectorXd g = system.residual(c, lambda);
  std::vector<Eigen::Index> coords(static_cast<std::size_t>(c.size()));
  std::iota(coords.begin(), coords.end(), Eigen::Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(coords.begin(), coords.end(), rng);
  coords.resize(std::min(coords.size(), static_cast<std::size_t>(samples)));

  double worst = 0;
  Eigen::VectorXd x = c;
  for (Eigen::Index j : coords) {
    x(j) = c(j) + epsilon;
    const double fp = system.functional(x, lambda);
    x(j) = c(j) - epsilon;
    const double fm = system.functional(x, lambda);
    x(j) = c(j);
    const double fd = (fp - fm) / (2 * epsilon);
    worst = std::max(worst, std::abs(fd - g(j)) / std::max(1.0, std::abs(g(j))));
  }
  return worst;
}

bool IsotropyRestriction::allows(int component, const Mode &mode) const {
  return (components.empty() || components.contains(component)) &&
         (azimuthal.empty() || azimuthal.contains(mode.m));
}

const char *to_string(BranchOutcome outcome) {
  switch (outcome) {
    case BranchOutcome::reached_target: return "reached_target";
    case BranchOutcome::returned_to_trivial: return "returned_to_trivial";
    case BranchOutcome::incomplete: return "incomplete";
  }
  return "?";
}

namespace {

// The branch problem on the active (restricted) coordinates, with unknown
// x = (y, lambda).
class RestrictedProblem {
 public:
  RestrictedProblem(const GalerkinSystem &system, std::vector<Eigen::Index> active)
      : system_(system), active_(std::move(active)) {}

  Eigen::Index size() const { return static_cast<Eigen::Index>(active_.size()); }

  Eigen::VectorXd embed(const Eigen::Ref<const Eigen::VectorXd> &x) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(system_.dimension());
    for (Eigen::Index j = 0; j < size(); ++j) c(active_[j]) = x(j);
    return c;
  }

  Eigen::VectorXd residual(const Eigen::Ref<const Eigen::VectorXd> &x) const {
    const Eigen::VectorXd r = system_.residual(embed(x), x(size()));
    return r(active_);
  }

  // [dF/dy  dF/dlambda]
  Eigen::MatrixXd jacobian(const Eigen::Ref<const Eigen::VectorXd> &x) const {
    const Eigen::VectorXd c = embed(x);
    const Eigen::MatrixXd J = system_.jacobian(c, x(size()));
    Eigen::MatrixXd out(size(), size() + 1);
    out.leftCols(size()) = J(active_, active_);
    out.col(size()) = system_.lambda_derivative(c, x(size()))(active_);
    return out;
  }

  // Residual norm off the active set: zero when the restriction is invariant.
  double leakage(const Eigen::Ref<const Eigen::VectorXd> &x) const {
    Eigen::VectorXd r = system_.residual(embed(x), x(size()));
    r(active_).setZero();
    return r.norm();
  }

  BranchState state(const Eigen::Ref<const Eigen::VectorXd> &x, double arclength) const {
    BranchState s;
    s.coeffs = embed(x);
    s.lambda = x(size());
    s.arclength = arclength;
    s.h1_norm = system_.h1_norm(s.coeffs);
    return s;
  }

 private:
  const GalerkinSystem &system_;
  std::vector<Eigen::Index> active_;
};

// Newton on [F(x); v.x - rhs] = 0. Returns iteration count, or -1 on failure.
int correct(const RestrictedProblem &prob, Eigen::VectorXd &x, const Eigen::VectorXd &v, double rhs,
            const ContinuationOptions &opts, int min_iterations = 0) {
  const Eigen::Index n = prob.size();
  Eigen::MatrixXd A(n + 1, n + 1);
  Eigen::VectorXd g(n + 1);
  for (int it = 0; it <= opts.max_newton; ++it) {
    g.head(n) = prob.residual(x);
    g(n) = v.dot(x) - rhs;
    if (!g.allFinite()) return -1;
    if (it >= min_iterations && g.norm() <= opts.newton_tol) return it;
    if (it == opts.max_newton) break;
    A.topRows(n) = prob.jacobian(x);
    A.row(n) = v.transpose();
    const Eigen::VectorXd dx = A.partialPivLu().solve(g);
    if (!dx.allFinite()) return -1;
    x -= dx;
  }
  return -1;
}

Eigen::VectorXd tangent(const RestrictedProblem &prob, const Eigen::VectorXd &x, const Eigen::VectorXd &previous) {
  const Eigen::Index n = prob.size();
  Eigen::MatrixXd A(n + 1, n + 1);
  A.topRows(n) = prob.jacobian(x);
  A.row(n) = previous.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1;
  Eigen::VectorXd t = A.partialPivLu().solve(rhs);
  return t / t.norm();
}

}  // namespace

BranchResult continue_branch(const GalerkinSystem &system, const Rational &crossing, const ContinuationOptions &opts) {
  const GalerkinBasis &basis = system.basis();
  const auto crossings = trivial_branch_crossings(basis, system.a(), crossing, crossing);
  if (crossings.empty()) throw std::invalid_argument("not a crossing");

  std::vector<Eigen::Index> active;
  for (int i = 0; i < system.components(); ++i)
    for (Eigen::Index j = 0; j < basis.size(); ++j)
      if (opts.isotropy.allows(i, basis.modes()[j])) active.push_back(i * basis.size() + j);

  std::vector<Eigen::Index> kernel;
  for (const auto &km : crossings.front().kernel)
    if (opts.isotropy.allows(km.component, km.mode))
      kernel.push_back(km.component * basis.size() + basis.index_of(km.mode.k, km.mode.m));
  if (kernel.size() != 1) throw std::invalid_argument("apply isotropy restriction");

  RestrictedProblem prob(system, active);
  const Eigen::Index n = prob.size();
  const auto kpos = std::find(active.begin(), active.end(), kernel.front()) - active.begin();

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n + 1);
  phi(kpos) = 1;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n + 1);
  x(kpos) = opts.onset_amplitude;
  x(n) = crossing.convert_to<double>();

  BranchResult result;
  // The onset residual is O(amplitude^3), which can already sit under the
  // tolerance; one Newton step is needed to place lambda on the branch.
  if (correct(prob, x, phi, opts.onset_amplitude, opts, 1) < 0)
    throw ContinuationError("Newton corrector failed at onset", {});
  double arclength = 0;
  result.states.push_back(prob.state(x, arclength));

  auto finished = [&](const BranchState &s) {
    if (s.h1_norm >= opts.target_norm) {
      result.outcome = BranchOutcome::reached_target;
      return true;
    }
    if (result.states.size() > 1 && s.coeffs.norm() < opts.onset_amplitude / 10) {
      result.outcome = BranchOutcome::returned_to_trivial;
      return true;
    }
    return static_cast<int>(result.states.size()) >= opts.max_steps;
  };
  if (finished(result.states.back())) return result;

  Eigen::VectorXd t = tangent(prob, x, phi);
  double step = std::clamp(opts.step, opts.min_step, opts.max_step);
  while (true) {
    Eigen::VectorXd next = x + step * t;
    const int iters = correct(prob, next, t, t.dot(next), opts);
    if (iters < 0) {
      step *= 0.5;
      if (step < opts.failure_step)
        throw ContinuationError("Newton corrector diverged at minimum step", std::move(result.states));
      continue;
    }
    if (prob.leakage(next) > 1e-8 * std::max(1.0, next.norm()))
      throw std::invalid_argument("isotropy restriction is not an invariant subspace");

    arclength += (next - x).norm();
    x = next;
    result.states.push_back(prob.state(x, arclength));
    if (finished(result.states.back())) return result;

    t = tangent(prob, x, t);
    if (iters <= 3) step = std::min(step * 1.5, opts.max_step);
    else if (iters >= 8) step = std::max(step * 0.5, opts.min_step);
  }
}

}  // namespace symbif::galerkin
