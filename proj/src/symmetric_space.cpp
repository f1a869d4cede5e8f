#include "symbif/symmetric_space.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace symbif {

Integer TorusRepDecomposition::dimension() const {
  Integer d = k0;
  for (const auto &[h, k] : mults) d += 2 * k;
  return d;
}

Integer TorusRepDecomposition::multiplicity(const SubgroupId &h) const {
  auto it = mults.find(h);
  return it == mults.end() ? Integer(0) : it->second;
}

TorusRepDecomposition &TorusRepDecomposition::operator+=(const TorusRepDecomposition &other) {
  k0 += other.k0;
  for (const auto &[h, k] : other.mults) mults[h] += k;
  return *this;
}

TorusRepDecomposition realify(const WeightMultiplicities &weights) {
  TorusRepDecomposition d;
  for (const auto &[mu, m] : weights) {
    if (m == 0) continue;
    if (mu.is_zero()) {
      d.k0 += m;
      continue;
    }
    SubgroupId h = canonicalize(mu);
    if (h.canonical() != mu) continue;
    auto conj = weights.find(-mu);
    if (conj == weights.end() || conj->second != m)
      throw std::invalid_argument("weight multiplicities are not symmetric under mu -> -mu at " +
                                  mu.to_string());
    d.mults.emplace(std::move(h), m);
  }
  for (const auto &[mu, m] : weights) {
    if (m != 0 && !mu.is_zero() && canonicalize(mu).canonical() != mu && !weights.contains(-mu))
      throw std::invalid_argument("weight multiplicities are not symmetric under mu -> -mu at " +
                                  mu.to_string());
  }
  return d;
}

bool is_symmetric_positive_definite(const RationalMatrix &m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (m != m.transpose()) return false;
  RationalMatrix a = m;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Rational f = a(i, k) / a(k, k);
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

SymmetricSpaceData SymmetricSpaceData::sphere(int n) { return product({n}); }

SymmetricSpaceData SymmetricSpaceData::product(std::vector<int> sphere_dims) {
  if (sphere_dims.empty()) throw std::invalid_argument("product needs at least one factor");
  for (int n : sphere_dims)
    if (n < 2) throw std::invalid_argument("sphere dimension must be >= 2, got " + std::to_string(n));
  const auto r = static_cast<Eigen::Index>(sphere_dims.size());
  SymmetricSpaceData s;
  s.kind_ = r == 1 ? SpaceKind::sphere : SpaceKind::product;
  s.gram_ = RationalMatrix::Zero(r, r);
  s.rho_.resize(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    s.gram_(j, j) = 1;
    s.rho_(j) = Rational(sphere_dims[j] - 1, 2);
  }
  s.sphere_dims_ = std::move(sphere_dims);
  return s;
}

SymmetricSpaceData SymmetricSpaceData::generic(RationalMatrix gram, RationalVector rho,
                                               std::vector<HarmonicTable> tables) {
  if (!is_symmetric_positive_definite(gram))
    throw std::invalid_argument("gram matrix must be symmetric positive definite");
  if (rho.size() != gram.rows()) throw std::invalid_argument("rho size does not match rank");
  SymmetricSpaceData s;
  s.gram_ = std::move(gram);
  s.rho_ = std::move(rho);
  for (auto &t : tables) {
    if (t.alpha.rank() != s.rank() || !t.alpha.is_dominant())
      throw std::invalid_argument("table alpha " + t.alpha.to_string() + " is not a dominant weight");
    Integer total = 0;
    for (const auto &[mu, m] : t.weights) {
      if (mu.rank() != s.rank()) throw std::invalid_argument("table weight has wrong rank");
      total += m;
    }
    if (total != t.real_dim)
      throw std::invalid_argument("table for " + t.alpha.to_string() +
                                  ": weight multiplicities do not sum to real_dim");
    realify(t.weights);  // validates symmetry
    auto key = t.alpha;
    s.tables_.emplace(std::move(key), std::move(t));
  }
  return s;
}

const HarmonicTable *SymmetricSpaceData::table_for(const RestrictedWeight &alpha) const {
  auto it = tables_.find(alpha);
  return it == tables_.end() ? nullptr : &it->second;
}

std::string SymmetricSpaceData::description() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::sphere: os << "S^" << sphere_dims_[0]; break;
    case SpaceKind::product:
      for (std::size_t i = 0; i < sphere_dims_.size(); ++i) os << (i ? " x " : "") << "S^" << sphere_dims_[i];
      break;
    case SpaceKind::generic: os << "generic rank " << rank(); break;
  }
  return os.str();
}

Rational eigenvalue_of(const SymmetricSpaceData &space, const RestrictedWeight &alpha) {
  if (alpha.rank() != space.rank()) throw std::invalid_argument("rank mismatch");
  if (!alpha.is_dominant()) throw std::invalid_argument("alpha not dominant");
  RationalVector a = alpha.coords().cast<Rational>();
  RationalVector shifted = a + space.rho();
  return bilinear(space.gram(), shifted, shifted) - bilinear(space.gram(), space.rho(), space.rho());
}

namespace {

// Largest coordinate any dominant alpha with lambda_alpha <= cutoff can have:
// lambda >= s |a|^2 - 2 |G rho| |a| with s the smallest eigenvalue of G.
long coordinate_bound(const SymmetricSpaceData &space, const Rational &cutoff) {
  Eigen::MatrixXd g = space.gram().unaryExpr([](const Rational &q) { return q.convert_to<double>(); });
  Eigen::VectorXd rho = space.rho().unaryExpr([](const Rational &q) { return q.convert_to<double>(); });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const double s = es.eigenvalues().minCoeff() * (1.0 - 1e-8) - 1e-14 * g.norm();
  if (!(s > 0)) throw std::invalid_argument("gram matrix is numerically singular");
  const double b = (g * rho).norm();
  const double c = std::max(0.0, cutoff.convert_to<double>());
  return static_cast<long>(std::floor((b + std::sqrt(b * b + s * c)) / s * (1.0 + 1e-9))) + 1;
}

// Visits every point of [0, bound]^rank.
template <typename F>
void for_each_in_box(Eigen::Index rank, long bound, F &&f) {
  std::vector<long> idx(static_cast<std::size_t>(rank), 0);
  IntegerVector v(rank);
  while (true) {
    for (Eigen::Index j = 0; j < rank; ++j) v(j) = idx[static_cast<std::size_t>(j)];
    f(RestrictedWeight(v));
    std::size_t j = 0;
    while (j < idx.size() && idx[j] == bound) idx[j++] = 0;
    if (j == idx.size()) return;
    ++idx[j];
  }
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Monomials of degree d in v variables.
Integer monomial_count(long d, long v) {
  if (d < 0) return 0;
  if (v == 0) return d == 0 ? 1 : 0;
  return binomial(d + v - 1, v - 1);
}

// Monomials of degree d in z, zbar, y_1..y_{n-1} with (#z - #zbar) = m.
Integer balanced_monomials(int n, long d, long m) {
  Integer total = 0;
  for (long b = std::max(0L, -m); 2 * b + m <= d; ++b) total += monomial_count(d - 2 * b - m, n - 1);
  return total;
}

}  // namespace

std::vector<SpectralLevel> eigenvalue_levels(const SymmetricSpaceData &space, const Rational &cutoff) {
  std::vector<std::pair<Rational, RestrictedWeight>> found;
  if (cutoff >= 0) {
    for_each_in_box(space.rank(), coordinate_bound(space, cutoff), [&](RestrictedWeight alpha) {
      Rational lambda = eigenvalue_of(space, alpha);
      if (lambda <= cutoff) found.emplace_back(std::move(lambda), std::move(alpha));
    });
  }
  std::sort(found.begin(), found.end(), [](const auto &x, const auto &y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  std::vector<SpectralLevel> levels;
  for (auto &[lambda, alpha] : found) {
    if (levels.empty() || levels.back().eigenvalue != lambda) {
      levels.emplace_back();
      levels.back().eigenvalue = lambda;
    }
    levels.back().alphas.push_back(std::move(alpha));
  }
  return levels;
}

std::vector<SpectralLevel> spectrum_up_to(const SymmetricSpaceData &space, const Rational &cutoff) {
  std::vector<SpectralLevel> levels = eigenvalue_levels(space, cutoff);
  for (auto &level : levels) {
    level.real_dim = 0;
    for (const auto &alpha : level.alphas) level.real_dim += harmonic_real_dim(space, alpha);
    level.torus_decomp = torus_decomposition(space, level);
  }
  return levels;
}

Integer harmonic_dim(int n, long k) {
  if (n < 2 || k < 0) throw std::invalid_argument("harmonic_dim requires n >= 2, k >= 0");
  return monomial_count(k, n + 1) - monomial_count(k - 2, n + 1);
}

Integer sphere_weight_multiplicity(int n, long k, long m) {
  if (n < 2 || k < 0) throw std::invalid_argument("sphere_weight_multiplicity requires n >= 2, k >= 0");
  return balanced_monomials(n, k, m) - balanced_monomials(n, k - 2, m);
}

namespace {

const HarmonicTable &require_table(const SymmetricSpaceData &space, const RestrictedWeight &alpha) {
  const HarmonicTable *t = space.table_for(alpha);
  if (t == nullptr)
    throw std::invalid_argument("weight tables required (no table for alpha " + alpha.to_string() + ")");
  return *t;
}

}  // namespace

WeightMultiplicities harmonic_weights(const SymmetricSpaceData &space, const RestrictedWeight &alpha) {
  if (space.kind() == SpaceKind::generic) return require_table(space, alpha).weights;
  if (alpha.rank() != space.rank() || !alpha.is_dominant())
    throw std::invalid_argument("alpha not dominant");

  // Tensor product over sphere factors: multiplicities multiply coordinatewise.
  WeightMultiplicities acc{{RestrictedWeight::zero(0), Integer(1)}};
  for (Eigen::Index j = 0; j < space.rank(); ++j) {
    const int n = space.sphere_dims()[static_cast<std::size_t>(j)];
    const long k = alpha[j].convert_to<long>();
    WeightMultiplicities next;
    for (const auto &[prefix, mult] : acc) {
      for (long m = -k; m <= k; ++m) {
        Integer w = sphere_weight_multiplicity(n, k, m);
        if (w == 0) continue;
        IntegerVector v(j + 1);
        v.head(j) = prefix.coords();
        v(j) = m;
        next.emplace(RestrictedWeight(std::move(v)), mult * w);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

Integer harmonic_real_dim(const SymmetricSpaceData &space, const RestrictedWeight &alpha) {
  if (space.kind() == SpaceKind::generic) return require_table(space, alpha).real_dim;
  if (alpha.rank() != space.rank() || !alpha.is_dominant())
    throw std::invalid_argument("alpha not dominant");
  Integer d = 1;
  for (Eigen::Index j = 0; j < space.rank(); ++j)
    d *= harmonic_dim(space.sphere_dims()[static_cast<std::size_t>(j)], alpha[j].convert_to<long>());
  return d;
}

TorusRepDecomposition torus_decomposition(const SymmetricSpaceData &space, const SpectralLevel &level) {
  TorusRepDecomposition d;
  for (const auto &alpha : level.alphas) d += realify(harmonic_weights(space, alpha));
  return d;
}

}  // namespace symbif
