#pragma once

#include "symbif/numeric.hpp"
#include "symbif/weight_lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace symbif {

/// Real torus representation R[k0,0] + sum_mu R[k_mu,mu], mu canonical.
struct TorusRepDecomposition {
  Integer k0{0};
  std::map<SubgroupId, Integer> mults;

  /// k0 + 2 sum k_mu.
  Integer dimension() const;
  Integer multiplicity(const SubgroupId &h) const;

  TorusRepDecomposition &operator+=(const TorusRepDecomposition &other);
  friend TorusRepDecomposition operator+(TorusRepDecomposition a, const TorusRepDecomposition &b) {
    return a += b;
  }
  friend bool operator==(const TorusRepDecomposition &, const TorusRepDecomposition &) = default;
};

/// Complex weight multiplicities of a torus representation, keyed by weight.
using WeightMultiplicities = std::map<RestrictedWeight, Integer>;

/// Realification: the weight spaces V_mu + V_-mu pair up into R[dim V_mu, mu].
/// Throws std::invalid_argument if the multiplicities are not symmetric under
/// mu -> -mu.
TorusRepDecomposition realify(const WeightMultiplicities &weights);

/// User-supplied data for one irreducible summand H_alpha of a generic space.
struct HarmonicTable {
  RestrictedWeight alpha;
  Integer real_dim{0};
  WeightMultiplicities weights;
};

enum class SpaceKind { sphere, product, generic };

/// A compact symmetric space described by the Gram matrix of its simple
/// restricted roots and the vector rho, both in simple-root coordinates.
///
/// Sphere presets use (alpha, alpha) = 1 and rho = (n-1)/2 so that the
/// eigenvalues come out as k(k+n-1). Products stack factors block-diagonally.
class SymmetricSpaceData {
 public:
  static SymmetricSpaceData sphere(int n);
  static SymmetricSpaceData product(std::vector<int> sphere_dims);
  /// Throws std::invalid_argument unless gram is symmetric positive definite
  /// and rho has matching size.
  static SymmetricSpaceData generic(RationalMatrix gram, RationalVector rho,
                                    std::vector<HarmonicTable> tables = {});

  Eigen::Index rank() const { return gram_.rows(); }
  const RationalMatrix &gram() const { return gram_; }
  const RationalVector &rho() const { return rho_; }
  SpaceKind kind() const { return kind_; }
  /// Sphere dimensions of the factors; empty for generic spaces.
  const std::vector<int> &sphere_dims() const { return sphere_dims_; }
  bool has_tables() const { return !tables_.empty(); }
  /// nullptr when no table was supplied for alpha.
  const HarmonicTable *table_for(const RestrictedWeight &alpha) const;

  std::string description() const;

 private:
  SymmetricSpaceData() = default;

  RationalMatrix gram_;
  RationalVector rho_;
  SpaceKind kind_ = SpaceKind::generic;
  std::vector<int> sphere_dims_;
  std::map<RestrictedWeight, HarmonicTable> tables_;
};

/// One eigenvalue of -Delta_M with the dominant weights realizing it.
struct SpectralLevel {
  Rational eigenvalue;
  std::vector<RestrictedWeight> alphas;
  Integer real_dim{0};
  TorusRepDecomposition torus_decomp;
};

/// Exact symmetric positive-definiteness test (all elimination pivots > 0).
bool is_symmetric_positive_definite(const RationalMatrix &m);

/// lambda_alpha = (alpha+rho, alpha+rho) - (rho, rho). Throws
/// std::invalid_argument("alpha not dominant") for negative coordinates.
Rational eigenvalue_of(const SymmetricSpaceData &space, const RestrictedWeight &alpha);

/// Levels with eigenvalue <= cutoff, ascending, with alphas only (no
/// dimensions); works for generic spaces without tables.
std::vector<SpectralLevel> eigenvalue_levels(const SymmetricSpaceData &space, const Rational &cutoff);

/// Fully populated levels with eigenvalue <= cutoff, ascending.
std::vector<SpectralLevel> spectrum_up_to(const SymmetricSpaceData &space, const Rational &cutoff);

/// dim of the real spherical harmonics of degree k on S^n, by counting
/// monomials: #deg k in n+1 variables minus #deg k-2.
Integer harmonic_dim(int n, long k);

/// Multiplicity of the SO(2)-weight m in the complexified degree-k harmonics
/// on S^n, via monomials in z (+1), zbar (-1) and n-1 weight-zero variables.
Integer sphere_weight_multiplicity(int n, long k, long m);

/// Complex weight multiplicities of H_alpha (presets or tables).
WeightMultiplicities harmonic_weights(const SymmetricSpaceData &space, const RestrictedWeight &alpha);

/// Real dimension of H_alpha (presets or tables).
Integer harmonic_real_dim(const SymmetricSpaceData &space, const RestrictedWeight &alpha);

/// Torus decomposition of a whole eigenspace. Throws std::invalid_argument
/// ("weight tables required") for generic spaces lacking tables.
TorusRepDecomposition torus_decomposition(const SymmetricSpaceData &space, const SpectralLevel &level);

}  // namespace symbif
