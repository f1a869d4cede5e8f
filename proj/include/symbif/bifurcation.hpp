#pragma once

#include "symbif/euler_ring.hpp"
#include "symbif/symmetric_space.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace symbif {

/// Counts of equations with Laplacian coefficient a_i = +1 and a_i = -1.
struct SystemSignature {
  int n_plus = 0;
  int n_minus = 0;

  int p() const { return n_plus + n_minus; }

  /// Throws std::invalid_argument unless every entry is +-1 and the list is nonempty.
  static SystemSignature from_coefficients(std::span<const int> a);
  /// Throws std::invalid_argument on negative counts or p == 0.
  static SystemSignature make(int n_plus, int n_minus);

  friend bool operator==(const SystemSignature &, const SystemSignature &) = default;
};

/// A point of Lambda, the set where the linearization at the trivial branch
/// is degenerate, together with its kernel dimension and bifurcation index.
struct BifurcationLevel {
  Rational lambda0;
  Integer kernel_dim{0};
  EulerRingElement index;
};

struct LedgerEntry {
  Rational level;
  Integer coeff{0};
  friend bool operator==(const LedgerEntry &, const LedgerEntry &) = default;
};

struct UnboundednessCertificate {
  Rational level;
  /// H_alpha for nonzero levels; empty at level 0.
  std::optional<SubgroupId> witness;
  /// H_alpha coefficients of the indices at +-lambda_alpha that lie in Lambda,
  /// or the unit coefficient of BIF(0) at level 0.
  std::vector<LedgerEntry> ledger;
  bool unbounded = false;
  bool symmetry_breaking = false;
  std::string conclusion;

  friend bool operator==(const UnboundednessCertificate &, const UnboundednessCertificate &) = default;
};

/// chi_T(S^V) = (-1)^k0 (I - sum_mu k_mu chi(T/H_mu+)) modulo codimension two.
EulerRingElement chi_sphere_block(const TorusRepDecomposition &decomp);

/// Lambda intersected with [-cutoff, cutoff], ascending, with kernel dims and indices.
std::vector<BifurcationLevel> bifurcation_levels(const SymmetricSpaceData &space, const SystemSignature &sig,
                                                 const Rational &cutoff);

/// True when level belongs to Lambda for this signature.
bool in_lambda(const SymmetricSpaceData &space, const SystemSignature &sig, const Rational &level);

/// BIF_T(level) evaluated in the truncated Euler ring:
///   +lambda_a: chi(S^W)^{n-} * (chi(S^V)^{n-} - I)
///   -lambda_a: chi(S^{W+V})^{-n+} * (chi(S^V)^{n+} - I)
///   0:         ((-1)^{n-} - (-1)^{n+}) I
/// where V is the eigenspace at lambda_a and W the sum of all lower ones.
/// Throws std::invalid_argument when level is not in Lambda.
EulerRingElement bif_index(const SymmetricSpaceData &space, const SystemSignature &sig, const Rational &level);

/// Coefficient at H_mu of chi(S^V)^{+-N} * (chi(S^W)^N - I) in closed form,
/// for V = R[k0,0] + R[k_mu,mu] + ..., W = R[l0,0] + R[l_mu,mu] + ...
Integer codim1_product_coefficient(const Integer &k0, const Integer &k_mu, const Integer &l0, const Integer &l_mu,
                                   long n, bool inverted);

struct CoefficientCheck {
  Integer computed{0};
  Integer closed_form{0};
  Integer d_w{0};
  Integer d_v{0};
};

/// Compares coeff_at(BIF(sign * lambda_alpha), H_alpha) with
/// (-1)^{(d_W + d_V) n + 1} n, n = n_- for sign > 0 and n_+ for sign < 0.
CoefficientCheck coeff_formula_check(const SymmetricSpaceData &space, const SystemSignature &sig,
                                     const RestrictedWeight &alpha, int sign = +1);

/// (-1)^{d (n_- - n_+)} n_- != -n_+: the integer identity that rules out the
/// bounded alternative. d is d_W + d_V (only its parity matters).
bool impossibility_holds(const Integer &d, int n_minus, int n_plus);

/// Runs the contradiction argument for the continuum at `level`. Throws
/// std::domain_error("no bifurcation guaranteed at this level") unless level
/// is +lambda_a with n_- > 0, -lambda_a with n_+ > 0, or 0 with p odd.
UnboundednessCertificate certify_unbounded(const SymmetricSpaceData &space, const SystemSignature &sig,
                                           const Rational &level);

/// Nonzero levels have kernels without G-fixed vectors, so branches from them
/// break symmetry. Throws std::invalid_argument if +-level is not an eigenvalue.
bool symmetry_breaking_flag(const SymmetricSpaceData &space, const Rational &level);

}  // namespace symbif
