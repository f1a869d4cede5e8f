#pragma once

#include "symbif/numeric.hpp"
#include "symbif/weight_lattice.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace symbif {

/// Tag selecting the full torus T, whose generator chi(T/T+) is the unit.
struct FullTorus {};

/// Element of the Euler ring U(T) of a torus, kept modulo the ideal spanned by
/// generators chi(T/H+) with codim H >= 2:
///
///   x = unit * I + sum_mu c_mu * chi(T/H_mu+)
///
/// Products of two codimension-one generators land in codimension >= 2 and
/// are dropped. `truncated()` records that such a drop happened somewhere in
/// the history of the value; it is absorbing under all operations. Equality
/// compares coefficients only.
class EulerRingElement {
 public:
  using Codim1Map = std::map<SubgroupId, Integer>;

  /// Theta.
  EulerRingElement() = default;
  EulerRingElement(Integer unit, Codim1Map codim1, bool truncated = false);

  static EulerRingElement zero() { return {}; }
  static EulerRingElement unit() { return EulerRingElement(Integer(1), {}); }
  static EulerRingElement generator(const SubgroupId &h, Integer c = 1);

  const Integer &unit_coeff() const { return unit_; }
  const Codim1Map &codim1() const { return codim1_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const { return unit_ == 0 && codim1_.empty(); }

  EulerRingElement operator-() const;
  EulerRingElement &operator+=(const EulerRingElement &y);
  EulerRingElement &operator-=(const EulerRingElement &y);

  friend EulerRingElement operator+(EulerRingElement x, const EulerRingElement &y) { return x += y; }
  friend EulerRingElement operator-(EulerRingElement x, const EulerRingElement &y) { return x -= y; }
  friend EulerRingElement operator*(const EulerRingElement &x, const EulerRingElement &y);
  friend EulerRingElement operator*(const Integer &k, const EulerRingElement &x);

  friend bool operator==(const EulerRingElement &x, const EulerRingElement &y) {
    return x.unit_ == y.unit_ && x.codim1_ == y.codim1_;
  }

  /// e.g. "2I - 1*H(1) + 3*H(0,2)", "0" for Theta.
  std::string to_string() const;

 private:
  void normalize();

  Integer unit_{0};
  Codim1Map codim1_;
  bool truncated_ = false;
};

EulerRingElement add(const EulerRingElement &x, const EulerRingElement &y);
EulerRingElement mul(const EulerRingElement &x, const EulerRingElement &y);

/// Inverse of a unit a*I + b with a = +-1, namely a*I - b. Throws
/// std::domain_error("not invertible in truncated ring") otherwise.
EulerRingElement inverse(const EulerRingElement &x);

/// x^n; n < 0 goes through inverse(x).
EulerRingElement pow(const EulerRingElement &x, std::int64_t n);

Integer coeff_at(const EulerRingElement &x, const SubgroupId &h);
Integer coeff_at(const EulerRingElement &x, FullTorus);

}  // namespace symbif
