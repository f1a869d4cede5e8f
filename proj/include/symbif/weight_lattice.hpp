#pragma once

#include "symbif/numeric.hpp"

#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <string>

namespace symbif {

/// A restricted weight mu = sum_j m_j alpha_j, stored by its integer
/// coordinates in the basis of simple restricted roots.
class RestrictedWeight {
 public:
  RestrictedWeight() = default;
  explicit RestrictedWeight(IntegerVector coords) : coords_(std::move(coords)) {}
  RestrictedWeight(std::initializer_list<long> coords);

  static RestrictedWeight zero(Eigen::Index rank);

  Eigen::Index rank() const { return coords_.size(); }
  const IntegerVector &coords() const { return coords_; }
  const Integer &operator[](Eigen::Index j) const { return coords_(j); }

  bool is_zero() const;
  /// All coordinates nonnegative (membership in the dominant cone).
  bool is_dominant() const;

  RestrictedWeight operator-() const { return RestrictedWeight(IntegerVector(-coords_)); }
  friend RestrictedWeight operator+(const RestrictedWeight &a, const RestrictedWeight &b);
  friend RestrictedWeight operator-(const RestrictedWeight &a, const RestrictedWeight &b);

  friend bool operator==(const RestrictedWeight &a, const RestrictedWeight &b);
  /// Rank first, then lexicographic on coordinates.
  friend std::strong_ordering operator<=>(const RestrictedWeight &a, const RestrictedWeight &b);

  std::string to_string() const;

 private:
  IntegerVector coords_;
};

std::ostream &operator<<(std::ostream &os, const RestrictedWeight &mu);

/// Identifies the codimension-one subgroup H_mu = H_{-mu} of the torus by the
/// representative of {mu, -mu} whose first nonzero coordinate is positive.
/// Proportional weights stay distinct: H_(1,0) and H_(2,0) are different ids.
class SubgroupId {
 public:
  const RestrictedWeight &canonical() const { return canonical_; }

  friend bool operator==(const SubgroupId &, const SubgroupId &) = default;
  friend std::strong_ordering operator<=>(const SubgroupId &a, const SubgroupId &b) {
    return a.canonical_ <=> b.canonical_;
  }

  std::string to_string() const { return "H" + canonical_.to_string(); }

 private:
  friend SubgroupId canonicalize(const RestrictedWeight &mu);
  explicit SubgroupId(RestrictedWeight w) : canonical_(std::move(w)) {}
  RestrictedWeight canonical_;
};

std::ostream &operator<<(std::ostream &os, const SubgroupId &h);

/// Throws std::invalid_argument for the zero weight.
SubgroupId canonicalize(const RestrictedWeight &mu);

enum class DominanceOrder { precedes, equals, succeeds, incomparable };

/// Position of mu relative to nu in the dominance order: mu precedes nu when
/// nu - mu is a nonzero vector with nonnegative coordinates.
/// Throws std::invalid_argument on rank mismatch.
DominanceOrder dominates(const RestrictedWeight &nu, const RestrictedWeight &mu);

const char *to_string(DominanceOrder order);

}  // namespace symbif
