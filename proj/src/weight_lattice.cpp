#include "symbif/weight_lattice.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace symbif {

RestrictedWeight::RestrictedWeight(std::initializer_list<long> coords)
    : coords_(static_cast<Eigen::Index>(coords.size())) {
  Eigen::Index j = 0;
  for (long c : coords) coords_(j++) = c;
}

RestrictedWeight RestrictedWeight::zero(Eigen::Index rank) {
  IntegerVector v(rank);
  for (Eigen::Index j = 0; j < rank; ++j) v(j) = 0;
  return RestrictedWeight(std::move(v));
}

bool RestrictedWeight::is_zero() const {
  for (Eigen::Index j = 0; j < rank(); ++j)
    if (coords_(j) != 0) return false;
  return true;
}

bool RestrictedWeight::is_dominant() const {
  for (Eigen::Index j = 0; j < rank(); ++j)
    if (coords_(j) < 0) return false;
  return true;
}

namespace {
void require_same_rank(const RestrictedWeight &a, const RestrictedWeight &b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("rank mismatch: " + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()));
}
}  // namespace

RestrictedWeight operator+(const RestrictedWeight &a, const RestrictedWeight &b) {
  require_same_rank(a, b);
  return RestrictedWeight(IntegerVector(a.coords_ + b.coords_));
}

RestrictedWeight operator-(const RestrictedWeight &a, const RestrictedWeight &b) {
  require_same_rank(a, b);
  return RestrictedWeight(IntegerVector(a.coords_ - b.coords_));
}

bool operator==(const RestrictedWeight &a, const RestrictedWeight &b) {
  return a.rank() == b.rank() && a.coords_ == b.coords_;
}

std::strong_ordering operator<=>(const RestrictedWeight &a, const RestrictedWeight &b) {
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  for (Eigen::Index j = 0; j < a.rank(); ++j) {
    if (a.coords_(j) < b.coords_(j)) return std::strong_ordering::less;
    if (b.coords_(j) < a.coords_(j)) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string RestrictedWeight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index j = 0; j < rank(); ++j) os << (j ? "," : "") << coords_(j);
  os << ')';
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const RestrictedWeight &mu) { return os << mu.to_string(); }
std::ostream &operator<<(std::ostream &os, const SubgroupId &h) { return os << h.to_string(); }

SubgroupId canonicalize(const RestrictedWeight &mu) {
  for (Eigen::Index j = 0; j < mu.rank(); ++j) {
    if (mu[j] > 0) return SubgroupId(mu);
    if (mu[j] < 0) return SubgroupId(-mu);
  }
  throw std::invalid_argument("zero weight has no codimension-one subgroup");
}

DominanceOrder dominates(const RestrictedWeight &nu, const RestrictedWeight &mu) {
  require_same_rank(nu, mu);
  bool any_pos = false, any_neg = false;
  for (Eigen::Index j = 0; j < nu.rank(); ++j) {
    const Integer d = nu[j] - mu[j];
    any_pos = any_pos || d > 0;
    any_neg = any_neg || d < 0;
  }
  if (any_pos && any_neg) return DominanceOrder::incomparable;
  if (any_pos) return DominanceOrder::precedes;
  if (any_neg) return DominanceOrder::succeeds;
  return DominanceOrder::equals;
}

const char *to_string(DominanceOrder order) {
  switch (order) {
    case DominanceOrder::precedes: return "precedes";
    case DominanceOrder::equals: return "equals";
    case DominanceOrder::succeeds: return "succeeds";
    case DominanceOrder::incomparable: return "incomparable";
  }
  return "?";
}

}  // namespace symbif
