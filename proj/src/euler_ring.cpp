#include "symbif/euler_ring.hpp"

#include <sstream>
#include <stdexcept>

namespace symbif {

EulerRingElement::EulerRingElement(Integer unit, Codim1Map codim1, bool truncated)
    : unit_(std::move(unit)), codim1_(std::move(codim1)), truncated_(truncated) {
  normalize();
}

EulerRingElement EulerRingElement::generator(const SubgroupId &h, Integer c) {
  return EulerRingElement(Integer(0), Codim1Map{{h, std::move(c)}});
}

void EulerRingElement::normalize() {
  std::erase_if(codim1_, [](const auto &kv) { return kv.second == 0; });
}

EulerRingElement EulerRingElement::operator-() const {
  EulerRingElement r = *this;
  r.unit_ = -r.unit_;
  for (auto &[h, c] : r.codim1_) c = -c;
  return r;
}

EulerRingElement &EulerRingElement::operator+=(const EulerRingElement &y) {
  unit_ += y.unit_;
  for (const auto &[h, c] : y.codim1_) codim1_[h] += c;
  truncated_ = truncated_ || y.truncated_;
  normalize();
  return *this;
}

EulerRingElement &EulerRingElement::operator-=(const EulerRingElement &y) { return *this += -y; }

EulerRingElement operator*(const EulerRingElement &x, const EulerRingElement &y) {
  EulerRingElement r;
  r.unit_ = x.unit_ * y.unit_;
  for (const auto &[h, c] : y.codim1_) r.codim1_[h] += x.unit_ * c;
  for (const auto &[h, c] : x.codim1_) r.codim1_[h] += y.unit_ * c;
  // chi(T/H+) * chi(T/H'+) has isotropy H cap H' of codimension two (or the
  // product vanishes outright when H, H' are commensurable); either way it
  // leaves the codimension-one truncation.
  const bool dropped = !x.codim1_.empty() && !y.codim1_.empty();
  r.truncated_ = x.truncated_ || y.truncated_ || dropped;
  r.normalize();
  return r;
}

EulerRingElement operator*(const Integer &k, const EulerRingElement &x) {
  EulerRingElement r = x;
  r.unit_ *= k;
  for (auto &[h, c] : r.codim1_) c *= k;
  r.normalize();
  return r;
}

std::string EulerRingElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Integer &c, const std::string &gen) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << mp::abs(c) << gen;
    first = false;
  };
  if (unit_ != 0) term(unit_, "I");
  for (const auto &[h, c] : codim1_) term(c, "*" + h.to_string());
  return os.str();
}

EulerRingElement add(const EulerRingElement &x, const EulerRingElement &y) { return x + y; }
EulerRingElement mul(const EulerRingElement &x, const EulerRingElement &y) { return x * y; }

EulerRingElement inverse(const EulerRingElement &x) {
  const Integer &a = x.unit_coeff();
  if (a != 1 && a != -1) throw std::domain_error("not invertible in truncated ring");
  // (aI + b)(aI - b) = a^2 I - b*b, and b*b vanishes modulo codimension two.
  EulerRingElement::Codim1Map neg;
  for (const auto &[h, c] : x.codim1()) neg.emplace(h, -c);
  return EulerRingElement(a, std::move(neg), x.truncated() || !x.codim1().empty());
}

EulerRingElement pow(const EulerRingElement &x, std::int64_t n) {
  if (n < 0) return pow(inverse(x), -n);
  EulerRingElement result(Integer(1), {}, x.truncated());
  EulerRingElement base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Integer coeff_at(const EulerRingElement &x, const SubgroupId &h) {
  auto it = x.codim1().find(h);
  return it == x.codim1().end() ? Integer(0) : it->second;
}

Integer coeff_at(const EulerRingElement &x, FullTorus) { return x.unit_coeff(); }

}  // namespace symbif
