#include "symbif/bifurcation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace symbif {

SystemSignature SystemSignature::from_coefficients(std::span<const int> a) {
  if (a.empty()) throw std::invalid_argument("signature list must be nonempty");
  SystemSignature s;
  for (int ai : a) {
    if (ai == 1) ++s.n_plus;
    else if (ai == -1) ++s.n_minus;
    else throw std::invalid_argument("Laplacian coefficients must be +1 or -1, got " + std::to_string(ai));
  }
  return s;
}

SystemSignature SystemSignature::make(int n_plus, int n_minus) {
  if (n_plus < 0 || n_minus < 0 || n_plus + n_minus == 0)
    throw std::invalid_argument("signature needs n_plus, n_minus >= 0 and p >= 1");
  return {n_plus, n_minus};
}

EulerRingElement chi_sphere_block(const TorusRepDecomposition &decomp) {
  EulerRingElement::Codim1Map m;
  for (const auto &[h, k] : decomp.mults) m.emplace(h, -k);
  EulerRingElement x(Integer(1), std::move(m), true);
  return sign_power(decomp.k0) < 0 ? -x : x;
}

namespace {

// Spectrum up to |level| with the eigenspace V at |level| and W below it.
struct Blocks {
  TorusRepDecomposition lower;
  TorusRepDecomposition at;
  const SpectralLevel *level = nullptr;
  std::vector<SpectralLevel> spectrum;
};

std::optional<Blocks> blocks_at(const SymmetricSpaceData &space, const Rational &abs_level) {
  Blocks b;
  b.spectrum = spectrum_up_to(space, abs_level);
  if (b.spectrum.empty() || b.spectrum.back().eigenvalue != abs_level) return std::nullopt;
  for (std::size_t i = 0; i + 1 < b.spectrum.size(); ++i) b.lower += b.spectrum[i].torus_decomp;
  b.at = b.spectrum.back().torus_decomp;
  b.level = &b.spectrum.back();
  return b;
}

Rational abs(const Rational &q) { return q < 0 ? Rational(-q) : q; }

EulerRingElement zero_level_index(const SystemSignature &sig) {
  return Integer(sign_power(sig.n_minus) - sign_power(sig.n_plus)) * EulerRingElement::unit();
}

EulerRingElement index_from_blocks(const Blocks &b, const SystemSignature &sig, bool positive) {
  const EulerRingElement chi_v = chi_sphere_block(b.at);
  const EulerRingElement one = EulerRingElement::unit();
  if (positive)
    return pow(chi_sphere_block(b.lower), sig.n_minus) * (pow(chi_v, sig.n_minus) - one);
  return pow(chi_sphere_block(b.lower + b.at), -sig.n_plus) * (pow(chi_v, sig.n_plus) - one);
}

bool sign_allowed(const SystemSignature &sig, const Rational &level) {
  if (level > 0) return sig.n_minus > 0;
  if (level < 0) return sig.n_plus > 0;
  return true;
}

}  // namespace

bool in_lambda(const SymmetricSpaceData &space, const SystemSignature &sig, const Rational &level) {
  if (!sign_allowed(sig, level)) return false;
  const auto levels = eigenvalue_levels(space, abs(level));
  return !levels.empty() && levels.back().eigenvalue == abs(level);
}

EulerRingElement bif_index(const SymmetricSpaceData &space, const SystemSignature &sig, const Rational &level) {
  if (level == 0) return zero_level_index(sig);
  auto b = sign_allowed(sig, level) ? blocks_at(space, abs(level)) : std::nullopt;
  if (!b) throw std::invalid_argument("level " + to_fraction_string(level) + " is not in Lambda");
  return index_from_blocks(*b, sig, level > 0);
}

std::vector<BifurcationLevel> bifurcation_levels(const SymmetricSpaceData &space, const SystemSignature &sig,
                                                 const Rational &cutoff) {
  std::vector<BifurcationLevel> out;
  if (cutoff < 0) return out;
  const auto spectrum = spectrum_up_to(space, cutoff);
  Blocks b;
  for (const auto &level : spectrum) {
    b.at = level.torus_decomp;
    if (level.eigenvalue == 0) {
      out.push_back({Rational(0), Integer(sig.p()) * level.real_dim, zero_level_index(sig)});
    } else {
      if (sig.n_minus > 0)
        out.push_back({level.eigenvalue, Integer(sig.n_minus) * level.real_dim, index_from_blocks(b, sig, true)});
      if (sig.n_plus > 0)
        out.push_back({Rational(-level.eigenvalue), Integer(sig.n_plus) * level.real_dim,
                       index_from_blocks(b, sig, false)});
    }
    b.lower += level.torus_decomp;
  }
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.lambda0 < y.lambda0; });
  return out;
}

Integer codim1_product_coefficient(const Integer &k0, const Integer &k_mu, const Integer &l0, const Integer &l_mu,
                                   long n, bool inverted) {
  const int sv = sign_power(k0 * n);
  const int sw = sign_power(l0 * n);
  const Integer mixed = Integer(sw - 1) * k_mu;
  return Integer(sv) * n * (Integer(-sw) * l_mu + (inverted ? mixed : Integer(-mixed)));
}

CoefficientCheck coeff_formula_check(const SymmetricSpaceData &space, const SystemSignature &sig,
                                     const RestrictedWeight &alpha, int sign) {
  const Rational lambda = eigenvalue_of(space, alpha);
  if (lambda == 0) throw std::invalid_argument("coefficient formula needs lambda_alpha != 0");
  auto b = blocks_at(space, lambda);
  CoefficientCheck c;
  c.d_w = b->lower.dimension();
  c.d_v = b->at.dimension();
  const bool positive = sign > 0;
  if (!sign_allowed(sig, positive ? lambda : Rational(-lambda)))
    throw std::invalid_argument("level " + to_fraction_string(positive ? lambda : Rational(-lambda)) +
                                " is not in Lambda");
  c.computed = coeff_at(index_from_blocks(*b, sig, positive), canonicalize(alpha));
  const int n = positive ? sig.n_minus : sig.n_plus;
  c.closed_form = Integer(sign_power((c.d_w + c.d_v) * n + 1)) * n;
  return c;
}

bool impossibility_holds(const Integer &d, int n_minus, int n_plus) {
  return Integer(sign_power(d * (n_minus - n_plus))) * n_minus != -n_plus;
}

UnboundednessCertificate certify_unbounded(const SymmetricSpaceData &space, const SystemSignature &sig,
                                           const Rational &level) {
  const char *refusal = "no bifurcation guaranteed at this level";
  UnboundednessCertificate cert;
  cert.level = level;
  std::ostringstream why;

  if (level == 0) {
    if (sig.p() % 2 == 0) throw std::domain_error(refusal);
    const EulerRingElement bif0 = zero_level_index(sig);
    cert.ledger.push_back({Rational(0), bif0.unit_coeff()});
    cert.unbounded = !bif0.is_zero();
    why << "BIF(0) = " << bif0.to_string() << " != 0 since p = " << sig.p()
        << " is odd; any return of C(0) to a level lambda_j != 0 meets a continuum that the "
           "nonzero-level certificates show is unbounded";
    cert.conclusion = why.str();
    return cert;
  }

  auto b = sign_allowed(sig, level) ? blocks_at(space, abs(level)) : std::nullopt;
  if (!b) throw std::domain_error(refusal);

  const RestrictedWeight &alpha = b->level->alphas.front();
  const SubgroupId h = canonicalize(alpha);
  cert.witness = h;
  cert.symmetry_breaking = true;

  // The H_alpha coordinate of every index at a level of smaller modulus
  // vanishes, so only +-lambda_alpha can enter the cancelling sum.
  const Integer given = coeff_at(index_from_blocks(*b, sig, level > 0), h);
  std::optional<Integer> other;
  if (sign_allowed(sig, -level)) other = coeff_at(index_from_blocks(*b, sig, level < 0), h);

  for (const Rational &l : {Rational(-abs(level)), abs(level)}) {
    if (l == level) cert.ledger.push_back({l, given});
    else if (other) cert.ledger.push_back({l, *other});
  }

  const Integer d = b->lower.dimension() + b->at.dimension();
  const bool identity = !other || impossibility_holds(d, sig.n_minus, sig.n_plus);
  cert.unbounded = given != 0 && (!other || given + *other != 0) && identity;

  why << "witness " << h.to_string() << ": BIF(" << to_fraction_string(level) << ") coefficient " << given;
  if (other) why << ", BIF(" << to_fraction_string(-level) << ") coefficient " << *other;
  why << "; every cancelling subset must contain " << to_fraction_string(level) << ", sums: " << given;
  if (other) why << " and " << (given + *other);
  if (cert.unbounded) why << " are nonzero; the bounded alternative is impossible, so C(" << to_fraction_string(level)
                          << ") is unbounded";
  else why << "; contradiction not reached";
  cert.conclusion = why.str();
  return cert;
}

bool symmetry_breaking_flag(const SymmetricSpaceData &space, const Rational &level) {
  const auto levels = eigenvalue_levels(space, abs(level));
  if (levels.empty() || levels.back().eigenvalue != abs(level))
    throw std::invalid_argument("level " + to_fraction_string(level) + " is not in Lambda");
  return level != 0;
}

}  // namespace symbif
