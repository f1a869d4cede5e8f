#include "symbif/acceptance.hpp"

#include "symbif/bifurcation.hpp"
#include "symbif/commands.hpp"
#include "symbif/galerkin.hpp"
#include "symbif/serialization.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace symbif::acceptance {

namespace {

// ---------------------------------------------------------------------------
// Oracles, by explicit enumeration.

long count_monomials(int vars, int degree) {
  if (degree < 0) return 0;
  if (vars == 0) return degree == 0 ? 1 : 0;
  long total = 0;
  for (int e = 0; e <= degree; ++e) total += count_monomials(vars - 1, degree - e);
  return total;
}

long oracle_harmonic_dim(int n, int k) { return count_monomials(n + 1, k) - count_monomials(n + 1, k - 2); }

// Monomials z^a zbar^b w^c of degree k and weight a - b = m.
long oracle_weight_monomials(int n, int k, int m) {
  long total = 0;
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b)
      if (a - b == m) total += count_monomials(n - 1, k - a - b);
  return total;
}

long oracle_weight_mult(int n, int k, int m) {
  return oracle_weight_monomials(n, k, m) - oracle_weight_monomials(n, k - 2, m);
}

// Eigenspaces of a product of spheres grouped by eigenvalue, each with the
// degree tuples realizing it.
struct OracleLevel {
  long eigenvalue = 0;
  std::vector<std::vector<int>> degrees;
  long dim = 0;
};

std::vector<OracleLevel> oracle_levels(const std::vector<int> &dims, long cutoff) {
  std::map<long, OracleLevel> by_value;
  std::vector<int> k(dims.size(), 0);
  const auto recurse = [&](auto &self, std::size_t f, long value) -> void {
    if (f == dims.size()) {
      auto &l = by_value[value];
      l.eigenvalue = value;
      l.degrees.push_back(k);
      long d = 1;
      for (std::size_t i = 0; i < dims.size(); ++i) d *= oracle_harmonic_dim(dims[i], k[i]);
      l.dim += d;
      return;
    }
    for (int deg = 0;; ++deg) {
      const long v = value + long(deg) * (deg + dims[f] - 1);
      if (v > cutoff) break;
      k[f] = deg;
      self(self, f + 1, v);
    }
  };
  recurse(recurse, 0, 0);
  std::vector<OracleLevel> out;
  for (auto &[v, l] : by_value) out.push_back(std::move(l));
  return out;
}

// Complex multiplicity of the torus weight mu in an oracle level.
long oracle_level_weight_mult(const std::vector<int> &dims, const OracleLevel &level, const std::vector<long> &mu) {
  long total = 0;
  for (const auto &k : level.degrees) {
    long m = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) m *= oracle_weight_mult(dims[i], k[i], static_cast<int>(mu[i]));
    total += m;
  }
  return total;
}

std::vector<long> coords_of(const RestrictedWeight &w) {
  std::vector<long> v;
  for (Eigen::Index i = 0; i < w.rank(); ++i) v.push_back(w[i].convert_to<long>());
  return v;
}

struct NamedSpace {
  std::string name;
  std::vector<int> dims;
  SymmetricSpaceData space;
};

std::vector<NamedSpace> test_spaces() {
  return {{"S^2", {2}, SymmetricSpaceData::sphere(2)},
          {"S^3", {3}, SymmetricSpaceData::sphere(3)},
          {"S^2xS^2", {2, 2}, SymmetricSpaceData::product({2, 2})},
          {"S^2xS^3", {2, 3}, SymmetricSpaceData::product({2, 3})}};
}

std::vector<SystemSignature> signatures_up_to(int p_max) {
  std::vector<SystemSignature> out;
  for (int p = 1; p <= p_max; ++p)
    for (int np = 0; np <= p; ++np) out.push_back(SystemSignature::make(np, p - np));
  return out;
}

std::string sig_text(const SystemSignature &s) {
  return "(n+=" + std::to_string(s.n_plus) + ",n-=" + std::to_string(s.n_minus) + ")";
}

// Accumulates the first few mismatches for the detail column.
struct Mismatches {
  long checked = 0;
  long failed = 0;
  std::string first;

  void check(bool ok, const std::string &what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }
  bool ok() const { return failed == 0; }
  std::string detail(const std::string &unit) const {
    std::string s = std::to_string(checked) + " " + unit;
    if (failed) s += ", " + std::to_string(failed) + " failed, first: " + first;
    return s;
  }
};

// ---------------------------------------------------------------------------

CriterionResult spectrum_exactness(std::uint64_t) {
  Mismatches mm;
  for (int n : {2, 3, 4}) {
    RunConfig cfg;
    cfg.space = SymmetricSpaceData::sphere(n);
    cfg.cutoff = Rational(200);
    cfg.format = "json";
    std::ostringstream out, err;
    const int code = cli::cmd_spectrum(cfg, out, err);
    mm.check(code == 0, "S^" + std::to_string(n) + " exit " + std::to_string(code) + " " + err.str());
    if (code != 0) continue;
    std::vector<Rational> got;
    const auto parsed = nlohmann::json::parse(out.str());
    for (const auto &l : parsed.at("levels")) got.push_back(l.at("eigenvalue").get<Rational>());
    std::vector<Rational> want;
    for (long k = 0; k * (k + n - 1) <= 200; ++k) want.push_back(Rational(k * (k + n - 1)));
    mm.check(got == want, "S^" + std::to_string(n) + ": " + std::to_string(got.size()) + " levels vs " +
                              std::to_string(want.size()) + " expected");
  }
  return {1, "spectrum exactness on S^2, S^3, S^4 up to 200", mm.ok(), mm.detail("checks"), 0, 1.0};
}

CriterionResult product_degeneracy(std::uint64_t) {
  Mismatches mm;
  const auto levels = spectrum_up_to(SymmetricSpaceData::product({2, 2}), Rational(12));
  const auto oracle = oracle_levels({2, 2}, 12);
  const auto find = [&](long v) -> const SpectralLevel * {
    for (const auto &l : levels)
      if (l.eigenvalue == v) return &l;
    return nullptr;
  };
  const auto oracle_dim = [&](long v) {
    for (const auto &l : oracle)
      if (l.eigenvalue == v) return l.dim;
    return -1L;
  };
  const auto *l2 = find(2);
  const auto *l12 = find(12);
  mm.check(l2 && l12, "missing level 2 or 12");
  if (l2 && l12) {
    const std::set<RestrictedWeight> a2(l2->alphas.begin(), l2->alphas.end());
    const std::set<RestrictedWeight> a12(l12->alphas.begin(), l12->alphas.end());
    mm.check(l2->alphas.size() == 2 && a2 == std::set<RestrictedWeight>{{1, 0}, {0, 1}},
             "level 2 alphas " + std::to_string(l2->alphas.size()));
    mm.check(l12->alphas.size() == 3 && a12 == std::set<RestrictedWeight>{{3, 0}, {0, 3}, {2, 2}},
             "level 12 alphas " + std::to_string(l12->alphas.size()));
    mm.check(oracle_dim(12) == 39, "oracle dim at 12 is " + std::to_string(oracle_dim(12)));
    mm.check(l12->real_dim == 39, "real_dim at 12 is " + l12->real_dim.str());
    mm.check(l2->real_dim == oracle_dim(2), "real_dim at 2 is " + l2->real_dim.str());
  }
  return {2, "product degeneracy on S^2xS^2 at levels 2 and 12", mm.ok(), mm.detail("checks"), 0, 0};
}

CriterionResult first_appearance(std::uint64_t) {
  Mismatches mm;
  for (const auto &ns : test_spaces()) {
    const auto levels = spectrum_up_to(ns.space, Rational(30));
    const auto oracle = oracle_levels(ns.dims, 30);
    mm.check(levels.size() == oracle.size(), ns.name + " level count");
    if (levels.size() != oracle.size()) continue;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      mm.check(levels[i].eigenvalue == oracle[i].eigenvalue && levels[i].real_dim == oracle[i].dim,
               ns.name + " level " + std::to_string(oracle[i].eigenvalue));
      for (const auto &alpha : levels[i].alphas) {
        if (alpha.is_zero()) continue;
        const auto h = canonicalize(alpha);
        const auto mu = coords_of(alpha);
        for (std::size_t j = 0; j <= i; ++j) {
          const Integer got = levels[j].torus_decomp.multiplicity(h);
          const long want = oracle_level_weight_mult(ns.dims, oracle[j], mu);
          const long expected = j == i ? 1 : 0;
          mm.check(got == want && want == expected, ns.name + " " + h.to_string() + " at level " +
                                                        std::to_string(oracle[j].eigenvalue) + ": got " + got.str() +
                                                        ", oracle " + std::to_string(want));
        }
      }
    }
  }
  return {3, "first appearance on S^2, S^3, S^2xS^2, S^2xS^3 up to 30", mm.ok(), mm.detail("multiplicities"), 0, 10.0};
}

CriterionResult coefficient_formula(std::uint64_t) {
  Mismatches mm;
  for (const auto &ns : test_spaces()) {
    const auto oracle = oracle_levels(ns.dims, 30);
    const auto spectrum = eigenvalue_levels(ns.space, Rational(30));
    mm.check(spectrum.size() == oracle.size(), ns.name + " level count");
    if (spectrum.size() != oracle.size()) continue;
    for (const auto &sig : signatures_up_to(5)) {
      const auto levels = bifurcation_levels(ns.space, sig, Rational(30));
      long d_w = 0;
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        const long d_v = oracle[i].dim;
        for (const auto &alpha : spectrum[i].alphas) {
          if (alpha.is_zero()) continue;
          const auto h = canonicalize(alpha);
          for (int sign : {+1, -1}) {
            const int n = sign > 0 ? sig.n_minus : sig.n_plus;
            if (n == 0) continue;
            const auto chk = coeff_formula_check(ns.space, sig, alpha, sign);
            const long expected = (((d_w + d_v) * n + 1) % 2 == 0 ? 1 : -1) * long(n);
            mm.check(chk.computed == expected && chk.closed_form == expected,
                     ns.name + " " + sig_text(sig) + " " + h.to_string() + (sign > 0 ? " +" : " -") + ": computed " +
                         chk.computed.str() + ", expected " + std::to_string(expected));
          }
          for (const auto &l : levels)
            if (mp::abs(l.lambda0) < oracle[i].eigenvalue)
              mm.check(coeff_at(l.index, h) == 0, ns.name + " " + sig_text(sig) + " " + h.to_string() +
                                                      " nonzero at lower level " + to_fraction_string(l.lambda0));
        }
        d_w += d_v;
      }
    }
  }
  return {4, "coefficient formulas and lower-level vanishing, p <= 5", mm.ok(), mm.detail("coefficients"), 0, 30.0};
}

CriterionResult impossibility_sweep(std::uint64_t) {
  Mismatches mm;
  for (int nm = 1; nm <= 6; ++nm)
    for (int np = 1; np <= 6; ++np)
      for (int d = 0; d <= 3; ++d) {
        const long lhs = ((d * (nm - np)) % 2 == 0 ? 1 : -1) * long(nm);
        const bool oracle = lhs != -long(np);
        mm.check(oracle && impossibility_holds(Integer(d), nm, np),
                 "n-=" + std::to_string(nm) + " n+=" + std::to_string(np) + " d=" + std::to_string(d));
      }
  return {5, "impossibility inequality for n-, n+ <= 6", mm.ok(), mm.detail("cases"), 0, 0};
}

CriterionResult zero_level(std::uint64_t) {
  Mismatches mm;
  for (const auto &ns : test_spaces())
    for (const auto &sig : signatures_up_to(7)) {
      const auto idx = bif_index(ns.space, sig, Rational(0));
      const long oracle = (sig.n_minus % 2 ? -1 : 1) - (sig.n_plus % 2 ? -1 : 1);
      const bool shape = sig.p() % 2 ? (oracle == 2 || oracle == -2) : oracle == 0;
      mm.check(shape && idx.codim1().empty() && idx.unit_coeff() == oracle && idx.is_zero() == (sig.p() % 2 == 0),
               ns.name + " " + sig_text(sig) + ": " + idx.to_string());
    }
  return {6, "index at level 0 for p <= 7", mm.ok(), mm.detail("signatures"), 0, 0};
}

// Naive model of the truncated ring for cross-checking products.
struct NaiveElement {
  long unit = 0;
  std::map<std::vector<long>, long> terms;
};

NaiveElement naive_of(const EulerRingElement &x) {
  NaiveElement n;
  n.unit = x.unit_coeff().convert_to<long>();
  for (const auto &[h, c] : x.codim1()) n.terms[coords_of(h.canonical())] = c.convert_to<long>();
  return n;
}

NaiveElement naive_mul(const NaiveElement &x, const NaiveElement &y) {
  NaiveElement r;
  r.unit = x.unit * y.unit;
  for (const auto &[k, c] : x.terms) r.terms[k] += y.unit * c;
  for (const auto &[k, c] : y.terms) r.terms[k] += x.unit * c;
  std::erase_if(r.terms, [](const auto &kv) { return kv.second == 0; });
  return r;
}

bool naive_equal(const NaiveElement &a, const NaiveElement &b) { return a.unit == b.unit && a.terms == b.terms; }

CriterionResult ring_axioms(std::uint64_t seed) {
  Mismatches mm;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-5, 5), coord(-2, 2), count(0, 3), flag(0, 3);
  std::vector<SubgroupId> pool;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      if (a || b) pool.push_back(canonicalize(RestrictedWeight{a, b}));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const auto random_element = [&](std::optional<long> unit = std::nullopt) {
    EulerRingElement::Codim1Map m;
    for (long i = count(rng); i > 0; --i) m[pool[pick(rng)]] += coef(rng);
    return EulerRingElement(Integer(unit ? *unit : coef(rng)), std::move(m), flag(rng) == 0);
  };
  const auto one = EulerRingElement::unit();
  const int cases = 10000;
  for (int t = 0; t < cases; ++t) {
    const auto x = random_element(), y = random_element(), z = random_element();
    const auto u = random_element(coef(rng) >= 0 ? 1 : -1);
    const std::string tag = "case " + std::to_string(t);
    mm.check(x * y == y * x, tag + " commutativity");
    mm.check((x * y) * z == x * (y * z), tag + " associativity");
    mm.check(x * (y + z) == x * y + x * z, tag + " distributivity");
    mm.check(one * x == x && x * one == x, tag + " unit");
    mm.check(u * inverse(u) == one && inverse(u) * u == one, tag + " inverse");
    mm.check(naive_equal(naive_of(x * y), naive_mul(naive_of(x), naive_of(y))), tag + " product model");
    mm.check((x * y).truncated() == (x.truncated() || y.truncated() || (!x.codim1().empty() && !y.codim1().empty())),
             tag + " truncation flag");
  }
  return {7, "Euler ring axioms on 10^4 random triples", mm.ok(), mm.detail("checks"), 0, 0};
}

CriterionResult gradient(std::uint64_t seed) {
  const galerkin::GalerkinBasis basis(8);
  const galerkin::GalerkinSystem system(basis, galerkin::Nonlinearity::quartic(), {-1});
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.3);
  Eigen::VectorXd c(system.dimension());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  const double error = galerkin::gradient_check(system, c, 2.5, 1e-5, 50, seed);
  std::ostringstream detail;
  detail << "max relative error " << std::setprecision(3) << error << " (limit 1e-6)";
  return {8, "Galerkin gradient check, K = 8, quartic", error <= 1e-6, detail.str(), 0, 10.0};
}

CriterionResult crossing_agreement(std::uint64_t) {
  Mismatches mm;
  const int K = 8;
  const galerkin::GalerkinBasis basis(K);
  const Rational window(K * (K + 1));
  const auto sphere = SymmetricSpaceData::sphere(2);
  for (int p = 1; p <= 3; ++p)
    for (int bits = 0; bits < (1 << p); ++bits) {
      std::vector<int> a;
      for (int i = 0; i < p; ++i) a.push_back((bits >> i) & 1 ? 1 : -1);
      const auto crossings = galerkin::trivial_branch_crossings(basis, a, -window, window);
      const auto levels = bifurcation_levels(sphere, SystemSignature::from_coefficients(a), window);
      bool same = crossings.size() == levels.size();
      for (std::size_t i = 0; same && i < levels.size(); ++i)
        same = crossings[i].lambda == levels[i].lambda0 && Integer(crossings[i].kernel.size()) == levels[i].kernel_dim;
      std::string tag = "a=(";
      for (int v : a) tag += (tag.size() > 3 ? "," : "") + std::to_string(v);
      mm.check(same, tag + ")");
    }
  return {9, "trivial-branch crossings match bifurcation levels, p <= 3", mm.ok(), mm.detail("signatures"), 0, 0};
}

CriterionResult branch_witness(std::uint64_t) {
  const galerkin::GalerkinBasis basis(8);
  const galerkin::GalerkinSystem system(basis, galerkin::Nonlinearity::quartic(), {-1});
  galerkin::ContinuationOptions opts;
  opts.max_steps = 500;
  opts.target_norm = 1.0;
  std::ostringstream detail;
  try {
    const auto result = galerkin::continue_branch(system, Rational(2), opts);
    const auto &states = result.states;
    bool nonconstant = true;
    for (const auto &s : states)
      if (!(system.max_component_variance(s.coeffs) > 1e-8 * s.h1_norm * s.h1_norm)) nonconstant = false;
    const double final_norm = states.empty() ? 0.0 : states.back().h1_norm;
    const bool ok = result.outcome == galerkin::BranchOutcome::reached_target && states.size() <= 500 &&
                    final_norm >= 1.0 && nonconstant;
    detail << galerkin::to_string(result.outcome) << " after " << states.size() << " states, h1 "
           << std::setprecision(4) << final_norm << ", lambda " << states.back().lambda
           << (nonconstant ? ", all nonconstant" : ", constant state found");
    return {10, "branch from lambda = 2 on S^2 reaches h1 norm 1", ok, detail.str(), 0, 60.0};
  } catch (const std::exception &e) {
    return {10, "branch from lambda = 2 on S^2 reaches h1 norm 1", false, e.what(), 0, 60.0};
  }
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult &)> &on_result) {
  using Criterion = CriterionResult (*)(std::uint64_t);
  const Criterion criteria[] = {spectrum_exactness, product_degeneracy, first_appearance, coefficient_formula,
                                impossibility_sweep, zero_level,        ring_axioms,      gradient,
                                crossing_agreement,  branch_witness};
  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto criterion : criteria) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criterion(seed);
    } catch (const std::exception &e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0, 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.time_limit > 0 && r.seconds >= r.time_limit) {
      r.passed = false;
      r.detail += "; over time limit";
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_line(const CriterionResult &r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << std::setw(2) << r.id << "] " << r.name << ": " << r.detail << " ("
     << std::fixed << std::setprecision(2) << r.seconds << " s";
  if (r.time_limit > 0) os << ", limit " << std::setprecision(0) << r.time_limit << " s";
  os << ')';
  return os.str();
}

}  // namespace symbif::acceptance
