#include "symbif/serialization.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

namespace nlohmann {

void adl_serializer<symbif::Integer>::to_json(json &j, const symbif::Integer &z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    j = z.convert_to<std::int64_t>();
  else
    j = z.str();
}

void adl_serializer<symbif::Integer>::from_json(const json &j, symbif::Integer &z) {
  if (j.is_number_unsigned()) z = j.get<std::uint64_t>();
  else if (j.is_number_integer()) z = j.get<std::int64_t>();
  else if (j.is_string()) {
    const symbif::Rational q = symbif::parse_rational(j.get<std::string>());
    if (symbif::mp::denominator(q) != 1) throw std::invalid_argument("expected an integer, got " + j.dump());
    z = symbif::mp::numerator(q);
  } else if (j.is_number_float() && j.get<double>() == std::floor(j.get<double>())) {
    z = symbif::Integer(j.get<double>());
  } else {
    throw std::invalid_argument("expected an integer, got " + j.dump());
  }
}

void adl_serializer<symbif::Rational>::to_json(json &j, const symbif::Rational &q) {
  j = json{{"num", symbif::Integer(symbif::mp::numerator(q))}, {"den", symbif::Integer(symbif::mp::denominator(q))}};
}

void adl_serializer<symbif::Rational>::from_json(const json &j, symbif::Rational &q) {
  if (j.is_object()) {
    const auto num = j.at("num").get<symbif::Integer>();
    const auto den = j.at("den").get<symbif::Integer>();
    if (den == 0) throw std::invalid_argument("zero denominator");
    q = symbif::Rational(num, den);
  } else if (j.is_string()) {
    q = symbif::parse_rational(j.get<std::string>());
  } else if (j.is_number_integer()) {
    q = symbif::Rational(j.get<symbif::Integer>());
  } else if (j.is_number_float()) {
    q = symbif::Rational(j.get<double>());
  } else {
    throw std::invalid_argument("expected a rational, got " + j.dump());
  }
}

}  // namespace nlohmann

namespace symbif {

void to_json(json &j, const RestrictedWeight &w) {
  j = json::array();
  for (Eigen::Index i = 0; i < w.rank(); ++i) j.push_back(w[i]);
}

void from_json(const json &j, RestrictedWeight &w) {
  if (!j.is_array()) throw std::invalid_argument("weight must be an integer array, got " + j.dump());
  IntegerVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<Integer>();
  w = RestrictedWeight(std::move(v));
}

void to_json(json &j, const SubgroupId &h) { j = json{{"H", h.canonical()}}; }

SubgroupId subgroup_from_json(const json &j) {
  const auto w = j.at("H").get<RestrictedWeight>();
  SubgroupId h = canonicalize(w);
  if (h.canonical() != w) throw std::invalid_argument("subgroup id " + w.to_string() + " is not canonical");
  return h;
}

void to_json(json &j, const EulerRingElement &x) {
  json terms = json::array();
  for (const auto &[h, c] : x.codim1()) terms.push_back({{"H", h.canonical()}, {"c", c}});
  j = json{{"unit", x.unit_coeff()}, {"codim1", terms}, {"truncated", x.truncated()}};
}

void from_json(const json &j, EulerRingElement &x) {
  EulerRingElement::Codim1Map m;
  for (const auto &t : j.at("codim1")) m[subgroup_from_json(t)] += t.at("c").get<Integer>();
  x = EulerRingElement(j.at("unit").get<Integer>(), std::move(m), j.value("truncated", false));
}

void to_json(json &j, const TorusRepDecomposition &d) {
  json mults = json::array();
  for (const auto &[h, k] : d.mults) mults.push_back({{"H", h.canonical()}, {"k", k}});
  j = json{{"k0", d.k0}, {"mults", mults}, {"dimension", d.dimension()}};
}

void from_json(const json &j, TorusRepDecomposition &d) {
  d = {};
  d.k0 = j.at("k0").get<Integer>();
  for (const auto &t : j.at("mults")) d.mults[subgroup_from_json(t)] += t.at("k").get<Integer>();
}

void to_json(json &j, const SpectralLevel &l) {
  j = json{{"eigenvalue", l.eigenvalue}, {"alphas", l.alphas}, {"real_dim", l.real_dim}, {"torus_decomp", l.torus_decomp}};
}

void from_json(const json &j, SpectralLevel &l) {
  l.eigenvalue = j.at("eigenvalue").get<Rational>();
  l.alphas = j.at("alphas").get<std::vector<RestrictedWeight>>();
  l.real_dim = j.at("real_dim").get<Integer>();
  l.torus_decomp = j.at("torus_decomp").get<TorusRepDecomposition>();
}

void to_json(json &j, const SystemSignature &s) { j = json{{"n_plus", s.n_plus}, {"n_minus", s.n_minus}}; }

void from_json(const json &j, SystemSignature &s) {
  s = SystemSignature::make(j.at("n_plus").get<int>(), j.at("n_minus").get<int>());
}

void to_json(json &j, const BifurcationLevel &l) {
  j = json{{"level", l.lambda0}, {"kernel_dim", l.kernel_dim}, {"index", l.index}};
}

void from_json(const json &j, BifurcationLevel &l) {
  l.lambda0 = j.at("level").get<Rational>();
  l.kernel_dim = j.at("kernel_dim").get<Integer>();
  l.index = j.at("index").get<EulerRingElement>();
}

void to_json(json &j, const LedgerEntry &e) { j = json{{"level", e.level}, {"coeff", e.coeff}}; }

void from_json(const json &j, LedgerEntry &e) {
  e.level = j.at("level").get<Rational>();
  e.coeff = j.at("coeff").get<Integer>();
}

void to_json(json &j, const UnboundednessCertificate &c) {
  j = json{{"level", c.level},
           {"witness", c.witness ? json(c.witness->canonical()) : json(nullptr)},
           {"ledger", c.ledger},
           {"unbounded", c.unbounded},
           {"symmetry_breaking", c.symmetry_breaking},
           {"conclusion", c.conclusion}};
}

void from_json(const json &j, UnboundednessCertificate &c) {
  c.level = j.at("level").get<Rational>();
  c.witness.reset();
  if (!j.at("witness").is_null()) {
    const auto w = j.at("witness").get<RestrictedWeight>();
    c.witness = canonicalize(w);
  }
  c.ledger = j.at("ledger").get<std::vector<LedgerEntry>>();
  c.unbounded = j.at("unbounded").get<bool>();
  c.symmetry_breaking = j.at("symmetry_breaking").get<bool>();
  c.conclusion = j.value("conclusion", "");
}

namespace galerkin {

void to_json(json &j, const BranchState &s) {
  j = json{{"arclength", s.arclength},
           {"lambda", s.lambda},
           {"h1_norm", s.h1_norm},
           {"coeffs", std::vector<double>(s.coeffs.data(), s.coeffs.data() + s.coeffs.size())}};
}

void from_json(const json &j, BranchState &s) {
  s.arclength = j.at("arclength").get<double>();
  s.lambda = j.at("lambda").get<double>();
  s.h1_norm = j.at("h1_norm").get<double>();
  const auto c = j.at("coeffs").get<std::vector<double>>();
  s.coeffs = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

}  // namespace galerkin

std::vector<HarmonicTable> tables_from_json(const json &j) {
  std::vector<HarmonicTable> out;
  for (const auto &entry : j.at("harmonics")) {
    HarmonicTable t;
    t.alpha = entry.at("alpha").get<RestrictedWeight>();
    t.real_dim = entry.at("real_dim").get<Integer>();
    for (const auto &w : entry.at("weights")) t.weights[w.at("mu").get<RestrictedWeight>()] += w.at("mult").get<Integer>();
    out.push_back(std::move(t));
  }
  return out;
}

SymmetricSpaceData space_from_json(const json &j, const std::filesystem::path &base_dir) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sphere") return SymmetricSpaceData::sphere(j.at("n").get<int>());
  if (kind == "product") return SymmetricSpaceData::product(j.at("factors").get<std::vector<int>>());
  if (kind == "generic") {
    const auto &g = j.at("gram");
    const auto r = static_cast<Eigen::Index>(g.size());
    RationalMatrix gram(r, r);
    for (Eigen::Index a = 0; a < r; ++a) {
      if (g[a].size() != static_cast<std::size_t>(r)) throw std::invalid_argument("gram must be square");
      for (Eigen::Index b = 0; b < r; ++b) gram(a, b) = g[a][b].get<Rational>();
    }
    const auto &rj = j.at("rho");
    RationalVector rho(static_cast<Eigen::Index>(rj.size()));
    for (std::size_t a = 0; a < rj.size(); ++a) rho(static_cast<Eigen::Index>(a)) = rj[a].get<Rational>();
    std::vector<HarmonicTable> tables;
    if (j.contains("tables")) {
      const auto &t = j.at("tables");
      if (t.is_string()) {
        std::filesystem::path p = t.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        std::ifstream in(p);
        if (!in) throw std::invalid_argument("cannot open weight tables " + p.string());
        tables = tables_from_json(json::parse(in));
      } else {
        tables = tables_from_json(t);
      }
    }
    return SymmetricSpaceData::generic(std::move(gram), std::move(rho), std::move(tables));
  }
  throw std::invalid_argument("unknown space kind '" + kind + "'");
}

json space_to_json(const SymmetricSpaceData &space) {
  switch (space.kind()) {
    case SpaceKind::sphere: return {{"kind", "sphere"}, {"n", space.sphere_dims().front()}};
    case SpaceKind::product: return {{"kind", "product"}, {"factors", space.sphere_dims()}};
    case SpaceKind::generic: {
      json gram = json::array();
      for (Eigen::Index a = 0; a < space.rank(); ++a) {
        json row = json::array();
        for (Eigen::Index b = 0; b < space.rank(); ++b) row.push_back(space.gram()(a, b));
        gram.push_back(row);
      }
      json rho = json::array();
      for (Eigen::Index a = 0; a < space.rank(); ++a) rho.push_back(space.rho()(a));
      return {{"kind", "generic"}, {"gram", gram}, {"rho", rho}};
    }
  }
  return {};
}

namespace {

std::string csv_weight(const RestrictedWeight &w) {
  std::string s;
  for (Eigen::Index i = 0; i < w.rank(); ++i) s += (i ? " " : "") + w[i].str();
  return s;
}

}  // namespace

void write_spectrum_csv(std::ostream &os, const std::vector<SpectralLevel> &levels) {
  std::set<SubgroupId> ids;
  for (const auto &l : levels)
    for (const auto &[h, k] : l.torus_decomp.mults) ids.insert(h);
  os << "eigenvalue,alphas,real_dim,k0";
  for (const auto &h : ids) os << ",H[" << csv_weight(h.canonical()) << "]";
  os << '\n';
  for (const auto &l : levels) {
    os << to_fraction_string(l.eigenvalue) << ',';
    for (std::size_t i = 0; i < l.alphas.size(); ++i) os << (i ? ";" : "") << '(' << csv_weight(l.alphas[i]) << ')';
    os << ',' << l.real_dim << ',' << l.torus_decomp.k0;
    for (const auto &h : ids) os << ',' << l.torus_decomp.multiplicity(h);
    os << '\n';
  }
}

}  // namespace symbif
