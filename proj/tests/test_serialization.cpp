#include "symbif/config.hpp"
#include "symbif/serialization.hpp"

#include <doctest.h>

#include <sstream>

using namespace symbif;

namespace {

template <class T>
T round_trip(const T &value) {
  return json::parse(json(value).dump()).template get<T>();
}

}  // namespace

TEST_CASE("integers and rationals") {
  CHECK(json(Integer(-7)) == json(-7));
  const Integer big = Integer(1) << 100;
  CHECK(json(big).is_string());
  CHECK(round_trip(big) == big);
  CHECK(round_trip(-big) == -big);

  CHECK(json(Rational(3, 4)) == json::parse(R"({"num":3,"den":4})"));
  CHECK(json(Rational(-6, 4)) == json::parse(R"({"num":-3,"den":2})"));
  CHECK(round_trip(Rational(big, 3)) == Rational(big, 3));
  CHECK(json("5/10").get<Rational>() == Rational(1, 2));
  CHECK(json(12).get<Rational>() == 12);
  CHECK(json(0.25).get<Rational>() == Rational(1, 4));
  CHECK_THROWS(json::parse(R"({"num":1,"den":0})").get<Rational>());
  CHECK_THROWS(json("1/2").get<Integer>());
}

TEST_CASE("weights, subgroups and ring elements") {
  CHECK(json(RestrictedWeight{1, -2}).dump() == "[1,-2]");
  CHECK(round_trip(RestrictedWeight{0, 3, -1}) == RestrictedWeight{0, 3, -1});
  const auto h = canonicalize({-1, 2});
  CHECK(json(h).dump() == R"({"H":[1,-2]})");
  CHECK(subgroup_from_json(json(h)) == h);
  CHECK_THROWS(subgroup_from_json(json::parse(R"({"H":[-1,2]})")));

  const auto x = EulerRingElement(Integer(2), {{canonicalize({1}), Integer(-3)}, {canonicalize({0, 1}), Integer(1)}}, true);
  const auto j = json(x);
  CHECK(j.at("unit") == 2);
  CHECK(j.at("truncated") == true);
  CHECK(j.at("codim1").size() == 2);
  const auto back = round_trip(x);
  CHECK(back == x);
  CHECK(back.truncated());
  CHECK(round_trip(EulerRingElement::zero()) == EulerRingElement::zero());
}

TEST_CASE("spectral levels, indices and certificates round-trip") {
  const auto space = SymmetricSpaceData::product({2, 3});
  for (const auto &l : spectrum_up_to(space, Rational(20))) {
    const auto back = round_trip(l);
    CHECK(back.eigenvalue == l.eigenvalue);
    CHECK(back.alphas == l.alphas);
    CHECK(back.real_dim == l.real_dim);
    CHECK(back.torus_decomp == l.torus_decomp);
  }
  const auto sig = SystemSignature::make(1, 2);
  CHECK(round_trip(sig) == sig);
  for (const auto &l : bifurcation_levels(space, sig, Rational(12))) {
    const auto back = round_trip(l);
    CHECK(back.lambda0 == l.lambda0);
    CHECK(back.kernel_dim == l.kernel_dim);
    CHECK(back.index == l.index);
    CHECK(back.index.truncated() == l.index.truncated());
  }
  const auto s2 = SymmetricSpaceData::sphere(2);
  for (long level : {0L, 2L, -6L}) {
    const auto c = certify_unbounded(s2, SystemSignature::make(1, 2), Rational(level));
    const auto j = json(c);
    CHECK(j.at("level") == json::parse(R"({"num":)" + std::to_string(level) + R"(,"den":1})"));
    CHECK(j.at("witness").is_null() == (level == 0));
    CHECK(round_trip(c) == c);
  }
}

TEST_CASE("branch states round-trip") {
  galerkin::BranchState s;
  s.coeffs = Eigen::VectorXd::LinSpaced(5, -1.0, 1.0) / 3.0;
  s.lambda = 2.000123456789;
  s.arclength = 0.1;
  s.h1_norm = 0.7;
  const auto back = round_trip(s);
  CHECK(back.coeffs == s.coeffs);
  CHECK(back.lambda == s.lambda);
  CHECK(back.h1_norm == s.h1_norm);
}

TEST_CASE("space descriptors") {
  CHECK(space_from_json(json::parse(R"({"kind":"sphere","n":3})")).description() ==
        SymmetricSpaceData::sphere(3).description());
  const auto prod = space_from_json(json::parse(R"({"kind":"product","factors":[2,2]})"));
  CHECK(prod.sphere_dims() == std::vector<int>{2, 2});
  CHECK(space_from_json(space_to_json(prod)).sphere_dims() == prod.sphere_dims());
  CHECK_THROWS(space_from_json(json::parse(R"({"kind":"torus"})")));
  CHECK_THROWS(space_from_json(json::parse(R"({"kind":"generic","gram":[[1,2],[2,1]],"rho":[1,1]})")));

  // S^2 presented through generic data and weight tables.
  const auto cfg = load_run_config(std::string(SYMBIF_TEST_DATA) + "/generic_s2.json");
  REQUIRE(cfg.space);
  CHECK(cfg.space->kind() == SpaceKind::generic);
  const auto generic = spectrum_up_to(*cfg.space, Rational(6));
  const auto preset = spectrum_up_to(SymmetricSpaceData::sphere(2), Rational(6));
  REQUIRE(generic.size() == preset.size());
  for (std::size_t i = 0; i < preset.size(); ++i) {
    CHECK(generic[i].eigenvalue == preset[i].eigenvalue);
    CHECK(generic[i].real_dim == preset[i].real_dim);
    CHECK(generic[i].torus_decomp == preset[i].torus_decomp);
  }
}

TEST_CASE("spectrum csv") {
  std::ostringstream os;
  write_spectrum_csv(os, spectrum_up_to(SymmetricSpaceData::product({2, 2}), Rational(4)));
  CHECK(os.str() ==
        "eigenvalue,alphas,real_dim,k0,H[0 1],H[1 -1],H[1 0],H[1 1]\n"
        "0/1,(0 0),1,1,0,0,0,0\n"
        "2/1,(0 1);(1 0),6,2,1,0,1,0\n"
        "4/1,(1 1),9,1,1,1,1,1\n");
}

TEST_CASE("run config validation") {
  const auto parse = [](const char *text) { return parse_run_config(json::parse(text)); };
  const auto cfg = parse(R"({"space":{"kind":"sphere","n":2},"a":[-1,1],"cutoff":"25/2","format":"pretty",
                             "K":6,"nl":"quartic","crossing":6,"target_norm":0.5})");
  CHECK(cfg.a == std::vector<int>{-1, 1});
  CHECK(*cfg.cutoff == Rational(25, 2));
  CHECK(cfg.format == "pretty");
  CHECK(cfg.branch.K == 6);
  CHECK(cfg.branch.crossing == 6);
  CHECK(cfg.branch.options.target_norm == 0.5);
  CHECK(parse(R"({"branch":{"max_steps":3,"isotropy":"none"}})").branch.options.max_steps == 3);
  CHECK(parse(R"({"branch":{"isotropy":"none"}})").branch.options.isotropy.azimuthal.empty());

  CHECK_THROWS_AS(parse(R"({"a":[]})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"a":[2]})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"cutoff":-1})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"format":"xml"})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"cutof":3})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"space":{"kind":"sphere","n":0}})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"max_steps":0})"), ConfigError);
  CHECK_THROWS_AS(parse(R"([1,2])"), ConfigError);
}
