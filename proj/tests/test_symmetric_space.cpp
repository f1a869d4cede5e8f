#include "symbif/symmetric_space.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

using namespace symbif;

namespace {

using Exponents = std::vector<int>;

void monomials(int vars, int degree, std::vector<Exponents> &out, Exponents cur = {}) {
  if (static_cast<int>(cur.size()) == vars - 1) {
    cur.push_back(degree);
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= degree; ++e) {
    Exponents next = cur;
    next.push_back(e);
    monomials(vars, degree - e, out, next);
  }
}

// Independent oracle: dim of the kernel of the Euclidean Laplacian on
// homogeneous polynomials of degree k in n+1 variables.
long harmonic_dim_by_laplacian(int n, int k) {
  const int vars = n + 1;
  std::vector<Exponents> src, dst;
  monomials(vars, k, src);
  if (k < 2) return static_cast<long>(src.size());
  monomials(vars, k - 2, dst);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dst.size()),
                                              static_cast<Eigen::Index>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (int v = 0; v < vars; ++v) {
      const int e = src[c][static_cast<std::size_t>(v)];
      if (e < 2) continue;
      Exponents t = src[c];
      t[static_cast<std::size_t>(v)] -= 2;
      for (std::size_t r = 0; r < dst.size(); ++r)
        if (dst[r] == t) lap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += e * (e - 1);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
  return static_cast<long>(src.size()) - lu.rank();
}

// Brute-force count of monomials in z, zbar, y_1..y_{n-1} with weight m.
long balanced_by_enumeration(int n, int d, int m) {
  if (d < 0) return 0;
  std::vector<Exponents> all;
  monomials(n + 1, d, all);
  long count = 0;
  for (const auto &e : all)
    if (e[0] - e[1] == m) ++count;
  return count;
}

SpectralLevel level_at(const std::vector<SpectralLevel> &levels, const Rational &lambda) {
  for (const auto &l : levels)
    if (l.eigenvalue == lambda) return l;
  FAIL("no level at " << lambda);
  return {};
}

}  // namespace

TEST_CASE("harmonic_dim matches the Laplacian-kernel oracle") {
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k <= 5; ++k) CHECK(harmonic_dim(n, k) == harmonic_dim_by_laplacian(n, k));
  CHECK(harmonic_dim(2, 0) == 1);
  CHECK(harmonic_dim(2, 1) == 3);
  CHECK(harmonic_dim(2, 2) == 5);
  CHECK(harmonic_dim(3, 1) == 4);
  CHECK(harmonic_dim(3, 2) == 9);
  CHECK(harmonic_dim(7, 0) == 1);
  for (int k = 0; k <= 20; ++k) CHECK(harmonic_dim(2, k) == 2 * k + 1);
  CHECK_THROWS_AS(harmonic_dim(1, 2), std::invalid_argument);
}

TEST_CASE("sphere weight multiplicities") {
  for (long m = -4; m <= 4; ++m) CHECK(sphere_weight_multiplicity(2, 2, m) == (std::abs(m) <= 2 ? 1 : 0));
  CHECK(sphere_weight_multiplicity(3, 1, 0) == 2);
  for (int n = 2; n <= 5; ++n)
    for (int k = 0; k <= 6; ++k) {
      CHECK(sphere_weight_multiplicity(n, k, k) == 1);
      Integer total = 0;
      for (int m = -k - 1; m <= k + 1; ++m) {
        const Integer w = sphere_weight_multiplicity(n, k, m);
        CHECK(w == balanced_by_enumeration(n, k, m) - balanced_by_enumeration(n, k - 2, m));
        CHECK(w == sphere_weight_multiplicity(n, k, -m));
        total += w;
      }
      CHECK(total == harmonic_dim(n, k));
    }
}

TEST_CASE("sphere eigenvalues") {
  const auto s2 = SymmetricSpaceData::sphere(2);
  CHECK(eigenvalue_of(s2, {1}) == 2);
  CHECK(eigenvalue_of(s2, {2}) == 6);
  CHECK(eigenvalue_of(s2, {3}) == 12);
  CHECK(eigenvalue_of(s2, {0}) == 0);
  const auto s2s3 = SymmetricSpaceData::product({2, 3});
  CHECK(eigenvalue_of(s2s3, {1, 1}) == 5);
  CHECK(eigenvalue_of(s2s3, {0, 0}) == 0);
  CHECK_THROWS_WITH_AS(eigenvalue_of(s2, {-1}), "alpha not dominant", std::invalid_argument);
}

TEST_CASE("spectrum of S^2 up to 12") {
  const auto levels = spectrum_up_to(SymmetricSpaceData::sphere(2), 12);
  REQUIRE(levels.size() == 4);
  const long expected[] = {0, 2, 6, 12};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(levels[i].eigenvalue == expected[i]);
    CHECK(levels[i].alphas.size() == 1);
    CHECK(levels[i].real_dim == static_cast<long>(2 * i + 1));
  }
  CHECK(levels[0].torus_decomp.k0 == 1);
  CHECK(levels[0].torus_decomp.mults.empty());
  CHECK(spectrum_up_to(SymmetricSpaceData::sphere(2), 0).size() == 1);
  CHECK(spectrum_up_to(SymmetricSpaceData::sphere(2), Rational(-1)).empty());
}

TEST_CASE("S^2 x S^2 degenerate levels") {
  const auto levels = spectrum_up_to(SymmetricSpaceData::product({2, 2}), 12);
  const auto l2 = level_at(levels, 2);
  CHECK(l2.alphas == std::vector<RestrictedWeight>{{0, 1}, {1, 0}});
  CHECK(l2.torus_decomp.k0 == 2);
  CHECK(l2.torus_decomp.mults.size() == 2);
  CHECK(l2.torus_decomp.multiplicity(canonicalize({1, 0})) == 1);
  CHECK(l2.torus_decomp.multiplicity(canonicalize({0, 1})) == 1);
  CHECK(level_at(levels, 4).alphas == std::vector<RestrictedWeight>{{1, 1}});
  const auto l12 = level_at(levels, 12);
  CHECK(l12.alphas == std::vector<RestrictedWeight>{{0, 3}, {2, 2}, {3, 0}});
  CHECK(l12.real_dim == 39);
}

TEST_CASE("torus decomposition of S^2 level 6") {
  const auto l6 = level_at(spectrum_up_to(SymmetricSpaceData::sphere(2), 6), 6);
  CHECK(l6.torus_decomp.k0 == 1);
  CHECK(l6.torus_decomp.multiplicity(canonicalize({1})) == 1);
  CHECK(l6.torus_decomp.multiplicity(canonicalize({2})) == 1);
  CHECK(l6.torus_decomp.dimension() == 5);
}

TEST_CASE("dimension consistency and parity on every level") {
  for (const auto &space : {SymmetricSpaceData::sphere(2), SymmetricSpaceData::sphere(5),
                            SymmetricSpaceData::product({2, 3}), SymmetricSpaceData::product({2, 2, 3})}) {
    for (const auto &level : spectrum_up_to(space, 40)) {
      CHECK(level.torus_decomp.dimension() == level.real_dim);
      CHECK(sign_power(level.torus_decomp.k0) == sign_power(level.real_dim));
    }
  }
}

TEST_CASE("eigenvalues increase along the dominance order") {
  for (const auto &space : {SymmetricSpaceData::sphere(3), SymmetricSpaceData::product({2, 3}),
                            SymmetricSpaceData::product({2, 2, 4})}) {
    std::vector<RestrictedWeight> ws;
    for (const auto &l : eigenvalue_levels(space, 1000))
      for (const auto &a : l.alphas) {
        bool small = true;
        for (Eigen::Index j = 0; j < a.rank(); ++j) small = small && a[j] <= 5;
        if (small) ws.push_back(a);
      }
    for (const auto &a : ws)
      for (const auto &b : ws)
        if (dominates(b, a) == DominanceOrder::precedes) CHECK(eigenvalue_of(space, a) < eigenvalue_of(space, b));
  }
}

TEST_CASE("first appearance of R[1,alpha]") {
  for (const auto &space : {SymmetricSpaceData::sphere(2), SymmetricSpaceData::sphere(3),
                            SymmetricSpaceData::product({2, 2}), SymmetricSpaceData::product({2, 3})}) {
    const auto levels = spectrum_up_to(space, 30);
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (const auto &alpha : levels[i].alphas) {
        if (alpha.is_zero()) continue;
        const auto h = canonicalize(alpha);
        CHECK(levels[i].torus_decomp.multiplicity(h) == 1);
        for (std::size_t j = 0; j < i; ++j) CHECK(levels[j].torus_decomp.multiplicity(h) == 0);
      }
  }
}

TEST_CASE("generic spaces") {
  RationalMatrix bad(2, 2);
  bad << Rational(1), Rational(2), Rational(2), Rational(1);
  CHECK_THROWS_AS(SymmetricSpaceData::generic(bad, RationalVector::Zero(2)), std::invalid_argument);
  RationalMatrix asym(2, 2);
  asym << Rational(2), Rational(1), Rational(0), Rational(2);
  CHECK_FALSE(is_symmetric_positive_definite(asym));

  // S^2 restated with tables must reproduce the preset.
  RationalMatrix g(1, 1);
  g << Rational(1);
  RationalVector rho(1);
  rho << Rational(1, 2);
  const auto bare = SymmetricSpaceData::generic(g, rho);
  CHECK(eigenvalue_levels(bare, 12).size() == 4);
  CHECK_THROWS_WITH_AS(spectrum_up_to(bare, 2), doctest::Contains("weight tables required"), std::invalid_argument);

  std::vector<HarmonicTable> tables;
  for (long k = 0; k <= 4; ++k) {
    HarmonicTable t{{k}, harmonic_dim(2, k), {}};
    for (long m = -k; m <= k; ++m) t.weights[{m}] = 1;
    tables.push_back(t);
  }
  const auto tabled = SymmetricSpaceData::generic(g, rho, tables);
  const auto a = spectrum_up_to(tabled, 20), b = spectrum_up_to(SymmetricSpaceData::sphere(2), 20);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].eigenvalue == b[i].eigenvalue);
    CHECK(a[i].real_dim == b[i].real_dim);
    CHECK(a[i].torus_decomp == b[i].torus_decomp);
  }

  HarmonicTable lopsided{{1}, 2, {{{0}, 1}, {{1}, 1}}};
  CHECK_THROWS_AS(SymmetricSpaceData::generic(g, rho, {lopsided}), std::invalid_argument);
}

TEST_CASE("generic rank-2 spectrum with an off-diagonal Gram matrix") {
  // A2-type Gram matrix; enumeration must find every alpha under the cutoff.
  RationalMatrix g(2, 2);
  g << Rational(2), Rational(-1), Rational(-1), Rational(2);
  RationalVector rho(2);
  rho << Rational(1), Rational(1);
  const auto space = SymmetricSpaceData::generic(g, rho);
  const Rational cutoff = 40;
  std::size_t brute = 0;
  for (long a = 0; a <= 40; ++a)
    for (long b = 0; b <= 40; ++b)
      if (eigenvalue_of(space, {a, b}) <= cutoff) ++brute;
  std::size_t found = 0;
  for (const auto &l : eigenvalue_levels(space, cutoff)) found += l.alphas.size();
  CHECK(found == brute);
}
