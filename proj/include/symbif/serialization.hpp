#pragma once

#include "symbif/bifurcation.hpp"
#include "symbif/euler_ring.hpp"
#include "symbif/galerkin.hpp"
#include "symbif/symmetric_space.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace nlohmann {

// Integers within 64 bits are plain JSON numbers, larger ones decimal strings.
template <>
struct adl_serializer<symbif::Integer> {
  static void to_json(json &j, const symbif::Integer &z);
  static void from_json(const json &j, symbif::Integer &z);
};

// {"num": n, "den": d}; also reads integers, "p/q" strings and decimals.
template <>
struct adl_serializer<symbif::Rational> {
  static void to_json(json &j, const symbif::Rational &q);
  static void from_json(const json &j, symbif::Rational &q);
};

}  // namespace nlohmann

namespace symbif {

using json = nlohmann::json;

void to_json(json &j, const RestrictedWeight &w);
void from_json(const json &j, RestrictedWeight &w);

void to_json(json &j, const SubgroupId &h);
SubgroupId subgroup_from_json(const json &j);

void to_json(json &j, const EulerRingElement &x);
void from_json(const json &j, EulerRingElement &x);

void to_json(json &j, const TorusRepDecomposition &d);
void from_json(const json &j, TorusRepDecomposition &d);

void to_json(json &j, const SpectralLevel &l);
void from_json(const json &j, SpectralLevel &l);

void to_json(json &j, const SystemSignature &s);
void from_json(const json &j, SystemSignature &s);

void to_json(json &j, const BifurcationLevel &l);
void from_json(const json &j, BifurcationLevel &l);

void to_json(json &j, const LedgerEntry &e);
void from_json(const json &j, LedgerEntry &e);

void to_json(json &j, const UnboundednessCertificate &c);
void from_json(const json &j, UnboundednessCertificate &c);

namespace galerkin {
void to_json(json &j, const BranchState &s);
void from_json(const json &j, BranchState &s);
}  // namespace galerkin

/// Space descriptor: {"kind":"sphere","n":2} | {"kind":"product","factors":[2,2]}
/// | {"kind":"generic","gram":[[...]],"rho":[...],"tables":"path"}. A relative
/// tables path is resolved against base_dir.
SymmetricSpaceData space_from_json(const json &j, const std::filesystem::path &base_dir = {});
json space_to_json(const SymmetricSpaceData &space);

/// {"harmonics":[{"alpha":[...],"real_dim":n,"weights":[{"mu":[...],"mult":m},...]},...]}
std::vector<HarmonicTable> tables_from_json(const json &j);

/// Columns: eigenvalue (num/den), alphas, real_dim, k0, then one multiplicity
/// column per subgroup id occurring anywhere in the table.
void write_spectrum_csv(std::ostream &os, const std::vector<SpectralLevel> &levels);

}  // namespace symbif
