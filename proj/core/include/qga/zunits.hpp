#pragma once

// Units of ZG: Bass cyclic units, central units b_(n), bicyclic units, the
// unipotent families V± of a component and free pairs of Sanov type.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qga/algebra.hpp"
#include "qga/primidem.hpp"
#include "qga/shoda.hpp"
#include "qga/wedderburn.hpp"

namespace qga {

enum class UnitKind { Bass, BassCentral, Bicyclic, VPlus, VMinus, FreePairMember };
const char* to_string(UnitKind k);

struct Provenance {
  std::optional<Elem> g;
  std::optional<Elem> h;
  std::optional<std::int64_t> k;
  std::optional<std::size_t> component;
  std::optional<Elem> t;
  std::optional<Elem> t_prime;
  std::optional<std::int64_t> j;
};

struct UnitCertificate {
  AlgElement u;
  AlgElement u_inv;
  UnitKind kind = UnitKind::Bass;
  Provenance provenance;
  bool trivial = false;  ///< u is ±g for a group element g
};

/// u·u_inv = u_inv·u = 1 and both integral.
bool certificate_holds(const UnitCertificate& c);

/// b(g,k) = (Σ_{j<k} g^j)^φ(n) + (1 − k^φ(n))·ĝ, n = ord g. Requires
/// 1 < k < n and gcd(k, n) = 1 (PreconditionError).
UnitCertificate bass_unit(const GroupPtr& group, Elem g, std::int64_t k);

inline constexpr std::size_t kDefaultCentralBudget = 4096;

/// b_(1) = b(g,k), b_(v) = Π_{x∈Z_v} b_(v−1)^x up the upper central series.
/// The inverse is assembled the same way from the certified inverse of
/// b(g,k) and checked exactly. Throws CapExceeded when Π_{v≥2} |Z_v|
/// exceeds `budget` (coefficient growth).
UnitCertificate central_bass_unit(const GroupPtr& group, Elem g, std::int64_t k,
                                  std::size_t budget = kDefaultCentralBudget);

/// u = 1 + (1 − g)·h·Σ_{i<|g|} g^i.
UnitCertificate bicyclic_unit(const GroupPtr& group, Elem g, Elem h);

enum class Sign { plus, minus };

/// Least l >= 1 with a^l·ε central in QNε.
std::int64_t central_power(const SSPRecord& rec);

/// 1 + |G|·t^-1 β_e a^j t' with t' after t (plus) or before t (minus) in T_e,
/// a^j over <a^l> modulo K, ordered by (t, t', j).
std::vector<UnitCertificate> v_generators(const MatrixUnitSystem& sys, Sign sign,
                                          std::size_t component = 0);

using Mat2 = std::array<std::array<Rational, 2>, 2>;

struct FreePair {
  UnitCertificate first;   ///< 1 + |G| E_{tt'}
  UnitCertificate second;  ///< 1 + |G| E_{t't}
  Mat2 image_first;
  Mat2 image_second;
  bool sanov = false;            ///< images are [[1,|G|],[0,1]], [[1,0],[|G|,1]]
  bool star_compatible = false;  ///< star(E_{tt'}) = E_{t't}
};

/// Positions i != j in T_e. PreconditionError when |T_e| = 1 (division
/// component) or i == j.
FreePair free_pair(const MatrixUnitSystem& sys, std::size_t i, std::size_t j,
                   std::size_t component = 0);

/// Matrix of u on the block {E_ii, E_jj}: entry (p,q) is the rational α with
/// E_pp u E_qq = α E_pq, or std::nullopt if some entry is not rational.
std::optional<Mat2> block_coordinates(const MatrixUnitSystem& sys, const AlgElement& u,
                                      std::size_t i, std::size_t j);

/// Every product of |T_e| offsets u_i − 1 vanishes. All generators must be
/// of one sign and one component (PreconditionError).
bool nilpotency_certificate(const std::vector<UnitCertificate>& gens,
                            const MatrixUnitSystem& sys);

struct SkippedUnit {
  Elem g;
  std::int64_t k;
  std::string reason;
};

struct ComponentUnits {
  std::size_t component = 0;
  ComponentDescriptor descriptor;
  std::vector<UnitCertificate> vplus;
  std::vector<UnitCertificate> vminus;
  bool vplus_nilpotent = true;
  bool vminus_nilpotent = true;
  std::optional<FreePair> free_pair;
};

struct GeneratorSuite {
  std::vector<UnitCertificate> central;
  std::vector<SkippedUnit> central_skipped;
  std::vector<ComponentUnits> components;
};

struct SuiteOptions {
  unsigned jobs = 1;
  int xy_height_cap = 6;
  std::size_t central_budget = kDefaultCentralBudget;
};

/// Central units for (g, k) with g the minimal generator of a representative
/// of each conjugacy class of cyclic subgroups and every valid k; V± and a
/// free pair (first two elements of T_e) for every component. G nilpotent.
GeneratorSuite generator_suite(const SSPSearch& search, const SuiteOptions& opts = {});

}  // namespace qga
