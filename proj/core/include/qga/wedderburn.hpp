#pragma once

// Wedderburn component descriptors: QGe ≅ M_n(D) read off a strong Shoda pair.

#include <cstdint>
#include <optional>
#include <vector>

#include "qga/primidem.hpp"
#include "qga/shoda.hpp"

namespace qga {

/// Q(ζ_conductor)^S with S = fixed_under ⊆ (Z/conductor)^*.
struct CenterSpec {
  std::int64_t conductor = 1;
  std::vector<std::int64_t> fixed_under;

  std::size_t degree() const;  ///< [F:Q]
  bool is_real() const;
};

enum class DivisionPart { field, quaternion, unresolved };
const char* to_string(DivisionPart d);

/// [n_i, n_j] K = a^exponent K for coset representatives n_i, n_j of N/H.
struct Twist {
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t exponent = 0;
};

struct ComponentDescriptor {
  std::int64_t m = 1;   ///< [H:K]
  std::size_t r = 1;    ///< [G:N]
  std::vector<Elem> action_reps;             ///< representatives of N/H
  std::vector<std::int64_t> action_exponents;  ///< n^-1 a n ≡ a^i mod K, per rep
  std::vector<Twist> twisting;
  CenterSpec center;
  std::size_t degree = 1;  ///< matrix size over the division part
  DivisionPart division = DivisionPart::unresolved;
  bool exceptional = false;
  int schur_index = 0;     ///< 0 when unresolved
  std::optional<CaseTag> case_tag;
};

/// With `resolve`, G must be nilpotent (PreconditionError otherwise) and the
/// division part is determined through the case split. Without it only the
/// crossed-product data is filled in.
ComponentDescriptor describe_component(const SSPRecord& rec, bool resolve = true);

/// Non-commutative division algebra other than a totally definite quaternion
/// algebra, or M_2 over Q, an imaginary quadratic field or a non-commutative
/// division algebra.
bool is_exceptional(const ComponentDescriptor& d);

struct RoquetteReport {
  bool ok = true;  ///< every index <= 2 and index 2 means quaternion
  std::vector<std::size_t> schur_violations;     ///< record indices
  std::vector<std::size_t> non_real_quaternion;  ///< index-2 with non-real center
};

RoquetteReport roquette_check(const std::vector<ComponentDescriptor>& descriptors);

}  // namespace qga
