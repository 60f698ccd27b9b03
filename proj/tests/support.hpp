#pragma once

#include <algorithm>
#include <optional>

#include "qga/families.hpp"
#include "qga/group.hpp"
#include "qga/shoda.hpp"

namespace qga::testing {

inline Elem first_of_order(const GroupPtr& g, std::size_t order) {
  for (Elem x = 0; x < g->order(); ++x)
    if (g->elem_order(x) == order) return x;
  throw std::runtime_error("no element of that order");
}

inline Subgroup sub(const GroupPtr& g, std::initializer_list<Elem> gens) {
  std::vector<Elem> v(gens);
  return closure(g, v);
}

/// The record whose H is cyclic of order `h_order` containing `x`, with trivial K.
inline std::optional<SSPRecord> faithful_record(const SSPSearch& s, std::size_t h_order) {
  for (const auto& r : s.records)
    if (r.K.is_trivial() && r.H.order() == h_order) return r;
  return std::nullopt;
}

}  // namespace qga::testing
