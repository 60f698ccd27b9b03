#pragma once

// Group constructors and the group-spec grammar:
//   cyclic:n | dihedral:n | quaternion:n | p1:p,n,k,r | p2:n,k,r | p3:n,k,r |
//   sl23 | product:SPEC*SPEC | perm:(1 2 3)(4 5),(1 2) | table:path

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qga/group.hpp"

namespace qga {

/// Parses and builds a group. Throws SpecError on malformed specs or bad
/// parameters, CapExceeded when the order would exceed `cap`.
GroupPtr build_family(std::string_view spec, std::size_t cap = kDefaultOrderCap);

/// Generators {g}.
GroupPtr cyclic_group(std::int64_t n);
/// Order n (even, >= 4). Generators {a, b}: a rotation, b reflection.
GroupPtr dihedral_group(std::int64_t n);
/// Generalized quaternion of order n = 2^t >= 8. Generators {a, b} with
/// b^2 = a^(n/4), b^-1 a b = a^-1.
GroupPtr quaternion_group(std::int64_t n);
/// <a,b | a^(p^n) = b^(p^k) = 1, b^-1 a b = a^r>. Generators {a, b}.
GroupPtr p1_group(std::int64_t p, std::int64_t n, std::int64_t k, std::int64_t r);
/// <a,b,c | a^(2^n) = b^(2^k) = 1, c^2 = 1, bc = cb, b^-1ab = a^r, c^-1ac = a^-1>.
GroupPtr p2_group(std::int64_t n, std::int64_t k, std::int64_t r);
/// As p2_group with c^2 = a^(2^(n-1)).
GroupPtr p3_group(std::int64_t n, std::int64_t k, std::int64_t r);
/// SL(2,3) as 2x2 matrices over F_3. Generators {x, y, a}: <x, y> is the
/// quaternion subgroup and a has order 3.
GroupPtr sl23_group();
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, std::size_t cap = kDefaultOrderCap);
/// Permutations act on points 1..degree; product x*y applies x first.
GroupPtr permutation_group(const std::vector<std::vector<std::uint32_t>>& generators,
                           std::size_t cap = kDefaultOrderCap, std::string name = "perm");
GroupPtr table_group_from_file(const std::string& path, std::size_t cap = kDefaultOrderCap);

}  // namespace qga
