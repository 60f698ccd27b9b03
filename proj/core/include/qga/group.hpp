#pragma once

// Finite groups given by a dense Cayley table, and the subgroup machinery the
// rest of the library is built on (lattice, normalizers, quotients, series).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qga {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 256;

/// A finite group as an indexed Cayley table. Index 0 is the identity.
/// Instances are immutable and shared through GroupPtr.
class GroupTable {
 public:
  /// `product` is row-major: product[a * order + b] = a*b. Throws SpecError
  /// if the table is not a group. `check_axioms = false` skips the Latin
  /// square and associativity scans; only use it for tables derived from an
  /// already validated group (subgroups, quotients).
  GroupTable(std::string name, std::size_t order, std::vector<Elem> product,
             std::vector<Elem> generators, bool check_axioms = true);

  std::size_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Elem>& generators() const noexcept { return generators_; }

  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const noexcept { return product_[a * order_ + b]; }
  Elem inv(Elem a) const noexcept { return inverse_[a]; }
  /// g^-1 x g
  Elem conj(Elem x, Elem g) const noexcept { return mul(inverse_[g], mul(x, g)); }
  /// a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const noexcept {
    return mul(mul(inverse_[a], inverse_[b]), mul(a, b));
  }
  Elem pow(Elem a, std::int64_t e) const noexcept;
  std::size_t elem_order(Elem a) const noexcept { return elem_order_[a]; }
  bool is_abelian() const noexcept;

  std::span<const Elem> row(Elem a) const noexcept {
    return {product_.data() + a * order_, order_};
  }

 private:
  std::string name_;
  std::size_t order_;
  std::vector<Elem> product_;
  std::vector<Elem> inverse_;
  std::vector<std::size_t> elem_order_;
  std::vector<Elem> generators_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

GroupPtr make_group(std::string name, std::size_t order, std::vector<Elem> product,
                    std::vector<Elem> generators);
/// Table derived from a validated group; skips the exhaustive axiom scans.
GroupPtr make_derived_group(std::string name, std::size_t order, std::vector<Elem> product,
                            std::vector<Elem> generators);

/// A subset of element indices closed under the product of its parent group.
/// Members are kept sorted; the constructor does not check closure (use
/// `closure` to build one from generators).
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr group, std::vector<Elem> members);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t order() const noexcept { return members_.size(); }
  const std::vector<Elem>& members() const noexcept { return members_; }
  bool contains(Elem g) const noexcept {
    return (mask_[g >> 6] >> (g & 63)) & 1u;
  }
  bool is_subset_of(const Subgroup& other) const noexcept;
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return group_ && members_.size() == group_->order(); }
  const std::vector<std::uint64_t>& mask() const noexcept { return mask_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.members_ == b.members_;
  }
  /// Canonical order: (order, lexicographic member list).
  friend bool operator<(const Subgroup& a, const Subgroup& b) noexcept;

 private:
  GroupPtr group_;
  std::vector<Elem> members_;
  std::vector<std::uint64_t> mask_;
};

Subgroup closure(const GroupPtr& group, std::span<const Elem> generators);
Subgroup trivial_subgroup(const GroupPtr& group);
Subgroup whole_group(const GroupPtr& group);
Subgroup cyclic_subgroup(const GroupPtr& group, Elem g);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
/// Subgroup generated by a ∪ b.
Subgroup join(const Subgroup& a, const Subgroup& b);
/// g^-1 S g
Subgroup conjugate(const Subgroup& s, Elem g);
bool is_cyclic(const Subgroup& s);

/// Every subgroup exactly once, sorted canonically. Layered closure: cyclic
/// subgroups first, then joins with cyclic subgroups until nothing new appears.
std::vector<Subgroup> subgroups(const GroupPtr& group, std::size_t cap = kDefaultOrderCap);

Subgroup normalizer(const Subgroup& k);
/// Normalizer of k inside the subgroup `within`.
Subgroup normalizer_in(const Subgroup& within, const Subgroup& k);
Subgroup centralizer_of(const GroupPtr& group, std::span<const Elem> elems);
Subgroup center(const GroupPtr& group);
/// k normal in its parent group.
bool is_normal(const Subgroup& k);
/// k normal in `within` (k must be a subset of `within`).
bool is_normal_in(const Subgroup& k, const Subgroup& within);
Subgroup normal_closure(const GroupPtr& group, std::span<const Elem> elems);

/// Left coset representatives g·S of minimal element index, ascending.
std::vector<Elem> left_transversal(const Subgroup& s);

/// A subgroup materialized as a group of its own. Member i of the subgroup
/// becomes element i of `table`, so index order is preserved.
struct Embedding {
  GroupPtr table;
  Subgroup image;
  std::vector<Elem> to_parent;
  /// parent index -> local index (or npos when outside the subgroup)
  std::vector<Elem> from_parent;
  static constexpr Elem npos = static_cast<Elem>(-1);

  Subgroup pull(const Subgroup& parent_sub) const;  ///< parent ∩ image, locally
  Subgroup push(const Subgroup& local_sub) const;   ///< local -> parent
};

Embedding subgroup_table(const Subgroup& s, std::string name = {});

/// Natural projection onto G/K. Cosets are numbered by their minimal member,
/// so `lift[q]` (the minimal member of coset q) is increasing in q.
struct QuotientMap {
  GroupPtr source;
  Subgroup kernel;
  GroupPtr target;
  std::vector<Elem> projection;
  std::vector<Elem> lift;

  Subgroup image(const Subgroup& s) const;
  Subgroup preimage(const Subgroup& t) const;
};

QuotientMap quotient(const Subgroup& kernel);

std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& group);

struct NilpotencyData {
  bool is_nilpotent = false;
  std::size_t nilpotency_class = 0;
  /// Z_1 <= Z_2 <= ... up to the point the series stabilizes.
  std::vector<Subgroup> upper_central_series;
  /// Sylow subgroups by prime; filled only for nilpotent groups.
  std::map<std::uint32_t, Subgroup> sylow;
};

NilpotencyData nilpotency_data(const GroupPtr& group);

std::vector<std::vector<Elem>> conjugacy_classes(const GroupPtr& group);

/// Classes of g ~ x^-1 g^k x with gcd(k, ord g) = 1.
std::size_t rational_class_count(const GroupPtr& group);

}  // namespace qga
