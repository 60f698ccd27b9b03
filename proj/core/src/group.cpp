#include "qga/group.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "qga/errors.hpp"
#include "qga/numtheory.hpp"

namespace qga {

namespace {

struct MaskHash {
  std::size_t operator()(const std::vector<std::uint64_t>& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : m) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::vector<std::uint64_t> make_mask(std::size_t n, const std::vector<Elem>& members) {
  std::vector<std::uint64_t> mask((n + 63) / 64, 0);
  for (Elem g : members) mask[g >> 6] |= std::uint64_t{1} << (g & 63);
  return mask;
}

/// Closure of `start` (already a subset containing the identity, closed or
/// not) under right multiplication by `gens`.
std::vector<Elem> close_from(const GroupTable& g, std::vector<Elem> start,
                             std::span<const Elem> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> out;
  out.reserve(g.order());
  auto push = [&](Elem x) {
    if (!seen[x]) {
      seen[x] = 1;
      out.push_back(x);
    }
  };
  push(0);
  for (Elem x : start) push(x);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem s : gens) push(g.mul(out[i], s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> greedy_generators(const GroupTable& g) {
  std::vector<Elem> gens;
  std::vector<Elem> current{0};
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  for (Elem x = 1; x < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    current = close_from(g, current, gens);
    std::fill(in.begin(), in.end(), 0);
    for (Elem y : current) in[y] = 1;
  }
  return gens;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupTable

GroupTable::GroupTable(std::string name, std::size_t order, std::vector<Elem> product,
                       std::vector<Elem> generators, bool check_axioms)
    : name_(std::move(name)),
      order_(order),
      product_(std::move(product)),
      generators_(std::move(generators)) {
  if (order_ == 0) throw SpecError("group order must be positive");
  if (product_.size() != order_ * order_)
    throw SpecError("Cayley table has wrong size");
  for (Elem x : product_) {
    if (x >= order_) throw SpecError("Cayley table entry out of range");
  }
  for (Elem a = 0; a < order_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a)
      throw SpecError("element 0 is not the identity");
  }
  // Latin square: every row and column is a permutation.
  std::vector<char> seen(order_);
  for (Elem a = 0; a < order_ && check_axioms; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem b = 0; b < order_; ++b) {
      if (seen[mul(a, b)]++) throw SpecError("Cayley table row is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem b = 0; b < order_; ++b) {
      if (seen[mul(b, a)]++) throw SpecError("Cayley table column is not a permutation");
    }
  }
  inverse_.assign(order_, 0);
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
    }
    if (mul(inverse_[a], a) != 0) throw SpecError("left and right inverses differ");
  }
  for (Elem a = 0; a < order_ && check_axioms; ++a) {
    for (Elem b = 0; b < order_; ++b) {
      const Elem ab = mul(a, b);
      for (Elem c = 0; c < order_; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c)))
          throw SpecError("Cayley table is not associative");
      }
    }
  }
  for (Elem g : generators_) {
    if (g >= order_) throw SpecError("generator index out of range");
  }
  if (generators_.empty() && order_ > 1) {
    generators_ = greedy_generators(*this);
  } else if (check_axioms && close_from(*this, {}, generators_).size() != order_) {
    throw SpecError("generators do not generate the group");
  }
  elem_order_.assign(order_, 1);
  for (Elem a = 0; a < order_; ++a) {
    Elem x = a;
    std::size_t k = 1;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    elem_order_[a] = k;
  }
}

Elem GroupTable::pow(Elem a, std::int64_t e) const noexcept {
  const auto n = static_cast<std::int64_t>(elem_order_[a]);
  e = nt::mod(e, n);
  Elem r = 0;
  for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool GroupTable::is_abelian() const noexcept {
  for (Elem a = 0; a < order_; ++a) {
    for (Elem b = a + 1; b < order_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

GroupPtr make_group(std::string name, std::size_t order, std::vector<Elem> product,
                    std::vector<Elem> generators) {
  return std::make_shared<const GroupTable>(std::move(name), order, std::move(product),
                                            std::move(generators));
}

GroupPtr make_derived_group(std::string name, std::size_t order, std::vector<Elem> product,
                            std::vector<Elem> generators) {
  return std::make_shared<const GroupTable>(std::move(name), order, std::move(product),
                                            std::move(generators), false);
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(GroupPtr group, std::vector<Elem> members)
    : group_(std::move(group)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  mask_ = make_mask(group_->order(), members_);
}

bool Subgroup::is_subset_of(const Subgroup& other) const noexcept {
  if (members_.size() > other.members_.size()) return false;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] & ~other.mask_[i]) return false;
  }
  return true;
}

bool operator<(const Subgroup& a, const Subgroup& b) noexcept {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members_ < b.members_;
}

Subgroup closure(const GroupPtr& group, std::span<const Elem> generators) {
  return Subgroup(group, close_from(*group, {}, generators));
}

Subgroup trivial_subgroup(const GroupPtr& group) { return Subgroup(group, {0}); }

Subgroup whole_group(const GroupPtr& group) {
  std::vector<Elem> all(group->order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(group, std::move(all));
}

Subgroup cyclic_subgroup(const GroupPtr& group, Elem g) {
  std::vector<Elem> m;
  Elem x = 0;
  do {
    m.push_back(x);
    x = group->mul(x, g);
  } while (x != 0);
  return Subgroup(group, std::move(m));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> m;
  for (Elem x : a.members()) {
    if (b.contains(x)) m.push_back(x);
  }
  return Subgroup(a.group(), std::move(m));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens(a.members());
  gens.insert(gens.end(), b.members().begin(), b.members().end());
  return Subgroup(a.group(), close_from(*a.group(), a.members(), gens));
}

Subgroup conjugate(const Subgroup& s, Elem g) {
  std::vector<Elem> m;
  m.reserve(s.order());
  for (Elem x : s.members()) m.push_back(s.group()->conj(x, g));
  return Subgroup(s.group(), std::move(m));
}

bool is_cyclic(const Subgroup& s) {
  const auto& g = *s.group();
  return std::any_of(s.members().begin(), s.members().end(),
                     [&](Elem x) { return g.elem_order(x) == s.order(); });
}

std::vector<Subgroup> subgroups(const GroupPtr& group, std::size_t cap) {
  const auto& g = *group;
  if (g.order() > cap) throw CapExceeded("group order exceeds cap in subgroup enumeration");

  struct Node {
    std::vector<Elem> members;
    std::vector<Elem> gens;
  };
  std::unordered_set<std::vector<std::uint64_t>, MaskHash> seen;
  std::vector<Node> all;
  std::vector<Elem> cyclic_gens;

  for (Elem x = 0; x < g.order(); ++x) {
    std::vector<Elem> m = close_from(g, {}, std::span<const Elem>(&x, 1));
    if (seen.insert(make_mask(g.order(), m)).second) {
      all.push_back({std::move(m), {x}});
      cyclic_gens.push_back(x);
    }
  }

  std::size_t layer_begin = 0;
  std::size_t layer_end = all.size();
  while (layer_begin < layer_end) {
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      std::vector<char> in(g.order(), 0);
      for (Elem y : all[i].members) in[y] = 1;
      for (Elem c : cyclic_gens) {
        if (in[c]) continue;
        std::vector<Elem> gens = all[i].gens;
        gens.push_back(c);
        std::vector<Elem> m = close_from(g, all[i].members, gens);
        if (seen.insert(make_mask(g.order(), m)).second) {
          all.push_back({std::move(m), std::move(gens)});
        }
      }
    }
    layer_begin = layer_end;
    layer_end = all.size();
  }

  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& node : all) out.emplace_back(group, std::move(node.members));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup normalizer_in(const Subgroup& within, const Subgroup& k) {
  const auto& g = *k.group();
  std::vector<Elem> m;
  for (Elem x : within.members()) {
    bool ok = true;
    for (Elem y : k.members()) {
      if (!k.contains(g.conj(y, x))) {
        ok = false;
        break;
      }
    }
    if (ok) m.push_back(x);
  }
  return Subgroup(k.group(), std::move(m));
}

Subgroup normalizer(const Subgroup& k) { return normalizer_in(whole_group(k.group()), k); }

Subgroup centralizer_of(const GroupPtr& group, std::span<const Elem> elems) {
  std::vector<Elem> m;
  for (Elem x = 0; x < group->order(); ++x) {
    bool ok = std::all_of(elems.begin(), elems.end(),
                          [&](Elem y) { return group->mul(x, y) == group->mul(y, x); });
    if (ok) m.push_back(x);
  }
  return Subgroup(group, std::move(m));
}

Subgroup center(const GroupPtr& group) { return centralizer_of(group, whole_group(group).members()); }

bool is_normal_in(const Subgroup& k, const Subgroup& within) {
  const auto& g = *k.group();
  for (Elem x : within.members()) {
    for (Elem y : k.members()) {
      if (!k.contains(g.conj(y, x))) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& k) { return is_normal_in(k, whole_group(k.group())); }

Subgroup normal_closure(const GroupPtr& group, std::span<const Elem> elems) {
  std::vector<char> seen(group->order(), 0);
  std::vector<Elem> gens;
  for (Elem y : elems) {
    for (Elem x = 0; x < group->order(); ++x) {
      Elem c = group->conj(y, x);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  return closure(group, gens);
}

std::vector<Elem> left_transversal(const Subgroup& s) {
  const auto& g = *s.group();
  std::vector<char> covered(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (Elem y : s.members()) covered[g.mul(x, y)] = 1;
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Embedding / quotient

Subgroup Embedding::pull(const Subgroup& parent_sub) const {
  std::vector<Elem> m;
  for (Elem x : parent_sub.members()) {
    if (from_parent[x] != npos) m.push_back(from_parent[x]);
  }
  return Subgroup(table, std::move(m));
}

Subgroup Embedding::push(const Subgroup& local_sub) const {
  std::vector<Elem> m;
  m.reserve(local_sub.order());
  for (Elem x : local_sub.members()) m.push_back(to_parent[x]);
  return Subgroup(image.group(), std::move(m));
}

Embedding subgroup_table(const Subgroup& s, std::string name) {
  const auto& g = *s.group();
  const std::size_t n = s.order();
  Embedding emb;
  emb.image = s;
  emb.to_parent = s.members();
  emb.from_parent.assign(g.order(), Embedding::npos);
  for (std::size_t i = 0; i < n; ++i) emb.from_parent[s.members()[i]] = static_cast<Elem>(i);
  std::vector<Elem> product(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      product[i * n + j] = emb.from_parent[g.mul(s.members()[i], s.members()[j])];
    }
  }
  if (name.empty()) name = g.name() + "/sub" + std::to_string(n);
  emb.table = make_derived_group(std::move(name), n, std::move(product), {});
  return emb;
}

Subgroup QuotientMap::image(const Subgroup& s) const {
  std::vector<Elem> m;
  m.reserve(s.order());
  for (Elem x : s.members()) m.push_back(projection[x]);
  return Subgroup(target, std::move(m));
}

Subgroup QuotientMap::preimage(const Subgroup& t) const {
  std::vector<Elem> m;
  for (Elem x = 0; x < source->order(); ++x) {
    if (t.contains(projection[x])) m.push_back(x);
  }
  return Subgroup(source, std::move(m));
}

QuotientMap quotient(const Subgroup& kernel) {
  if (!is_normal(kernel)) throw PreconditionError("quotient: subgroup is not normal");
  const auto& g = *kernel.group();
  QuotientMap q;
  q.source = kernel.group();
  q.kernel = kernel;
  q.projection.assign(g.order(), Embedding::npos);
  for (Elem x = 0; x < g.order(); ++x) {
    if (q.projection[x] != Embedding::npos) continue;
    const auto id = static_cast<Elem>(q.lift.size());
    q.lift.push_back(x);
    for (Elem k : kernel.members()) q.projection[g.mul(x, k)] = id;
  }
  const std::size_t m = q.lift.size();
  std::vector<Elem> product(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      product[i * m + j] = q.projection[g.mul(q.lift[i], q.lift[j])];
    }
  }
  std::vector<Elem> gens;
  for (Elem s : g.generators()) {
    Elem p = q.projection[s];
    if (p != 0 && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
  }
  auto tmp = make_derived_group(g.name() + "/K", m, product, {});
  if (closure(tmp, gens).order() != m) gens = tmp->generators();
  q.target = make_derived_group(g.name() + "/" + std::to_string(kernel.order()), m, std::move(product),
                        std::move(gens));
  return q;
}

// ---------------------------------------------------------------------------
// Normal structure and series

std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& group) {
  if (group->order() == 1) throw PreconditionError("trivial group has no minimal normal subgroups");
  std::vector<Subgroup> closures;
  std::vector<char> covered(group->order(), 0);
  for (Elem x = 1; x < group->order(); ++x) {
    Elem one[] = {x};
    Subgroup nc = normal_closure(group, one);
    if (std::find(closures.begin(), closures.end(), nc) == closures.end())
      closures.push_back(std::move(nc));
  }
  std::vector<Subgroup> minimal;
  for (const auto& c : closures) {
    bool is_min = std::none_of(closures.begin(), closures.end(), [&](const Subgroup& d) {
      return d.order() < c.order() && d.is_subset_of(c);
    });
    if (is_min) minimal.push_back(c);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

NilpotencyData nilpotency_data(const GroupPtr& group) {
  const auto& g = *group;
  NilpotencyData d;
  auto next_center = [&](const Subgroup& z) {
    std::vector<Elem> m;
    for (Elem x = 0; x < g.order(); ++x) {
      bool ok = true;
      for (Elem y = 0; y < g.order() && ok; ++y) ok = z.contains(g.comm(x, y));
      if (ok) m.push_back(x);
    }
    return Subgroup(group, std::move(m));
  };
  Subgroup z = next_center(trivial_subgroup(group));
  d.upper_central_series.push_back(z);
  while (!z.is_whole()) {
    Subgroup next = next_center(z);
    if (next == z) break;
    d.upper_central_series.push_back(next);
    z = std::move(next);
  }
  const Subgroup& top = d.upper_central_series.back();
  d.is_nilpotent = top.is_whole();
  if (d.is_nilpotent) {
    d.nilpotency_class = g.order() == 1 ? 0 : d.upper_central_series.size();
    for (auto p : nt::prime_factors(static_cast<std::int64_t>(g.order()))) {
      std::vector<Elem> m;
      for (Elem x = 0; x < g.order(); ++x) {
        if (nt::is_power_of(static_cast<std::int64_t>(g.elem_order(x)), p)) m.push_back(x);
      }
      d.sylow.emplace(static_cast<std::uint32_t>(p), Subgroup(group, std::move(m)));
    }
  }
  return d;
}

std::vector<std::vector<Elem>> conjugacy_classes(const GroupPtr& group) {
  const auto& g = *group;
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Elem>> classes;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls;
    for (Elem y = 0; y < g.order(); ++y) {
      Elem c = g.conj(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::size_t rational_class_count(const GroupPtr& group) {
  const auto& g = *group;
  std::vector<char> seen(g.order(), 0);
  std::size_t count = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++count;
    const auto n = static_cast<std::int64_t>(g.elem_order(x));
    for (std::int64_t k = 1; k <= n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      const Elem xk = g.pow(x, k);
      for (Elem y = 0; y < g.order(); ++y) seen[g.conj(xk, y)] = 1;
    }
  }
  return count;
}

}  // namespace qga
