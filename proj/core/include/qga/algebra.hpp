#pragma once

// Elements of the rational group algebra QG and the basic predicates on them.

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qga/group.hpp"
#include "qga/rational.hpp"

namespace qga {

/// Sparse element of QG. Terms are sorted by element index and never zero.
class AlgElement {
 public:
  using Term = std::pair<Elem, Rational>;

  AlgElement() = default;
  explicit AlgElement(GroupPtr group) : group_(std::move(group)) {}
  /// Terms may be unsorted, repeated, or zero; they are normalized.
  AlgElement(GroupPtr group, std::vector<Term> terms);

  static AlgElement zero(GroupPtr group) { return AlgElement(std::move(group)); }
  static AlgElement one(GroupPtr group) { return basis(std::move(group), 0); }
  static AlgElement basis(GroupPtr group, Elem g, Rational c = 1);
  static AlgElement from_dense(GroupPtr group, std::span<const Rational> coeffs);

  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t support_size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(Elem g) const;
  std::vector<Rational> dense() const;

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(const Rational& r);

  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator-(AlgElement a) { return a *= Rational(-1); }
  friend AlgElement operator*(AlgElement a, const Rational& r) { return a *= r; }
  friend AlgElement operator*(const Rational& r, AlgElement a) { return a *= r; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend bool operator==(const AlgElement& a, const AlgElement& b);
  friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }

 private:
  void check_same(const AlgElement& o) const;
  GroupPtr group_;
  std::vector<Term> terms_;
};

/// Left multiplication by a group element: g·α.
AlgElement left_mul(Elem g, const AlgElement& a);
/// Right multiplication by a group element: α·g.
AlgElement right_mul(const AlgElement& a, Elem g);
/// g^-1 α g
AlgElement conjugate(const AlgElement& a, Elem g);
/// Σ z_g g  ->  Σ z_g g^-1
AlgElement star(const AlgElement& a);
AlgElement scale(const AlgElement& a, const Rational& r);
/// (1/|H|) Σ_{h∈H} h
AlgElement hat(const Subgroup& h);
/// Σ_{h∈H} h
AlgElement subgroup_sum(const Subgroup& h);
Rational augmentation(const AlgElement& a);

bool is_idempotent(const AlgElement& a);
/// Commutes with every group generator.
bool is_central(const AlgElement& a);
bool are_orthogonal(const AlgElement& a, const AlgElement& b);
bool has_integer_coeffs(const AlgElement& a);
/// The common denominator of all coefficients (1 for the zero element).
Integer common_denominator(const AlgElement& a);

struct NotAUnit {
  enum class Reason { singular, non_integral_inverse };
  Reason reason;
};
const char* to_string(NotAUnit::Reason r);

/// Solves u·x = 1 in the regular representation. Returns x when it exists
/// with integer coefficients. Throws PreconditionError when u is not integral.
std::variant<AlgElement, NotAUnit> inverse_in_ZG(const AlgElement& u);
/// Same linear system over Q: the inverse in QG, if any.
std::optional<AlgElement> inverse_in_QG(const AlgElement& u);

/// dim_Q(QG·e) = rank of {g·e : g ∈ G}. Throws PreconditionError unless e is a
/// central idempotent.
std::size_t qdimension(const AlgElement& e);
/// dim_Q Z(QG·e) = rank of {C·e : C a conjugacy class sum}.
std::size_t center_dimension(const AlgElement& e);

}  // namespace qga
