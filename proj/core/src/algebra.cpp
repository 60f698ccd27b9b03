#include "qga/algebra.hpp"

#include <algorithm>

#include "qga/errors.hpp"
#include "qga/linalg.hpp"

namespace qga {

namespace {

void normalize(std::vector<AlgElement::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<AlgElement::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  terms = std::move(out);
}

std::vector<linalg::RatVector> regular_rows(const AlgElement& e, std::span<const AlgElement> gens) {
  std::vector<linalg::RatVector> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back((g * e).dense());
  return rows;
}

}  // namespace

AlgElement::AlgElement(GroupPtr group, std::vector<Term> terms)
    : group_(std::move(group)), terms_(std::move(terms)) {
  normalize(terms_);
  if (!terms_.empty() && terms_.back().first >= group_->order())
    throw PreconditionError("algebra element support outside the group");
}

AlgElement AlgElement::basis(GroupPtr group, Elem g, Rational c) {
  AlgElement a(std::move(group));
  if (c != 0) a.terms_.emplace_back(g, std::move(c));
  return a;
}

AlgElement AlgElement::from_dense(GroupPtr group, std::span<const Rational> coeffs) {
  AlgElement a(std::move(group));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) a.terms_.emplace_back(static_cast<Elem>(i), coeffs[i]);
  }
  return a;
}

Rational AlgElement::coeff(Elem g) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& t, Elem x) { return t.first < x; });
  if (it != terms_.end() && it->first == g) return it->second;
  return Rational(0);
}

std::vector<Rational> AlgElement::dense() const {
  std::vector<Rational> d(group_->order());
  for (const auto& [g, c] : terms_) d[g] = c;
  return d;
}

void AlgElement::check_same(const AlgElement& o) const {
  if (group_ != o.group_ && group_ && o.group_)
    throw PreconditionError("algebra elements over different groups");
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  check_same(o);
  if (!group_) group_ = o.group_;
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].second + o.terms_[j].second;
      if (c != 0) out.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  return *this += o * Rational(-1);
}

AlgElement& AlgElement::operator*=(const Rational& r) {
  if (r == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= r;
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  a.check_same(b);
  const GroupPtr& grp = a.group_ ? a.group_ : b.group_;
  if (a.terms_.empty() || b.terms_.empty()) return AlgElement(grp);
  const GroupTable& g = *grp;
  const Integer da = common_denominator(a), db = common_denominator(b);
  std::vector<Integer> ai, bi;
  ai.reserve(a.terms_.size());
  bi.reserve(b.terms_.size());
  for (const auto& [x, c] : a.terms_) ai.push_back(c.get_num() * (da / c.get_den()));
  for (const auto& [x, c] : b.terms_) bi.push_back(c.get_num() * (db / c.get_den()));
  std::vector<Integer> acc(g.order());
  std::vector<char> touched(g.order(), 0);
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Elem x = a.terms_[i].first;
    for (std::size_t j = 0; j < b.terms_.size(); ++j) {
      const Elem p = g.mul(x, b.terms_[j].first);
      mpz_addmul(acc[p].get_mpz_t(), ai[i].get_mpz_t(), bi[j].get_mpz_t());
      touched[p] = 1;
    }
  }
  const Integer den = da * db;
  AlgElement r(grp);
  for (Elem p = 0; p < g.order(); ++p) {
    if (!touched[p] || acc[p] == 0) continue;
    Rational c(acc[p], den);
    c.canonicalize();
    r.terms_.emplace_back(p, std::move(c));
  }
  return r;
}

bool operator==(const AlgElement& a, const AlgElement& b) {
  a.check_same(b);
  return a.terms_ == b.terms_;
}

AlgElement left_mul(Elem g, const AlgElement& a) {
  std::vector<AlgElement::Term> t;
  t.reserve(a.terms().size());
  for (const auto& [x, c] : a.terms()) t.emplace_back(a.group()->mul(g, x), c);
  return AlgElement(a.group(), std::move(t));
}

AlgElement right_mul(const AlgElement& a, Elem g) {
  std::vector<AlgElement::Term> t;
  t.reserve(a.terms().size());
  for (const auto& [x, c] : a.terms()) t.emplace_back(a.group()->mul(x, g), c);
  return AlgElement(a.group(), std::move(t));
}

AlgElement conjugate(const AlgElement& a, Elem g) {
  std::vector<AlgElement::Term> t;
  t.reserve(a.terms().size());
  for (const auto& [x, c] : a.terms()) t.emplace_back(a.group()->conj(x, g), c);
  return AlgElement(a.group(), std::move(t));
}

AlgElement star(const AlgElement& a) {
  std::vector<AlgElement::Term> t;
  t.reserve(a.terms().size());
  for (const auto& [x, c] : a.terms()) t.emplace_back(a.group()->inv(x), c);
  return AlgElement(a.group(), std::move(t));
}

AlgElement scale(const AlgElement& a, const Rational& r) { return a * r; }

AlgElement subgroup_sum(const Subgroup& h) {
  std::vector<AlgElement::Term> t;
  t.reserve(h.order());
  for (Elem x : h.members()) t.emplace_back(x, Rational(1));
  return AlgElement(h.group(), std::move(t));
}

AlgElement hat(const Subgroup& h) {
  return subgroup_sum(h) * Rational(1, static_cast<unsigned long>(h.order()));
}

Rational augmentation(const AlgElement& a) {
  Rational s(0);
  for (const auto& t : a.terms()) s += t.second;
  return s;
}

bool is_idempotent(const AlgElement& a) { return a * a == a; }

bool is_central(const AlgElement& a) {
  for (Elem g : a.group()->generators()) {
    if (conjugate(a, g) != a) return false;
  }
  return true;
}

bool are_orthogonal(const AlgElement& a, const AlgElement& b) {
  return (a * b).is_zero() && (b * a).is_zero();
}

bool has_integer_coeffs(const AlgElement& a) {
  return std::all_of(a.terms().begin(), a.terms().end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

Integer common_denominator(const AlgElement& a) {
  Integer l = 1;
  for (const auto& t : a.terms()) {
    if (t.second.get_den() != 1)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den().get_mpz_t());
  }
  return l;
}

const char* to_string(NotAUnit::Reason r) {
  return r == NotAUnit::Reason::singular ? "singular" : "non-integral-inverse";
}

namespace {

std::optional<linalg::RatVector> solve_regular(const GroupTable& g,
                                               const std::vector<AlgElement::Term>& terms) {
  const std::size_t n = g.order();
  // (u x)_p = Σ_h u_{p h^-1} x_h
  std::vector<linalg::RatVector> a(n, linalg::RatVector(n));
  for (const auto& [y, c] : terms) {
    for (Elem h = 0; h < n; ++h) a[g.mul(y, h)][h] = c;
  }
  linalg::RatVector b(n);
  b[0] = 1;
  auto s = linalg::solve(a, b);
  if (!s || !s->unique) return std::nullopt;
  return std::move(s->x);
}

}  // namespace

std::optional<AlgElement> inverse_in_QG(const AlgElement& u) {
  // The inverse of u lies in Q<supp u>, so solve there.
  std::vector<Elem> supp{0};
  for (const auto& t : u.terms()) supp.push_back(t.first);
  const Subgroup l = closure(u.group(), supp);
  std::optional<AlgElement> x;
  if (l.is_whole()) {
    auto sol = solve_regular(*u.group(), u.terms());
    if (!sol) return std::nullopt;
    x = AlgElement::from_dense(u.group(), *sol);
  } else {
    const Embedding emb = subgroup_table(l);
    std::vector<AlgElement::Term> local;
    for (const auto& [g, c] : u.terms()) local.emplace_back(emb.from_parent[g], c);
    auto sol = solve_regular(*emb.table, local);
    if (!sol) return std::nullopt;
    std::vector<AlgElement::Term> back;
    for (Elem i = 0; i < sol->size(); ++i)
      if (sgn((*sol)[i]) != 0) back.emplace_back(emb.to_parent[i], (*sol)[i]);
    x = AlgElement(u.group(), std::move(back));
  }
  const AlgElement one = AlgElement::one(u.group());
  if (!(u * *x == one) || !(*x * u == one))
    throw VerificationError("inverse_in_QG: two-sided inverse check failed");
  return x;
}

std::variant<AlgElement, NotAUnit> inverse_in_ZG(const AlgElement& u) {
  if (!has_integer_coeffs(u)) throw PreconditionError("inverse_in_ZG: coefficients not integral");
  auto x = inverse_in_QG(u);
  if (!x) return NotAUnit{NotAUnit::Reason::singular};
  if (!has_integer_coeffs(*x)) return NotAUnit{NotAUnit::Reason::non_integral_inverse};
  return std::move(*x);
}

std::size_t qdimension(const AlgElement& e) {
  if (!is_idempotent(e) || !is_central(e))
    throw PreconditionError("qdimension: not a central idempotent");
  const GroupTable& g = *e.group();
  std::vector<linalg::RatVector> rows;
  rows.reserve(g.order());
  for (Elem x = 0; x < g.order(); ++x) rows.push_back(left_mul(x, e).dense());
  return linalg::rank(rows);
}

std::size_t center_dimension(const AlgElement& e) {
  if (!is_idempotent(e) || !is_central(e))
    throw PreconditionError("center_dimension: not a central idempotent");
  std::vector<AlgElement> sums;
  for (const auto& cls : conjugacy_classes(e.group())) {
    std::vector<AlgElement::Term> t;
    for (Elem x : cls) t.emplace_back(x, Rational(1));
    sums.emplace_back(e.group(), std::move(t));
  }
  return linalg::rank(regular_rows(e, sums));
}

}  // namespace qga
