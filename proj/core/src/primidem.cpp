#include "qga/primidem.hpp"

#include <algorithm>
#include <string>

#include "primidem_detail.hpp"
#include "qga/errors.hpp"
#include "qga/numtheory.hpp"

namespace qga {

const char* to_string(PresentationTag t) {
  switch (t) {
    case PresentationTag::P1: return "P1";
    case PresentationTag::P2: return "P2";
    case PresentationTag::P3: return "P3";
  }
  return "?";
}

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::c1i: return "1.i";
    case CaseTag::c1ii: return "1.ii";
    case CaseTag::c2i: return "2.i";
    case CaseTag::c2ii: return "2.ii";
  }
  return "?";
}

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Exponent table of a cyclic group <a>: expo[a^j] = j, -1 outside.
std::vector<std::int64_t> exponents(const GroupTable& q, Elem a) {
  std::vector<std::int64_t> expo(q.order(), -1);
  Elem x = 0;
  for (std::size_t j = 0; j < q.elem_order(a); ++j) {
    expo[x] = static_cast<std::int64_t>(j);
    x = q.mul(x, a);
  }
  return expo;
}

/// Smallest t >= 1 with g^t in s.
std::size_t coset_order(const GroupTable& q, const Subgroup& s, Elem g) {
  std::size_t t = 1;
  Elem x = g;
  while (!s.contains(x)) {
    x = q.mul(x, g);
    ++t;
  }
  return t;
}

Subgroup elements_of_order_dividing(const GroupPtr& q, bool two_part) {
  std::vector<Elem> members;
  for (Elem g = 0; g < q->order(); ++g) {
    const bool is_two = nt::is_power_of(static_cast<std::int64_t>(q->elem_order(g)), 2);
    const bool is_odd = q->elem_order(g) % 2 == 1;
    if (two_part ? is_two : is_odd) members.push_back(g);
  }
  return Subgroup(q, std::move(members));
}

}  // namespace

Presentation recognize_presentation(const GroupPtr& q, const Subgroup& a_sub,
                                    std::optional<Elem> preferred_a) {
  const GroupTable& Q = *q;
  const auto ord = static_cast<std::int64_t>(Q.order());
  Presentation pres;
  if (ord == 1) return pres;
  const auto primes = nt::prime_factors(ord);
  if (primes.size() != 1) throw PreconditionError("recognize_presentation: not a p-group");
  const std::int64_t p = primes[0];
  if (!is_cyclic(a_sub) || !is_normal(a_sub))
    throw PreconditionError("recognize_presentation: A must be cyclic and normal");
  if (!(centralizer_of(q, a_sub.members()) == a_sub))
    throw PreconditionError("recognize_presentation: A is not maximal abelian");

  Elem a = 0;
  if (preferred_a) {
    if (!a_sub.contains(*preferred_a) || Q.elem_order(*preferred_a) != a_sub.order())
      throw PreconditionError("recognize_presentation: preferred element does not generate A");
    a = *preferred_a;
  } else {
    for (Elem g : a_sub.members())
      if (Q.elem_order(g) == a_sub.order()) {
        a = g;
        break;
      }
  }
  const auto expo = exponents(Q, a);
  const std::int64_t n = nt::log_exact(static_cast<std::int64_t>(a_sub.order()), p);
  const std::int64_t idx = ord / static_cast<std::int64_t>(a_sub.order());
  const std::int64_t k_total = nt::log_exact(idx, p);

  pres.p = p;
  pres.n = n;
  pres.a = a;

  // Split cyclic extension: b with bA of order [Q:A] and b^[Q:A] = 1.
  for (Elem b = 0; b < Q.order(); ++b) {
    if (static_cast<std::int64_t>(coset_order(Q, a_sub, b)) != idx) continue;
    if (Q.pow(b, idx) != 0) continue;
    pres.tag = PresentationTag::P1;
    pres.k = k_total;
    pres.b = b;
    pres.r = expo[Q.conj(a, b)];
    if (!presentation_holds(q, pres))
      throw VerificationError("recognize_presentation: P1 relations fail");
    return pres;
  }

  if (p != 2 || n < 1)
    throw VerificationError("recognize_presentation: no presentation found for " + Q.name());
  const std::int64_t half = idx / 2;
  const Elem inv_a = Q.inv(a);
  const Elem central_sq = Q.pow(a, ipow(2, n - 1));
  for (const PresentationTag tag : {PresentationTag::P2, PresentationTag::P3}) {
    const Elem target = tag == PresentationTag::P2 ? Elem{0} : central_sq;
    for (Elem b = 0; b < Q.order(); ++b) {
      const std::int64_t r = expo[Q.conj(a, b)];
      if (r < 0 || (n >= 2 && r % 4 != 1)) continue;
      if (static_cast<std::int64_t>(coset_order(Q, a_sub, b)) != half) continue;
      if (Q.pow(b, half) != 0) continue;
      const Elem ab[] = {a, b};
      const Subgroup a_b = closure(q, ab);
      for (Elem c = 0; c < Q.order(); ++c) {
        if (a_b.contains(c) || Q.conj(a, c) != inv_a) continue;
        if (Q.mul(b, c) != Q.mul(c, b) || Q.mul(c, c) != target) continue;
        pres.tag = tag;
        pres.k = k_total - 1;
        pres.b = b;
        pres.c = c;
        pres.r = r;
        if (!presentation_holds(q, pres))
          throw VerificationError("recognize_presentation: relations fail");
        return pres;
      }
    }
  }
  throw VerificationError("recognize_presentation: no presentation found for " + Q.name());
}

bool presentation_holds(const GroupPtr& q, const Presentation& pres) {
  const GroupTable& Q = *q;
  const std::int64_t pn = ipow(pres.p, pres.n);
  const std::int64_t pk = ipow(pres.p, pres.k);
  if (static_cast<std::int64_t>(Q.elem_order(pres.a)) != pn) return false;
  if (Q.pow(pres.b, pk) != 0) return false;
  if (Q.conj(pres.a, pres.b) != Q.pow(pres.a, pres.r)) return false;
  std::vector<Elem> gens{pres.a, pres.b};
  std::int64_t expected = pn * pk;
  if (pres.tag != PresentationTag::P1) {
    if (pres.p != 2 || pres.n < 1) return false;
    const Elem sq = pres.tag == PresentationTag::P2 ? Elem{0} : Q.pow(pres.a, pn / 2);
    if (Q.mul(pres.c, pres.c) != sq) return false;
    if (Q.mul(pres.b, pres.c) != Q.mul(pres.c, pres.b)) return false;
    if (Q.conj(pres.a, pres.c) != Q.inv(pres.a)) return false;
    gens.push_back(pres.c);
    expected *= 2;
  }
  if (static_cast<std::int64_t>(Q.order()) != expected) return false;
  return closure(q, gens).is_whole();
}

namespace detail {

AlgElement build_beta(const SSPRecord& rec, const CaseData& cd, const AlgElement* x,
                      const AlgElement* y) {
  const GroupPtr& g = rec.H.group();
  AlgElement beta2(g);
  switch (cd.tag) {
    case CaseTag::c1i:
    case CaseTag::c1ii:
      beta2 = hat(*cd.M2);
      break;
    case CaseTag::c2i:
      beta2 = hat(*cd.B2);
      break;
    case CaseTag::c2ii: {
      if (!x || !y) throw PreconditionError("build_beta: case 2.ii needs x and y");
      const Elem w = g->pow(cd.a2, ipow(2, cd.n - 2));
      AlgElement inner = AlgElement::one(g) + right_mul(*x, w) +
                         right_mul(right_mul(*y, w), *cd.c2);
      beta2 = hat(*cd.B2) * inner * Rational(1, 2);
      break;
    }
  }
  return hat(cd.B2p) * beta2 * rec.eps;
}

std::vector<Elem> t2_prime(const SSPRecord& rec, const CaseData& cd) {
  std::vector<Elem> t;
  for (std::int64_t i = 0; i < cd.index_2p; ++i) t.push_back(rec.H.group()->pow(cd.a2p, i));
  return t;
}

std::vector<Elem> t2(const SSPRecord& rec, const CaseData& cd) {
  const GroupTable& g = *rec.H.group();
  std::vector<Elem> t;
  switch (cd.tag) {
    case CaseTag::c1i:
      for (std::size_t i = 0; i < cd.M2->order() / rec.K.order(); ++i) t.push_back(g.pow(cd.a2, i));
      break;
    case CaseTag::c1ii: {
      const std::size_t half = cd.M2->order() / rec.K.order() / 2;
      const std::int64_t shift = ipow(2, cd.n - 2);
      for (std::size_t i = 0; i < half; ++i) t.push_back(g.pow(cd.a2, i));
      for (std::size_t i = 0; i < half; ++i) t.push_back(g.pow(cd.a2, shift + i));
      break;
    }
    case CaseTag::c2i:
    case CaseTag::c2ii: {
      const std::int64_t count = ipow(2, cd.k);
      for (std::int64_t i = 0; i < count; ++i) t.push_back(g.pow(cd.a2, i));
      if (cd.tag == CaseTag::c2ii)
        for (std::int64_t i = 0; i < count; ++i) t.push_back(g.mul(*cd.c2, g.pow(cd.a2, i)));
      break;
    }
  }
  return t;
}

}  // namespace detail

CaseData classify_case(const SSPRecord& rec, const CaseOptions& opts) {
  const GroupPtr& g = rec.H.group();
  const GroupTable& G = *g;
  if (!nilpotency_data(g).is_nilpotent)
    throw PreconditionError("classify_case: group " + G.name() + " is not nilpotent");

  const Subgroup& N = rec.normalizer_of_K;
  const Embedding emb_n = subgroup_table(N);
  const QuotientMap qm = quotient(emb_n.pull(rec.K));
  const GroupPtr& q = qm.target;
  const GroupTable& Q = *q;
  auto lift = [&](Elem x) { return emb_n.to_parent[qm.lift[x]]; };
  auto preimage = [&](const Subgroup& s) { return emb_n.push(qm.preimage(s)); };

  const Elem a_q = qm.projection[emb_n.from_parent[rec.a]];
  const auto m = static_cast<std::int64_t>(rec.m());
  const std::int64_t m2 = nt::two_part(m);
  const std::int64_t m2p = m / m2;

  CaseData cd;
  cd.a2 = G.pow(rec.a, m2p);
  cd.a2p = G.pow(rec.a, m2);
  const Elem a2_q = Q.pow(a_q, m2p);
  const Elem a2p_q = Q.pow(a_q, m2);
  const Subgroup q2 = elements_of_order_dividing(q, true);
  const Subgroup q2p = elements_of_order_dividing(q, false);
  const Subgroup A2 = cyclic_subgroup(q, a2_q);
  const Subgroup A2p = cyclic_subgroup(q, a2p_q);
  cd.order_a2 = A2.order();
  cd.order_a2p = A2p.order();

  // Odd part: cyclic complement <b_2'> of A_2' in Q_2'.
  if (q2p.order() % A2p.order() != 0) throw VerificationError("classify_case: odd part index");
  cd.index_2p = static_cast<std::int64_t>(q2p.order() / A2p.order());
  std::optional<Elem> b2p_q;
  for (Elem b : q2p.members()) {
    if (Q.elem_order(b) * A2p.order() != q2p.order()) continue;
    if (intersect(cyclic_subgroup(q, b), A2p).is_trivial()) {
      b2p_q = b;
      break;
    }
  }
  if (!b2p_q) throw VerificationError("classify_case: no cyclic complement in the odd part");
  cd.b2p = lift(*b2p_q);
  cd.B2p = preimage(cyclic_subgroup(q, *b2p_q));
  if (static_cast<std::int64_t>(A2p.order()) % cd.index_2p != 0)
    throw VerificationError("classify_case: [N_2':H_2'] does not divide [H_2':K]");
  cd.m_odd = static_cast<std::int64_t>(A2p.order()) / cd.index_2p;

  // 2-part: presentation of Q_2 relative to A_2 and the complement search.
  const Embedding emb2 = subgroup_table(q2);
  const Subgroup A2_local = emb2.pull(A2);
  Presentation pres = recognize_presentation(emb2.table, A2_local, emb2.from_parent[a2_q]);
  cd.n = pres.n;
  cd.k = pres.k;
  cd.r = pres.r;
  std::optional<Subgroup> complement;
  for (const Subgroup& s : subgroups(emb2.table)) {
    if (s.order() * A2_local.order() != emb2.table->order()) continue;
    if (intersect(s, A2_local).is_trivial()) {
      complement = s;
      break;
    }
  }
  auto to_g = [&](Elem local) { return lift(emb2.to_parent[local]); };
  Presentation lifted = pres;
  lifted.a = to_g(pres.a);
  lifted.b = to_g(pres.b);
  lifted.c = to_g(pres.c);
  cd.presentation = lifted;

  if (complement) {
    if (pres.tag == PresentationTag::P3)
      throw VerificationError("classify_case: complement exists for a P3 section");
    cd.M2 = preimage(emb2.push(*complement));
    const bool cyclic_m = is_cyclic(*complement);
    if (cyclic_m != (pres.tag == PresentationTag::P1))
      throw VerificationError("classify_case: complement shape disagrees with presentation");
    bool central = true;
    if (cyclic_m && cd.k > 0) {
      const Elem w = Q.pow(a2_q, ipow(2, cd.n - 2));
      for (Elem x : q2.members())
        if (Q.mul(w, x) != Q.mul(x, w)) {
          central = false;
          break;
        }
    }
    cd.tag = cyclic_m && central ? CaseTag::c1i : CaseTag::c1ii;
  } else {
    if (pres.tag != PresentationTag::P3)
      throw VerificationError("classify_case: no complement but a split presentation");
    const Elem b2_q = emb2.to_parent[pres.b];
    cd.b2 = lifted.b;
    cd.c2 = lifted.c;
    cd.B2 = preimage(cyclic_subgroup(q, b2_q));
    const std::int64_t ord2 = nt::mult_order(2, cd.m_odd);
    cd.quaternion_split = cd.m_odd != 1 && (cd.n - cd.k >= 3 || ord2 % 2 == 0);
    const bool first = A2p.is_trivial() || (ord2 % 2 == 1 && cd.n - cd.k <= 2);
    if (first == cd.quaternion_split)
      throw VerificationError("classify_case: case split disagrees with the splitting criterion");
    cd.tag = first ? CaseTag::c2i : CaseTag::c2ii;
    if (cd.tag == CaseTag::c2ii && opts.solve_xy) cd.xy = solve_sum_of_squares(rec, cd, opts.xy_height_cap);
  }
  return cd;
}

AlgElement MatrixUnitSystem::unit(std::size_t i, std::size_t j) const {
  const GroupTable& g = *beta.group();
  return left_mul(g.inv(T.at(i)), right_mul(beta, T.at(j)));
}

MatrixUnitSystem primitive_idempotents(const SSPRecord& rec, const CaseOptions& opts) {
  MatrixUnitSystem sys{rec, classify_case(rec, opts), {}, {}, {}, {}, AlgElement(), {}, 0, 0, 0};
  const CaseData& cd = sys.cs;
  const GroupPtr& g = rec.H.group();
  const GroupTable& G = *g;
  sys.T2p = detail::t2_prime(rec, cd);
  sys.T2 = detail::t2(rec, cd);
  sys.TGN = rec.transversal;
  for (Elem x : sys.T2p)
    for (Elem y : sys.T2)
      for (Elem z : sys.TGN) sys.T.push_back(G.mul(G.mul(x, y), z));
  sys.beta = cd.xy ? detail::build_beta(rec, cd, &cd.xy->x, &cd.xy->y)
                   : detail::build_beta(rec, cd, nullptr, nullptr);

  const std::string where = "primitive_idempotents(" + G.name() + "): ";
  AlgElement sum(g);
  for (Elem t : sys.T) {
    AlgElement f = conjugate(sys.beta, t);
    if (!is_idempotent(f)) throw VerificationError(where + "not idempotent");
    sum += f;
    sys.idempotents.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < sys.idempotents.size(); ++i)
    for (std::size_t j = i + 1; j < sys.idempotents.size(); ++j)
      if (!are_orthogonal(sys.idempotents[i], sys.idempotents[j]))
        throw VerificationError(where + "idempotents not orthogonal");
  if (!(sum == rec.e)) throw VerificationError(where + "idempotents do not sum to e");

  const auto m = static_cast<std::int64_t>(rec.m());
  const std::size_t n_over_h = rec.normalizer_of_K.order() / rec.H.order();
  sys.field_dim = static_cast<std::size_t>(nt::euler_phi(m)) / n_over_h;
  sys.division_dim = cd.tag == CaseTag::c2i ? 4 * sys.field_dim : sys.field_dim;
  sys.qdim = qdimension(rec.e);
  if (sys.T.size() * sys.T.size() * sys.division_dim != sys.qdim)
    throw VerificationError(where + "dimension count |T_e|^2 dim D != dim QGe");
  return sys;
}

std::map<std::pair<std::size_t, std::size_t>, AlgElement> matrix_units(
    const MatrixUnitSystem& sys, bool exhaustive) {
  const GroupTable& G = *sys.beta.group();
  const std::size_t t = sys.T.size();
  const std::string where = "matrix_units(" + G.name() + "): ";
  const AlgElement zero = AlgElement::zero(sys.beta.group());
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t k = 0; k < t; ++k) {
      const AlgElement p =
          right_mul(sys.beta, G.mul(sys.T[j], G.inv(sys.T[k]))) * sys.beta;
      if (!(p == (j == k ? sys.beta : zero))) throw VerificationError(where + "relation fails");
    }
  std::map<std::pair<std::size_t, std::size_t>, AlgElement> units;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) units.emplace(std::pair{i, j}, sys.unit(i, j));
  if (exhaustive) {
    for (const auto& [ij, a] : units)
      for (const auto& [kl, b] : units) {
        const AlgElement p = a * b;
        const bool ok = ij.second == kl.first ? p == units.at({ij.first, kl.second}) : p.is_zero();
        if (!ok) throw VerificationError(where + "exhaustive relation fails");
      }
  }
  AlgElement diag = zero;
  for (std::size_t i = 0; i < t; ++i) diag += units.at({i, i});
  if (!(diag == sys.ssp.e)) throw VerificationError(where + "diagonal does not sum to e");
  return units;
}

bool verify_trace_orthogonality(const AlgElement& eps, const AlgElement& base,
                                const std::vector<AlgElement>& xs) {
  const GroupPtr& g = eps.group();
  const AlgElement one = AlgElement::one(g);
  std::vector<AlgElement> conjugates;
  for (const AlgElement& x : xs) {
    const auto z = inverse_in_QG(x * eps + (one - eps));
    if (!z) throw PreconditionError("verify_trace_orthogonality: element not invertible in QGε");
    conjugates.push_back((*z * eps) * base * x);
  }
  for (std::size_t i = 0; i < conjugates.size(); ++i)
    for (std::size_t j = i + 1; j < conjugates.size(); ++j)
      if (!are_orthogonal(conjugates[i], conjugates[j])) return false;
  return true;
}

}  // namespace qga
