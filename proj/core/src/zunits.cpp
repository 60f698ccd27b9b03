#include "qga/zunits.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qga/errors.hpp"
#include "qga/numtheory.hpp"
#include "qga/parallel.hpp"

namespace qga {

const char* to_string(UnitKind k) {
  switch (k) {
    case UnitKind::Bass: return "bass";
    case UnitKind::BassCentral: return "bass_central";
    case UnitKind::Bicyclic: return "bicyclic";
    case UnitKind::VPlus: return "vplus";
    case UnitKind::VMinus: return "vminus";
    case UnitKind::FreePairMember: return "free_pair_member";
  }
  return "?";
}

namespace {

AlgElement power(AlgElement x, std::size_t e) {
  AlgElement result = AlgElement::one(x.group());
  while (e > 0) {
    if (e & 1) result = result * x;
    e >>= 1;
    if (e > 0) x = x * x;
  }
  return result;
}

bool is_trivial_unit(const AlgElement& u) {
  return u.support_size() == 1 && abs(u.terms()[0].second) == 1;
}

AlgElement certified_inverse(const AlgElement& u, const char* what) {
  if (!has_integer_coeffs(u)) throw VerificationError(std::string(what) + ": unit not integral");
  auto inv = inverse_in_ZG(u);
  if (auto* bad = std::get_if<NotAUnit>(&inv))
    throw VerificationError(std::string(what) + ": " + to_string(bad->reason));
  return std::get<AlgElement>(std::move(inv));
}

UnitCertificate certify(AlgElement u, UnitKind kind, Provenance prov, const char* what) {
  AlgElement inv = certified_inverse(u, what);
  const bool trivial = is_trivial_unit(u);
  return UnitCertificate{std::move(u), std::move(inv), kind, std::move(prov), trivial};
}

/// Π_{z∈Z} x^z, grouping equal conjugates into powers (the factors commute).
AlgElement conjugate_product(const AlgElement& x, const Subgroup& z) {
  std::vector<std::pair<AlgElement, std::size_t>> factors;
  for (Elem g : z.members()) {
    AlgElement c = conjugate(x, g);
    auto it = std::find_if(factors.begin(), factors.end(),
                           [&](const auto& f) { return f.first == c; });
    if (it == factors.end())
      factors.emplace_back(std::move(c), 1);
    else
      ++it->second;
  }
  AlgElement result = AlgElement::one(x.group());
  for (auto& [c, count] : factors) result = result * power(std::move(c), count);
  return result;
}

}  // namespace

bool certificate_holds(const UnitCertificate& c) {
  if (!has_integer_coeffs(c.u) || !has_integer_coeffs(c.u_inv)) return false;
  const AlgElement one = AlgElement::one(c.u.group());
  return c.u * c.u_inv == one && c.u_inv * c.u == one;
}

UnitCertificate bass_unit(const GroupPtr& group, Elem g, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(group->elem_order(g));
  if (k <= 1 || k >= n) throw PreconditionError("bass_unit: k out of range");
  if (std::gcd(k, n) != 1) throw PreconditionError("bass_unit: gcd(k, ord g) != 1");
  const auto phi = static_cast<unsigned long>(nt::euler_phi(n));
  AlgElement s(group);
  for (std::int64_t j = 0; j < k; ++j) s += AlgElement::basis(group, group->pow(g, j));
  Integer kp;
  mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), phi);
  AlgElement b = power(std::move(s), phi) + hat(cyclic_subgroup(group, g)) * Rational(1 - kp);
  Provenance prov;
  prov.g = g;
  prov.k = k;
  return certify(std::move(b), UnitKind::Bass, prov, "bass_unit");
}

UnitCertificate central_bass_unit(const GroupPtr& group, Elem g, std::int64_t k,
                                  std::size_t budget) {
  const NilpotencyData nd = nilpotency_data(group);
  if (!nd.is_nilpotent) throw PreconditionError("central_bass_unit: group is not nilpotent");
  std::size_t factors = 1;
  for (std::size_t v = 1; v < nd.upper_central_series.size(); ++v) {
    factors *= nd.upper_central_series[v].order();
    if (factors > budget)
      throw CapExceeded("central_bass_unit: conjugate product exceeds the coefficient budget");
  }
  UnitCertificate base = bass_unit(group, g, k);
  AlgElement x = std::move(base.u);
  AlgElement y = std::move(base.u_inv);
  for (std::size_t v = 1; v < nd.upper_central_series.size(); ++v) {
    x = conjugate_product(x, nd.upper_central_series[v]);
    y = conjugate_product(y, nd.upper_central_series[v]);
  }
  if (!is_central(x)) throw VerificationError("central_bass_unit: result is not central");
  UnitCertificate c{std::move(x), std::move(y), UnitKind::BassCentral, base.provenance, false};
  c.trivial = is_trivial_unit(c.u);
  if (!certificate_holds(c)) throw VerificationError("central_bass_unit: inverse check failed");
  return c;
}

UnitCertificate bicyclic_unit(const GroupPtr& group, Elem g, Elem h) {
  const AlgElement one = AlgElement::one(group);
  const AlgElement offset = (one - AlgElement::basis(group, g)) * AlgElement::basis(group, h) *
                            subgroup_sum(cyclic_subgroup(group, g));
  Provenance prov;
  prov.g = g;
  prov.h = h;
  return certify(one + offset, UnitKind::Bicyclic, prov, "bicyclic_unit");
}

std::int64_t central_power(const SSPRecord& rec) {
  const GroupPtr& group = rec.H.group();
  const auto m = static_cast<std::int64_t>(rec.m());
  for (std::int64_t l = 1; l <= m; ++l) {
    const AlgElement x = AlgElement::basis(group, group->pow(rec.a, l)) * rec.eps;
    bool central = true;
    for (Elem n : rec.normalizer_of_K.members())
      if (!(conjugate(x, n) == x)) {
        central = false;
        break;
      }
    if (central) return l;
  }
  throw VerificationError("central_power: a^[H:K] ε is not central");
}

std::vector<UnitCertificate> v_generators(const MatrixUnitSystem& sys, Sign sign,
                                          std::size_t component) {
  const GroupPtr& group = sys.beta.group();
  const GroupTable& G = *group;
  const SSPRecord& rec = sys.ssp;
  const std::int64_t l = central_power(rec);
  const auto m = static_cast<std::int64_t>(rec.m());
  const Rational order(static_cast<long>(G.order()));
  const AlgElement one = AlgElement::one(group);
  const UnitKind kind = sign == Sign::plus ? UnitKind::VPlus : UnitKind::VMinus;
  std::vector<UnitCertificate> out;
  for (std::size_t i = 0; i < sys.T.size(); ++i)
    for (std::size_t j = 0; j < sys.T.size(); ++j) {
      if (sign == Sign::plus ? j <= i : j >= i) continue;
      for (std::int64_t e = 0; e < m; e += l) {
        const AlgElement offset =
            left_mul(G.inv(sys.T[i]), right_mul(right_mul(sys.beta, G.pow(rec.a, e)), sys.T[j])) *
            order;
        Provenance prov;
        prov.component = component;
        prov.t = sys.T[i];
        prov.t_prime = sys.T[j];
        prov.j = e;
        out.push_back(certify(one + offset, kind, prov, "v_generators"));
      }
    }
  return out;
}

std::optional<Mat2> block_coordinates(const MatrixUnitSystem& sys, const AlgElement& u,
                                      std::size_t i, std::size_t j) {
  const std::size_t idx[2] = {i, j};
  Mat2 out;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const AlgElement epq = sys.unit(idx[p], idx[q]);
      const AlgElement x = sys.unit(idx[p], idx[p]) * u * sys.unit(idx[q], idx[q]);
      if (x.is_zero()) {
        out[p][q] = 0;
        continue;
      }
      const Elem g0 = epq.terms().front().first;
      const Rational alpha = x.coeff(g0) / epq.terms().front().second;
      if (!(epq * alpha == x)) return std::nullopt;
      out[p][q] = alpha;
    }
  return out;
}

FreePair free_pair(const MatrixUnitSystem& sys, std::size_t i, std::size_t j,
                   std::size_t component) {
  if (sys.T.size() < 2)
    throw PreconditionError("free_pair: component is a division algebra (|T_e| = 1)");
  if (i == j || i >= sys.T.size() || j >= sys.T.size())
    throw PreconditionError("free_pair: need two distinct positions in T_e");
  const GroupPtr& group = sys.beta.group();
  const Rational order(static_cast<long>(group->order()));
  const AlgElement one = AlgElement::one(group);
  const AlgElement eij = sys.unit(i, j);
  const AlgElement eji = sys.unit(j, i);
  Provenance p1;
  p1.component = component;
  p1.t = sys.T[i];
  p1.t_prime = sys.T[j];
  Provenance p2 = p1;
  std::swap(p2.t, p2.t_prime);
  FreePair fp{certify(one + eij * order, UnitKind::FreePairMember, p1, "free_pair"),
              certify(one + eji * order, UnitKind::FreePairMember, p2, "free_pair"),
              {}, {}, false, false};
  const auto a = block_coordinates(sys, fp.first.u, i, j);
  const auto b = block_coordinates(sys, fp.second.u, i, j);
  if (a && b) {
    fp.image_first = *a;
    fp.image_second = *b;
    const Mat2 upper{{{Rational(1), order}, {Rational(0), Rational(1)}}};
    const Mat2 lower{{{Rational(1), Rational(0)}, {order, Rational(1)}}};
    fp.sanov = *a == upper && *b == lower;
  }
  fp.star_compatible = star(eij) == eji;
  return fp;
}

bool nilpotency_certificate(const std::vector<UnitCertificate>& gens,
                            const MatrixUnitSystem& sys) {
  if (gens.empty()) return true;
  const UnitKind kind = gens.front().kind;
  if (kind != UnitKind::VPlus && kind != UnitKind::VMinus)
    throw PreconditionError("nilpotency_certificate: generators must be V+ or V-");
  for (const auto& g : gens)
    if (g.kind != kind || g.provenance.component != gens.front().provenance.component)
      throw PreconditionError("nilpotency_certificate: mixed signs or components");
  const AlgElement one = AlgElement::one(sys.beta.group());
  std::vector<AlgElement> offsets;
  for (const auto& g : gens) {
    AlgElement c = g.u - one;
    if (std::find(offsets.begin(), offsets.end(), c) == offsets.end()) offsets.push_back(c);
  }
  std::vector<AlgElement> level = offsets;
  for (std::size_t step = 1; step < sys.T.size() && !level.empty(); ++step) {
    std::vector<AlgElement> next;
    for (const auto& p : level)
      for (const auto& c : offsets) {
        AlgElement q = p * c;
        if (!q.is_zero() && std::find(next.begin(), next.end(), q) == next.end())
          next.push_back(std::move(q));
      }
    level = std::move(next);
  }
  return level.empty();
}

GeneratorSuite generator_suite(const SSPSearch& search, const SuiteOptions& opts) {
  GeneratorSuite suite;
  if (search.records.empty()) return suite;
  const GroupPtr& group = search.records.front().H.group();
  const GroupTable& G = *group;
  if (!nilpotency_data(group).is_nilpotent)
    throw PreconditionError("generator_suite: group is not nilpotent");

  // Central units over classes of cyclic subgroups.
  std::vector<std::pair<Elem, std::int64_t>> tasks;
  std::set<std::vector<Elem>> seen;
  for (Elem g = 0; g < G.order(); ++g) {
    const Subgroup c = cyclic_subgroup(group, g);
    if (seen.count(c.members())) continue;
    for (Elem x = 0; x < G.order(); ++x) seen.insert(conjugate(c, x).members());
    const auto n = static_cast<std::int64_t>(G.elem_order(g));
    for (std::int64_t k = 2; k < n; ++k)
      if (std::gcd(k, n) == 1) tasks.emplace_back(g, k);
  }
  std::vector<std::optional<UnitCertificate>> central(tasks.size());
  std::vector<std::string> skipped(tasks.size());
  parallel_for(tasks.size(), opts.jobs, [&](std::size_t i) {
    try {
      central[i] = central_bass_unit(group, tasks[i].first, tasks[i].second, opts.central_budget);
    } catch (const CapExceeded& e) {
      skipped[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (central[i])
      suite.central.push_back(std::move(*central[i]));
    else
      suite.central_skipped.push_back({tasks[i].first, tasks[i].second, skipped[i]});
  }

  suite.components.resize(search.records.size());
  CaseOptions copts;
  copts.xy_height_cap = opts.xy_height_cap;
  parallel_for(search.records.size(), opts.jobs, [&](std::size_t c) {
    const SSPRecord& rec = search.records[c];
    ComponentUnits& cu = suite.components[c];
    cu.component = c;
    cu.descriptor = describe_component(rec);
    const MatrixUnitSystem sys = primitive_idempotents(rec, copts);
    cu.vplus = v_generators(sys, Sign::plus, c);
    cu.vminus = v_generators(sys, Sign::minus, c);
    cu.vplus_nilpotent = nilpotency_certificate(cu.vplus, sys);
    cu.vminus_nilpotent = nilpotency_certificate(cu.vminus, sys);
    if (sys.T.size() >= 2) cu.free_pair = free_pair(sys, 0, 1, c);
  });
  return suite;
}

}  // namespace qga
