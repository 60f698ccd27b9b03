#include "qga/wedderburn.hpp"

#include <algorithm>

#include "qga/errors.hpp"
#include "qga/numtheory.hpp"

namespace qga {

std::size_t CenterSpec::degree() const {
  return static_cast<std::size_t>(nt::euler_phi(conductor)) / fixed_under.size();
}

bool CenterSpec::is_real() const {
  return conductor <= 2 ||
         std::find(fixed_under.begin(), fixed_under.end(), conductor - 1) != fixed_under.end();
}

const char* to_string(DivisionPart d) {
  switch (d) {
    case DivisionPart::field: return "field";
    case DivisionPart::quaternion: return "quaternion";
    case DivisionPart::unresolved: return "unresolved";
  }
  return "?";
}

namespace {

/// j in [0, m) with x ∈ a^j K.
std::int64_t exponent_mod_k(const SSPRecord& rec, Elem x) {
  const GroupTable& g = *rec.H.group();
  Elem p = 0;
  const auto m = static_cast<std::int64_t>(rec.m());
  for (std::int64_t j = 0; j < m; ++j) {
    if (rec.K.contains(g.mul(x, g.inv(p)))) return j;
    p = g.mul(p, rec.a);
  }
  throw VerificationError("describe_component: element outside H");
}

}  // namespace

ComponentDescriptor describe_component(const SSPRecord& rec, bool resolve) {
  const GroupPtr& gp = rec.H.group();
  const GroupTable& g = *gp;
  ComponentDescriptor d;
  d.m = static_cast<std::int64_t>(rec.m());
  d.r = rec.r();

  const Embedding emb = subgroup_table(rec.normalizer_of_K);
  for (Elem x : left_transversal(emb.pull(rec.H))) d.action_reps.push_back(emb.to_parent[x]);
  for (Elem x : d.action_reps) d.action_exponents.push_back(exponent_mod_k(rec, g.conj(rec.a, x)));
  for (std::size_t i = 0; i < d.action_reps.size(); ++i)
    for (std::size_t j = i + 1; j < d.action_reps.size(); ++j)
      d.twisting.push_back(
          {i, j, exponent_mod_k(rec, g.comm(d.action_reps[i], d.action_reps[j]))});

  d.center.conductor = d.m;
  d.center.fixed_under = d.action_exponents;
  std::sort(d.center.fixed_under.begin(), d.center.fixed_under.end());
  if (d.m <= 2) d.center.fixed_under = {1};

  const std::size_t index_h = g.order() / rec.H.order();
  d.degree = index_h;
  if (!resolve) return d;

  CaseOptions opts;
  opts.solve_xy = false;
  const CaseData cd = classify_case(rec, opts);
  d.case_tag = cd.tag;
  if (cd.tag == CaseTag::c2i) {
    d.degree = index_h / 2;
    d.division = DivisionPart::quaternion;
    d.schur_index = 2;
  } else {
    d.division = DivisionPart::field;
    d.schur_index = 1;
  }
  d.exceptional = is_exceptional(d);
  return d;
}

bool is_exceptional(const ComponentDescriptor& d) {
  if (d.division == DivisionPart::unresolved) return false;
  const bool quaternion = d.division == DivisionPart::quaternion;
  if (d.degree == 1) return quaternion && !d.center.is_real();
  if (d.degree != 2) return false;
  if (quaternion) return true;
  const std::size_t f = d.center.degree();
  return f == 1 || (f == 2 && !d.center.is_real());
}

RoquetteReport roquette_check(const std::vector<ComponentDescriptor>& descriptors) {
  RoquetteReport rep;
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    const auto& d = descriptors[i];
    if (d.division == DivisionPart::unresolved)
      throw PreconditionError("roquette_check: unresolved descriptor");
    const bool bad_index = d.schur_index > 2 ||
                           (d.schur_index == 2 && d.division != DivisionPart::quaternion);
    if (bad_index) rep.schur_violations.push_back(i);
    if (d.schur_index == 2 && !d.center.is_real()) rep.non_real_quaternion.push_back(i);
  }
  rep.ok = rep.schur_violations.empty();
  return rep;
}

}  // namespace qga
