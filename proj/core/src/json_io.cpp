#include "qga/json_io.hpp"

#include <string>

namespace qga::json {

Json rational(const Rational& r) { return to_string(r); }

Json element(const AlgElement& a) {
  Json out = Json::object();
  for (const auto& [g, c] : a.terms()) out[std::to_string(g)] = to_string(c);
  return out;
}

Json subgroup(const Subgroup& s) { return s.members(); }

Json group_header(const GroupPtr& g) {
  return Json{{"name", g->name()}, {"order", g->order()}, {"generators", g->generators()}};
}

Json ssp_record(const SSPRecord& rec) {
  return Json{{"H", subgroup(rec.H)},
              {"K", subgroup(rec.K)},
              {"N", subgroup(rec.normalizer_of_K)},
              {"a", rec.a},
              {"m", rec.m()},
              {"r", rec.r()},
              {"transversal", rec.transversal},
              {"eps", element(rec.eps)},
              {"e", element(rec.e)}};
}

Json descriptor(const ComponentDescriptor& d) {
  Json out{{"m", d.m},
           {"r", d.r},
           {"degree", d.degree},
           {"division", to_string(d.division)},
           {"center", {{"conductor", d.center.conductor}, {"fixed_exponents", d.center.fixed_under}}},
           {"exceptional", d.exceptional},
           {"schur_index", d.schur_index}};
  if (d.case_tag) out["case"] = to_string(*d.case_tag);
  return out;
}

Json case_data(const CaseData& cd) {
  const Presentation& p = cd.presentation;
  Json out{{"case", to_string(cd.tag)},
           {"presentation",
            {{"type", to_string(p.tag)}, {"n", p.n}, {"k", p.k}, {"r", p.r}, {"a", p.a}, {"b", p.b},
             {"c", p.c}}},
           {"a2", cd.a2},
           {"a2_prime", cd.a2p},
           {"b2_prime", cd.b2p},
           {"m_odd", cd.m_odd}};
  if (cd.tag == CaseTag::c2i || cd.tag == CaseTag::c2ii) out["quaternion_split"] = cd.quaternion_split;
  return out;
}

Json matrix_unit_system(const MatrixUnitSystem& sys, bool with_units) {
  Json out = case_data(sys.cs);
  out["T_e"] = sys.T;
  out["beta_e"] = element(sys.beta);
  Json idem = Json::array();
  for (const auto& f : sys.idempotents) idem.push_back(element(f));
  out["idempotents"] = std::move(idem);
  out["division_dimension"] = sys.division_dim;
  if (with_units) {
    Json units = Json::object();
    for (std::size_t i = 0; i < sys.T.size(); ++i)
      for (std::size_t j = 0; j < sys.T.size(); ++j)
        units[std::to_string(sys.T[i]) + "," + std::to_string(sys.T[j])] = element(sys.unit(i, j));
    out["matrix_units"] = std::move(units);
  }
  if (sys.cs.xy)
    out["xy"] = {{"x", element(sys.cs.xy->x)},
                 {"y", element(sys.cs.xy->y)},
                 {"height", sys.cs.xy->height},
                 {"subfield_dimension", sys.cs.xy->subfield_dim}};
  return out;
}

namespace {

Json provenance(const Provenance& p) {
  Json out = Json::object();
  if (p.g) out["g"] = *p.g;
  if (p.h) out["h"] = *p.h;
  if (p.k) out["k"] = *p.k;
  if (p.component) out["component"] = *p.component;
  if (p.t) out["t"] = *p.t;
  if (p.t_prime) out["t_prime"] = *p.t_prime;
  if (p.j) out["j"] = *p.j;
  return out;
}

Json mat2(const Mat2& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json{rational(row[0]), rational(row[1])});
  return out;
}

}  // namespace

Json unit(const UnitCertificate& c) {
  return Json{{"kind", to_string(c.kind)},
              {"provenance", provenance(c.provenance)},
              {"trivial", c.trivial},
              {"u", element(c.u)},
              {"u_inv", element(c.u_inv)}};
}

Json generator_suite(const GeneratorSuite& s) {
  Json central = Json::array();
  for (const auto& c : s.central) central.push_back(unit(c));
  Json skipped = Json::array();
  for (const auto& k : s.central_skipped)
    skipped.push_back({{"g", k.g}, {"k", k.k}, {"reason", k.reason}});
  Json vplus = Json::object(), vminus = Json::object(), exceptional = Json::array();
  Json pairs = Json::array();
  for (const auto& cu : s.components) {
    const std::string key = std::to_string(cu.component);
    Json p = Json::array(), m = Json::array();
    for (const auto& u : cu.vplus) p.push_back(unit(u));
    for (const auto& u : cu.vminus) m.push_back(unit(u));
    vplus[key] = std::move(p);
    vminus[key] = std::move(m);
    if (cu.descriptor.exceptional) exceptional.push_back(cu.component);
    if (cu.free_pair)
      pairs.push_back({{"component", cu.component},
                       {"first", unit(cu.free_pair->first)},
                       {"second", unit(cu.free_pair->second)},
                       {"image_first", mat2(cu.free_pair->image_first)},
                       {"image_second", mat2(cu.free_pair->image_second)},
                       {"sanov", cu.free_pair->sanov},
                       {"star_compatible", cu.free_pair->star_compatible}});
  }
  return Json{{"central", std::move(central)},
              {"central_skipped", std::move(skipped)},
              {"vplus", std::move(vplus)},
              {"vminus", std::move(vminus)},
              {"free_pairs", std::move(pairs)},
              {"exceptional_components", std::move(exceptional)}};
}

}  // namespace qga::json
