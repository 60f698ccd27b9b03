// Acceptance suite: one PASS/FAIL line per criterion on stdout, details below
// each line. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qga/algebra.hpp"
#include "qga/errors.hpp"
#include "qga/families.hpp"
#include "qga/primidem.hpp"
#include "qga/shoda.hpp"
#include "qga/wedderburn.hpp"
#include "qga/zunits.hpp"
#include "qga_cli/cli.hpp"

namespace {

using namespace qga;

constexpr std::size_t kMaxOrder = 64;

struct TestGroup {
  std::string spec;
  GroupPtr group;
};

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void try_add(std::vector<TestGroup>& out, std::set<std::string>& seen, const std::string& spec) {
  if (!seen.insert(spec).second) return;
  try {
    auto g = build_family(spec, kMaxOrder);
    out.push_back({spec, std::move(g)});
  } catch (const SpecError&) {
  } catch (const CapExceeded&) {
  }
}

std::vector<TestGroup> family_groups() {
  std::vector<TestGroup> out;
  std::set<std::string> seen;
  for (int n = 1; n <= 64; ++n) try_add(out, seen, "cyclic:" + std::to_string(n));
  for (int n = 8; n <= 64; n *= 2) try_add(out, seen, "dihedral:" + std::to_string(n));
  for (int n = 8; n <= 64; n *= 2) try_add(out, seen, "quaternion:" + std::to_string(n));
  for (std::int64_t p : {2, 3, 5, 7})
    for (std::int64_t n = 1; ipow(p, n) <= 64; ++n)
      for (std::int64_t k = 1; ipow(p, n + k) <= 64; ++k)
        for (std::int64_t r = 2; r < ipow(p, n); ++r)
          try_add(out, seen, "p1:" + std::to_string(p) + "," + std::to_string(n) + "," +
                                 std::to_string(k) + "," + std::to_string(r));
  for (const char* tag : {"p2", "p3"})
    for (std::int64_t n = 2; n <= 5; ++n)
      for (std::int64_t k = 0; ipow(2, n + k + 1) <= 64; ++k)
        for (std::int64_t r = 1; r < ipow(2, n); r += 4)
          try_add(out, seen, std::string(tag) + ":" + std::to_string(n) + "," +
                                 std::to_string(k) + "," + std::to_string(r));
  return out;
}

bool is_cyclic_group(const GroupPtr& g) {
  for (Elem x = 0; x < g->order(); ++x)
    if (g->elem_order(x) == g->order()) return true;
  return false;
}

std::vector<TestGroup> nilpotent_test_groups() {
  auto base = family_groups();
  std::vector<TestGroup> out;
  for (const auto& t : base)
    if (nilpotency_data(t.group).is_nilpotent) out.push_back(t);
  const std::size_t singles = out.size();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < singles; ++i)
    for (std::size_t j = i; j < singles; ++j) {
      const auto& a = out[i];
      const auto& b = out[j];
      if (a.group->order() < 2 || b.group->order() < 2) continue;
      if (a.group->order() * b.group->order() > kMaxOrder) continue;
      const bool coprime = std::gcd(a.group->order(), b.group->order()) == 1;
      if (coprime && is_cyclic_group(a.group) && is_cyclic_group(b.group)) continue;
      try_add(out, seen, "product:" + a.spec + "*" + b.spec);
    }
  return out;
}

struct Criterion {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (pass) detail << "first failure: ";
    if (pass || failures < 8) detail << what << "; ";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

int g_failed = 0;

void report(int n, Criterion& c, const std::string& summary) {
  std::cout << "criterion " << n << ": " << (c.pass ? "PASS" : "FAIL") << " (" << summary << ")"
            << std::endl;
  const std::string d = c.detail.str();
  if (!d.empty()) std::cout << "  " << d << std::endl;
  if (!c.pass) ++g_failed;
}

std::optional<SSPRecord> record_with(const SSPSearch& s, std::size_t h_order, std::size_t k_order) {
  for (const auto& r : s.records)
    if (r.H.order() == h_order && r.K.order() == k_order) return r;
  return std::nullopt;
}

struct GroupData {
  TestGroup tg;
  SSPSearch search;
};

void criterion1(const std::vector<GroupData>& data) {
  Criterion c;
  for (const auto& d : data) {
    const auto& recs = d.search.records;
    const auto& g = d.tg.group;
    AlgElement sum = AlgElement::zero(g);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (!is_idempotent(recs[i].e) || !is_central(recs[i].e)) c.fail(d.tg.spec + " e not central idempotent");
      for (std::size_t j = i + 1; j < recs.size(); ++j)
        if (!are_orthogonal(recs[i].e, recs[j].e)) c.fail(d.tg.spec + " not orthogonal");
      sum = sum + recs[i].e;
    }
    if (sum != AlgElement::one(g)) c.fail(d.tg.spec + " sum != 1");
    if (recs.size() != rational_class_count(g))
      c.fail(d.tg.spec + " count " + std::to_string(recs.size()));
  }
  report(1, c, std::to_string(data.size()) + " nilpotent groups of order <= 64");
}

void criterion2() {
  Criterion c;
  const auto g = build_family("sl23");
  const Elem x = g->generators().at(0);
  const Elem a = g->generators().at(2);
  const Subgroup B = cyclic_subgroup(g, g->mul(g->pow(x, 2), a));
  const Subgroup A = cyclic_subgroup(g, a);
  const Subgroup one = trivial_subgroup(g);
  const AlgElement e1 = idempotent_combination(g, {{Rational(1, 2), B, A}});
  const AlgElement e2 =
      idempotent_combination(g, {{Rational(1, 4), B, one}, {Rational(-1, 4), B, A}});
  for (const auto* e : {&e1, &e2}) {
    if (e->is_zero()) c.fail("zero combination");
    if (!is_idempotent(*e) || !is_central(*e)) c.fail("not a central idempotent");
  }
  if (!are_orthogonal(e1, e2)) c.fail("combinations not orthogonal");
  const auto s = strong_shoda_pairs(g);
  AlgElement total = e1 + e2;
  for (const auto& r : s.records) {
    if (!are_orthogonal(r.e, e1) || !are_orthogonal(r.e, e2)) c.fail("not orthogonal to a pair idempotent");
    total = total + r.e;
  }
  c.detail << s.records.size() << " pair idempotents + 2 combinations; total "
           << (total == AlgElement::one(g) ? "equals 1" : "differs from 1");
  report(2, c, "SL(2,3) non-monomial components");
}

void criterion3(const std::vector<GroupData>& data) {
  Criterion c;
  std::size_t systems = 0, exhaustive = 0;
  std::map<std::string, std::size_t> tags;
  for (const auto& d : data)
    for (const auto& r : d.search.records) {
      try {
        const auto sys = primitive_idempotents(r);
        const bool full = sys.T.size() <= 4;
        const auto units = matrix_units(sys, full);
        if (units.size() != sys.T.size() * sys.T.size()) c.fail(d.tg.spec + " unit count");
        if (qdimension(r.e) != sys.T.size() * sys.T.size() * sys.division_dim)
          c.fail(d.tg.spec + " dimension");
        ++systems;
        exhaustive += full;
        ++tags[qga::to_string(sys.cs.tag)];
      } catch (const std::exception& e) {
        c.fail(d.tg.spec + ": " + e.what());
      }
    }
  c.detail << "cases:";
  for (const auto& [t, n] : tags) c.detail << " " << t << "=" << n;
  report(3, c, std::to_string(systems) + " matrix-unit systems, " + std::to_string(exhaustive) +
                   " checked on all products");
}

void criterion4() {
  Criterion c;
  const struct {
    const char* spec;
    CaseTag tag;
  } cases[] = {{"p1:3,2,1,4", CaseTag::c1i},
               {"p1:3,2,1,7", CaseTag::c1i},
               {"dihedral:8", CaseTag::c1ii},
               {"dihedral:16", CaseTag::c1ii},
               {"quaternion:8", CaseTag::c2i},
               {"quaternion:16", CaseTag::c2i},
               {"product:quaternion:8*cyclic:7", CaseTag::c2i},
               {"product:quaternion:8*cyclic:5", CaseTag::c2ii},
               {"product:quaternion:16*cyclic:7", CaseTag::c2ii},
               {"product:p3:3,0,1*cyclic:7", CaseTag::c2ii}};
  for (const auto& cs : cases) {
    try {
      const auto g = build_family(cs.spec);
      bool found = false;
      for (const auto& r : strong_shoda_pairs(g).records) {
        const auto sys = primitive_idempotents(r);
        matrix_units(sys, sys.T.size() <= 4);
        found |= sys.cs.tag == cs.tag;
      }
      if (!found) c.fail(std::string(cs.spec) + " lacks case " + qga::to_string(cs.tag));
      else c.detail << cs.spec << "->" << qga::to_string(cs.tag) << " ";
    } catch (const std::exception& e) {
      c.fail(std::string(cs.spec) + ": " + e.what());
    }
  }
  report(4, c, "every case reached and verified");
}

void criterion5() {
  Criterion c;
  try {
    const auto s5 = strong_shoda_pairs(build_family("product:quaternion:8*cyclic:5"));
    const auto r5 = record_with(s5, 20, 1);
    if (!r5) throw std::runtime_error("Q8xC5 faithful pair missing");
    CaseOptions o;
    o.solve_xy = false;
    const auto cd = classify_case(*r5, o);
    const auto xy = solve_sum_of_squares(*r5, cd, 6);
    const AlgElement lhs = (AlgElement::one(r5->H.group()) + xy.x * xy.x + xy.y * xy.y) * r5->eps;
    if (!lhs.is_zero()) c.fail("(1+x^2+y^2)eps != 0");
    c.detail << "Q8xC5: height " << xy.height << " in a subfield of dimension " << xy.subfield_dim
             << "; ";

    const auto s7 = strong_shoda_pairs(build_family("product:quaternion:8*cyclic:7"));
    const auto r7 = record_with(s7, 28, 1);
    if (!r7) throw std::runtime_error("Q8xC7 faithful pair missing");
    const auto cd7 = classify_case(*r7);
    if (cd7.quaternion_split) c.fail("Q8xC7 reported split");
    const auto units = matrix_units(primitive_idempotents(*r7));
    if (units.size() != 1) c.fail("Q8xC7 has " + std::to_string(units.size()) + " matrix units");
    c.detail << "Q8xC7: non-split, " << units.size() << " matrix unit";
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  report(5, c, "sum-of-squares search and split test");
}

void criterion6(const std::vector<GroupData>& data) {
  Criterion c;
  std::size_t components = 0;
  for (const auto& d : data) {
    std::vector<ComponentDescriptor> ds;
    for (const auto& r : d.search.records) ds.push_back(describe_component(r));
    components += ds.size();
    const auto rep = roquette_check(ds);
    for (auto i : rep.schur_violations) c.fail(d.tg.spec + " component " + std::to_string(i) + " Schur index > 2");
    for (auto i : rep.non_real_quaternion)
      c.fail(d.tg.spec + " component " + std::to_string(i) + " index 2 over a non-real center of degree " +
             std::to_string(ds[i].center.degree()));
  }
  if (!c.pass) c.detail << c.failures << " offending components in total";
  report(6, c, std::to_string(components) + " components: Schur index <= 2, index 2 over a real center");
}

void criterion7(const std::vector<GroupData>& data) {
  Criterion c;
  std::size_t bass = 0, central = 0, skipped = 0, vgens = 0, pairs = 0, squares = 0;
  for (const auto& d : data) {
    const auto& g = d.tg.group;
    if (g->order() > 32) continue;
    try {
      for (Elem x = 1; x < g->order(); ++x) {
        const auto n = static_cast<std::int64_t>(g->elem_order(x));
        for (std::int64_t k = 2; k < n; ++k) {
          if (std::gcd(k, n) != 1) continue;
          const auto b = bass_unit(g, x, k);
          const auto inv = inverse_in_ZG(b.u);
          if (!certificate_holds(b) || !std::holds_alternative<AlgElement>(inv))
            c.fail(d.tg.spec + " Bass unit not invertible in ZG");
          if (n == 4 && k == 3) {
            ++squares;
            if (b.u != AlgElement::basis(g, g->pow(x, 2))) c.fail(d.tg.spec + " b(g,3) != g^2");
          }
          ++bass;
        }
      }
      const auto suite = generator_suite(d.search);
      for (const auto& u : suite.central) {
        if (!certificate_holds(u) || !is_central(u.u)) c.fail(d.tg.spec + " central unit");
        ++central;
      }
      skipped += suite.central_skipped.size();
      const Rational order(static_cast<long>(g->order()));
      for (const auto& cu : suite.components) {
        vgens += cu.vplus.size() + cu.vminus.size();
        for (const auto* list : {&cu.vplus, &cu.vminus})
          for (const auto& u : *list)
            if (!certificate_holds(u)) c.fail(d.tg.spec + " V unit");
        if (!cu.vplus_nilpotent || !cu.vminus_nilpotent) c.fail(d.tg.spec + " nilpotency certificate");
        if (cu.free_pair) {
          ++pairs;
          const auto& fp = *cu.free_pair;
          const Mat2 up{{{Rational(1), order}, {Rational(0), Rational(1)}}};
          const Mat2 low{{{Rational(1), Rational(0)}, {order, Rational(1)}}};
          if (!fp.sanov || fp.image_first != up || fp.image_second != low)
            c.fail(d.tg.spec + " free pair images");
        }
      }
    } catch (const std::exception& e) {
      c.fail(d.tg.spec + ": " + e.what());
    }
  }
  c.detail << bass << " Bass units (" << squares << " of the form b(g,3), ord g = 4), " << central
           << " central units (" << skipped << " over the coefficient budget), " << vgens
           << " V+/V- generators, " << pairs << " free pairs";
  report(7, c, "unit constructions for groups of order <= 32");
}

void criterion8() {
  Criterion c;
  for (const char* spec : {"cyclic:1", "dihedral:16", "product:quaternion:8*cyclic:5", "p3:3,1,5",
                           "sl23"}) {
    cli::RunConfig cfg;
    cfg.command = cli::Command::verify;
    cfg.group_spec = spec;
    const auto a = cli::run(cfg);
    cfg.jobs = 4;
    const auto b = cli::run(cfg);
    if (a.json != b.json) c.fail(std::string(spec) + " reports differ");
    else c.detail << spec << " ";
  }
  report(8, c, "repeated verify runs are byte-identical");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<GroupData> data;
  for (auto& tg : nilpotent_test_groups()) {
    SSPSearch s = strong_shoda_pairs(tg.group);
    data.push_back({std::move(tg), std::move(s)});
  }
  criterion1(data);
  criterion2();
  criterion3(data);
  criterion4();
  criterion5();
  criterion6(data);
  criterion7(data);
  criterion8();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (g_failed == 0 ? "all criteria pass" : std::to_string(g_failed) + " criteria fail")
            << " (" << static_cast<int>(secs) << " s)" << std::endl;
  return g_failed == 0 ? 0 : 1;
}
