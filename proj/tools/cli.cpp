#include "qga_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "qga/errors.hpp"
#include "qga/families.hpp"
#include "qga/json_io.hpp"
#include "qga/numtheory.hpp"
#include "qga/parallel.hpp"
#include "qga/primidem.hpp"
#include "qga/shoda.hpp"
#include "qga/wedderburn.hpp"
#include "qga/zunits.hpp"

namespace qga::cli {

using json::Json;

const char* to_string(Command c) {
  switch (c) {
    case Command::decompose: return "decompose";
    case Command::idempotents: return "idempotents";
    case Command::matrix_units: return "matrix-units";
    case Command::units: return "units";
    case Command::verify: return "verify";
  }
  return "?";
}

namespace {

struct Context {
  const RunConfig& config;
  GroupPtr group;
  SSPSearch search;
  bool nilpotent = false;
  std::size_t rational_classes = 0;
};

Json header(const Context& ctx) {
  return Json{{"command", to_string(ctx.config.command)},
              {"spec", ctx.config.group_spec},
              {"group", json::group_header(ctx.group)},
              {"nilpotent", ctx.nilpotent},
              {"rational_class_count", ctx.rational_classes},
              {"complete", ctx.search.complete}};
}

std::string describe_line(std::size_t i, const SSPRecord& rec, const ComponentDescriptor& d) {
  std::ostringstream s;
  s << "  [" << i << "] |H|=" << rec.H.order() << " |K|=" << rec.K.order() << " m=" << d.m
    << " degree " << d.degree << " over ";
  if (d.division == DivisionPart::quaternion) s << "quaternions over ";
  s << "a field of degree " << d.center.degree() << (d.center.is_real() ? " (real)" : "");
  if (d.case_tag) s << ", case " << qga::to_string(*d.case_tag);
  if (d.exceptional) s << ", exceptional";
  s << "\n";
  return s.str();
}

std::vector<ComponentDescriptor> descriptors(const Context& ctx) {
  std::vector<ComponentDescriptor> out(ctx.search.records.size());
  parallel_for(out.size(), ctx.config.jobs, [&](std::size_t i) {
    out[i] = describe_component(ctx.search.records[i], ctx.nilpotent);
  });
  return out;
}

void require_nilpotent(const Context& ctx) {
  if (!ctx.nilpotent)
    throw PreconditionError(std::string(to_string(ctx.config.command)) +
                            " requires a nilpotent group; " + ctx.group->name() + " is not");
}

RunResult decompose(const Context& ctx) {
  RunResult res;
  const auto descs = descriptors(ctx);
  Json out = header(ctx);
  Json comps = Json::array();
  std::string lines;
  for (std::size_t i = 0; i < descs.size(); ++i) {
    comps.push_back({{"index", i},
                     {"pair", json::ssp_record(ctx.search.records[i])},
                     {"descriptor", json::descriptor(descs[i])}});
    lines += describe_line(i, ctx.search.records[i], descs[i]);
  }
  out["components"] = std::move(comps);
  Json coll = Json::array();
  for (const auto& c : ctx.search.collisions)
    coll.push_back({{"record", c.record}, {"H", json::subgroup(c.H)}, {"K", json::subgroup(c.K)}});
  out["collisions"] = std::move(coll);
  res.json = out.dump(2);
  res.summary = ctx.group->name() + ": order " + std::to_string(ctx.group->order()) + ", " +
                std::to_string(descs.size()) + " components from strong Shoda pairs, " +
                std::to_string(ctx.rational_classes) + " rational classes" +
                (ctx.search.complete ? "" : " (incomplete: not strongly monomial?)") + "\n" +
                lines;
  return res;
}

RunResult idempotents(const Context& ctx, bool with_units) {
  require_nilpotent(ctx);
  RunResult res;
  CaseOptions opts;
  opts.xy_height_cap = ctx.config.xy_height_cap;
  const auto& recs = ctx.search.records;
  std::vector<Json> parts(recs.size());
  std::vector<std::string> lines(recs.size());
  parallel_for(recs.size(), ctx.config.jobs, [&](std::size_t i) {
    const MatrixUnitSystem sys = primitive_idempotents(recs[i], opts);
    if (with_units) matrix_units(sys);
    Json c{{"index", i},
           {"H", json::subgroup(recs[i].H)},
           {"K", json::subgroup(recs[i].K)},
           {"e", json::element(recs[i].e)}};
    c.update(json::matrix_unit_system(sys, with_units));
    parts[i] = std::move(c);
    lines[i] = "  [" + std::to_string(i) + "] case " + qga::to_string(sys.cs.tag) + ", " +
               std::to_string(sys.T.size()) + " primitive idempotents\n";
  });
  Json out = header(ctx);
  out["components"] = Json(parts);
  res.json = out.dump(2);
  res.summary = ctx.group->name() + ": " + std::to_string(recs.size()) + " components verified" +
                (with_units ? " with matrix units" : "") + "\n";
  for (const auto& l : lines) res.summary += l;
  return res;
}

SuiteOptions suite_options(const Context& ctx) {
  SuiteOptions o;
  o.jobs = ctx.config.jobs;
  o.xy_height_cap = ctx.config.xy_height_cap;
  return o;
}

RunResult units(const Context& ctx) {
  require_nilpotent(ctx);
  RunResult res;
  const GeneratorSuite suite = generator_suite(ctx.search, suite_options(ctx));
  Json out = header(ctx);
  out.update(json::generator_suite(suite));
  Json warnings = Json::array();
  std::size_t nv = 0;
  for (const auto& cu : suite.components) {
    nv += cu.vplus.size() + cu.vminus.size();
    if (cu.descriptor.exceptional)
      warnings.push_back("component " + std::to_string(cu.component) +
                         " is exceptional; the generated units need not have finite index");
  }
  out["warnings"] = warnings;
  res.json = out.dump(2);
  std::ostringstream s;
  s << ctx.group->name() << ": " << suite.central.size() << " central units ("
    << suite.central_skipped.size() << " skipped over budget), " << nv << " V+/V- generators\n";
  for (const auto& w : warnings) s << "  warning: " << w.get<std::string>() << "\n";
  res.summary = s.str();
  return res;
}

struct Checks {
  Json list = Json::array();
  bool all = true;
  std::string failed;

  void add(const std::string& name, const std::function<std::string()>& body) {
    bool pass = true;
    std::string detail;
    try {
      detail = body();
      if (detail.rfind("FAIL", 0) == 0) pass = false;
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("FAIL: ") + e.what();
    }
    list.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    if (!pass) {
      all = false;
      failed += "  failed: " + name + " (" + detail + ")\n";
    }
  }
};

std::string ok_or(bool ok, const std::string& fail_detail) {
  return ok ? "ok" : "FAIL: " + fail_detail;
}

RunResult verify(const Context& ctx) {
  RunResult res;
  const GroupPtr& g = ctx.group;
  const auto& recs = ctx.search.records;
  Checks checks;

  checks.add("idempotents_central", [&] {
    for (std::size_t i = 0; i < recs.size(); ++i)
      if (!is_idempotent(recs[i].e) || !is_central(recs[i].e))
        return "FAIL: component " + std::to_string(i);
    return std::string("ok");
  });
  checks.add("idempotents_orthogonal", [&] {
    for (std::size_t i = 0; i < recs.size(); ++i)
      for (std::size_t j = i + 1; j < recs.size(); ++j)
        if (!are_orthogonal(recs[i].e, recs[j].e))
          return "FAIL: components " + std::to_string(i) + "," + std::to_string(j);
    return std::string("ok");
  });
  if (ctx.nilpotent || ctx.search.complete) {
    checks.add("idempotents_sum_to_one",
               [&] { return ok_or(ctx.search.complete, "sum differs from 1"); });
    checks.add("component_count", [&] {
      return ok_or(recs.size() == ctx.rational_classes,
                   std::to_string(recs.size()) + " components vs " +
                       std::to_string(ctx.rational_classes) + " rational classes");
    });
  } else {
    checks.add("remainder_central_idempotent", [&] {
      AlgElement rest = AlgElement::one(g);
      for (const auto& r : recs) rest = rest - r.e;
      const bool ok = is_idempotent(rest) && is_central(rest) && !rest.is_zero() &&
                      recs.size() < ctx.rational_classes;
      return ok_or(ok, "remainder is not a nonzero central idempotent") +
             (ok ? "; " + std::to_string(recs.size()) + " of " +
                       std::to_string(ctx.rational_classes) +
                       " rational classes reached by strong Shoda pairs"
                 : "");
    });
  }
  checks.add("collisions_equivalent", [&] {
    for (const auto& c : ctx.search.collisions) {
      const auto& r = recs[c.record];
      if (!pairs_equivalent(c.H, c.K, r.H, r.K)) return std::string("FAIL: inequivalent pair");
    }
    return std::string("ok");
  });
  std::vector<ComponentDescriptor> descs;
  checks.add("descriptors", [&] {
    descs = descriptors(ctx);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& d = descs[i];
      const auto& fixed = d.center.fixed_under;
      const std::size_t index = recs[i].normalizer_of_K.order() / recs[i].H.order();
      if (d.m > 2) {
        const std::set<std::int64_t> s(fixed.begin(), fixed.end());
        if (s.size() != index) return "FAIL: action order, component " + std::to_string(i);
        for (auto x : s)
          for (auto y : s)
            if (!s.count(nt::mod(x * y, d.m)))
              return "FAIL: action not a subgroup, component " + std::to_string(i);
      }
      if (d.center.degree() != center_dimension(recs[i].e))
        return "FAIL: center dimension, component " + std::to_string(i);
    }
    return std::string("ok");
  });

  if (ctx.nilpotent) {
    checks.add("dimension_accounting", [&] {
      std::size_t total = 0;
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& d = descs.at(i);
        const std::size_t div = d.center.degree() * (d.division == DivisionPart::quaternion ? 4 : 1);
        const std::size_t dim = d.degree * d.degree * div;
        if (dim != qdimension(recs[i].e)) return "FAIL: component " + std::to_string(i);
        total += dim;
      }
      return ok_or(total == g->order(), "sum " + std::to_string(total));
    });
    checks.add("schur_index_at_most_two", [&] {
      const RoquetteReport rep = roquette_check(descs);
      return ok_or(rep.ok, std::to_string(rep.schur_violations.size()) + " violations");
    });
    checks.add("index_two_centers_real", [&] {
      const RoquetteReport rep = roquette_check(descs);
      std::string which;
      for (auto i : rep.non_real_quaternion) which += " " + std::to_string(i);
      return ok_or(rep.non_real_quaternion.empty(), "non-real center in component(s)" + which);
    });

    std::vector<std::optional<MatrixUnitSystem>> systems(recs.size());
    CaseOptions opts;
    opts.xy_height_cap = ctx.config.xy_height_cap;
    checks.add("primitive_idempotents", [&] {
      parallel_for(recs.size(), ctx.config.jobs,
                   [&](std::size_t i) { systems[i] = primitive_idempotents(recs[i], opts); });
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const bool quaternion = systems[i]->cs.tag == CaseTag::c2i;
        if (quaternion != (descs.at(i).schur_index == 2))
          return "FAIL: case and Schur index disagree, component " + std::to_string(i);
      }
      return std::string("ok");
    });
    checks.add("matrix_units", [&] {
      parallel_for(recs.size(), ctx.config.jobs,
                   [&](std::size_t i) { matrix_units(systems.at(i).value()); });
      return std::string("ok");
    });
    checks.add("bass_units", [&] {
      std::size_t count = 0;
      std::set<std::vector<Elem>> seen;
      for (Elem x = 0; x < g->order(); ++x) {
        const Subgroup c = cyclic_subgroup(g, x);
        if (!seen.insert(c.members()).second) continue;
        const auto n = static_cast<std::int64_t>(g->elem_order(x));
        for (std::int64_t k = 2; k < n; ++k) {
          if (std::gcd(k, n) != 1) continue;
          const UnitCertificate b = bass_unit(g, x, k);
          if (!certificate_holds(b) || augmentation(b.u) != 1)
            return "FAIL: b(" + std::to_string(x) + "," + std::to_string(k) + ")";
          ++count;
        }
      }
      return std::to_string(count) + " certified";
    });
    GeneratorSuite suite;
    checks.add("unit_suite", [&] {
      suite = generator_suite(ctx.search, suite_options(ctx));
      for (const auto& c : suite.central)
        if (!certificate_holds(c) || !is_central(c.u)) return std::string("FAIL: central unit");
      for (const auto& cu : suite.components) {
        for (const auto* list : {&cu.vplus, &cu.vminus})
          for (const auto& u : *list)
            if (!certificate_holds(u)) return "FAIL: V unit, component " + std::to_string(cu.component);
        if (!cu.vplus_nilpotent || !cu.vminus_nilpotent)
          return "FAIL: triangularity, component " + std::to_string(cu.component);
        if (cu.free_pair && !cu.free_pair->sanov)
          return "FAIL: free pair images, component " + std::to_string(cu.component);
      }
      return std::to_string(suite.central.size()) + " central units certified, " +
             std::to_string(suite.central_skipped.size()) + " over budget";
    });
  }

  Json out = header(ctx);
  out["checks"] = checks.list;
  out["pass"] = checks.all;
  res.json = out.dump(2);
  res.exit_code = checks.all ? kExitOk : kExitVerification;
  res.summary = g->name() + ": " + std::to_string(checks.list.size()) + " checks, " +
                (checks.all ? "all pass" : "FAILURES") + "\n" + checks.failed;
  return res;
}

RunResult error_result(int code, const char* kind, const std::string& message) {
  RunResult res;
  res.exit_code = code;
  res.json = Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2);
  res.summary = std::string("error (") + kind + "): " + message + "\n";
  return res;
}

}  // namespace

RunResult run(const RunConfig& config) {
  try {
    if (config.order_cap == 0 || config.xy_height_cap <= 0)
      throw SpecError("caps must be positive");
    Context ctx{config, build_family(config.group_spec, config.order_cap), {}, false, 0};
    ctx.nilpotent = nilpotency_data(ctx.group).is_nilpotent;
    ctx.rational_classes = rational_class_count(ctx.group);
    SearchOptions so;
    so.cap = config.order_cap;
    so.jobs = config.jobs;
    ctx.search = strong_shoda_pairs(ctx.group, so);
    switch (config.command) {
      case Command::decompose: return decompose(ctx);
      case Command::idempotents: return idempotents(ctx, false);
      case Command::matrix_units: return idempotents(ctx, true);
      case Command::units: return units(ctx);
      case Command::verify: return verify(ctx);
    }
  } catch (const SpecError& e) {
    return error_result(kExitParse, "parse", e.what());
  } catch (const PreconditionError& e) {
    return error_result(kExitParse, "precondition", e.what());
  } catch (const CapExceeded& e) {
    return error_result(kExitCap, "cap", e.what());
  } catch (const VerificationError& e) {
    return error_result(kExitVerification, "verification", e.what());
  }
  return error_result(kExitParse, "parse", "unknown command");
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Exact Wedderburn components, primitive idempotents and units of QG"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  std::string out_path;
  std::string format = "json";
  app.add_option("--cap", config.order_cap, "Largest group order (and subgroup lattice) accepted")
      ->check(CLI::PositiveNumber);
  app.add_option("--xy-height", config.xy_height_cap, "Height cap for the sum-of-squares search")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", format, "json (report on stdout, summary on stderr) or summary")
      ->check(CLI::IsMember({"json", "summary"}));

  const std::pair<const char*, Command> commands[] = {
      {"decompose", Command::decompose},   {"idempotents", Command::idempotents},
      {"matrix-units", Command::matrix_units}, {"units", Command::units},
      {"verify", Command::verify}};
  const char* help[] = {"Strong Shoda pairs and component descriptors",
                        "Primitive idempotents per component (nilpotent groups)",
                        "Matrix units per component (nilpotent groups)",
                        "Generators of unit subgroups of ZG (nilpotent groups)",
                        "Run the invariant suite; exit 0 iff every check passes"};
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("spec", config.group_spec, "Group spec, e.g. dihedral:8")->required();
    const Command c = commands[i].second;
    sub->callback([&config, c] { config.command = c; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }
  config.format = format == "summary" ? Format::summary : Format::json;
  if (!out_path.empty()) config.output_path = out_path;

  const RunResult res = run(config);
  const std::string& body = config.format == Format::json ? res.json + "\n" : res.summary;
  if (config.output_path) {
    std::ofstream f(*config.output_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << *config.output_path << "\n";
      return kExitParse;
    }
    f << body;
  } else {
    std::cout << body;
  }
  if (config.format == Format::json) std::cerr << res.summary;
  return res.exit_code;
}

}  // namespace qga::cli
