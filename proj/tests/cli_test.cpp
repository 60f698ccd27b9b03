#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "qga_cli/cli.hpp"

namespace qga::cli {
namespace {

RunResult run_spec(Command c, const std::string& spec, std::size_t cap = 256) {
  RunConfig cfg;
  cfg.command = c;
  cfg.group_spec = spec;
  cfg.order_cap = cap;
  return run(cfg);
}

TEST(Cli, DecomposeQuaternion) {
  const auto r = run_spec(Command::decompose, "quaternion:8");
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto j = nlohmann::json::parse(r.json);
  ASSERT_EQ(j["components"].size(), 5u);
  std::size_t quaternion = 0;
  for (const auto& c : j["components"]) {
    const auto& d = c["descriptor"];
    for (const char* key : {"m", "r", "degree", "division", "center", "exceptional", "schur_index"})
      EXPECT_TRUE(d.contains(key)) << key;
    EXPECT_TRUE(d["center"].contains("conductor"));
    EXPECT_TRUE(d["center"].contains("fixed_exponents"));
    quaternion += d["division"] == "quaternion";
  }
  EXPECT_EQ(quaternion, 1u);
}

TEST(Cli, VerifyTrivialGroup) {
  const auto r = run_spec(Command::verify, "cyclic:1");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(r.json)["pass"].get<bool>());
}

TEST(Cli, UnitsDihedralWarnsOnExceptional) {
  const auto r = run_spec(Command::units, "dihedral:8");
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto j = nlohmann::json::parse(r.json);
  EXPECT_FALSE(j["warnings"].empty());
  bool nonempty_vplus = false;
  for (const auto& [k, v] : j["vplus"].items()) nonempty_vplus |= !v.empty();
  EXPECT_TRUE(nonempty_vplus);
  EXPECT_TRUE(j.contains("central"));
  EXPECT_TRUE(j.contains("vminus"));
  EXPECT_TRUE(j.contains("free_pairs"));
}

TEST(Cli, RationalAndElementSerialization) {
  const auto j = nlohmann::json::parse(run_spec(Command::idempotents, "cyclic:2").json);
  for (const auto& c : j["components"])
    for (const auto& [idx, coeff] : c["e"].items()) {
      EXPECT_NO_THROW(std::stoul(idx));
      EXPECT_NE(coeff.get<std::string>().find('/'), std::string::npos);
    }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_spec(Command::decompose, "nonsense:1").exit_code, kExitParse);
  EXPECT_EQ(run_spec(Command::decompose, "cyclic:64", 32).exit_code, kExitCap);
  EXPECT_EQ(run_spec(Command::idempotents, "sl23").exit_code, kExitParse);
  const auto bad = nlohmann::json::parse(run_spec(Command::decompose, "nonsense:1").json);
  EXPECT_TRUE(bad.contains("error"));
}

TEST(Cli, VerifyReportsNonRealQuaternionCenter) {
  const auto r = run_spec(Command::verify, "product:quaternion:8*cyclic:7");
  EXPECT_EQ(r.exit_code, kExitVerification);
  const auto j = nlohmann::json::parse(r.json);
  for (const auto& c : j["checks"])
    EXPECT_EQ(c["pass"].get<bool>(), c["name"] != "index_two_centers_real") << c["name"];
}

TEST(Cli, VerifyIsDeterministic) {
  for (const char* spec : {"dihedral:16", "product:quaternion:8*cyclic:5"}) {
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.group_spec = spec;
    const auto a = run(cfg);
    cfg.jobs = 3;
    const auto b = run(cfg);
    EXPECT_EQ(a.json, b.json) << spec;
  }
}

TEST(Cli, MainEntryParsing) {
  const char* argv_help[] = {"qga", "--help"};
  testing::internal::CaptureStdout();
  EXPECT_EQ(main_entry(2, const_cast<char**>(argv_help)), 0);
  testing::internal::GetCapturedStdout();
  const char* argv_bad[] = {"qga", "verify", "cyclic:2", "--cap", "x"};
  testing::internal::CaptureStderr();
  EXPECT_EQ(main_entry(5, const_cast<char**>(argv_bad)), kExitParse);
  testing::internal::GetCapturedStderr();
  const char* argv_none[] = {"qga"};
  testing::internal::CaptureStderr();
  EXPECT_EQ(main_entry(1, const_cast<char**>(argv_none)), kExitParse);
  testing::internal::GetCapturedStderr();
}

}  // namespace
}  // namespace qga::cli
