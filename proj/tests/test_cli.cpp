#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "stablerank/stablerank.hpp"

namespace fs = std::filesystem;
using namespace stablerank;

namespace {

const std::string kCli = STABLERANK_CLI;
const std::string kData = STABLERANK_DATA_DIR;
const std::string kGolden = STABLERANK_GOLDEN_DIR;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  CliRun r;
  const std::string cmd = "'" + kCli + "' " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("stablerank-cli-" + std::to_string(getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    config_ = "--config '" + (dir_ / "calibration.json").string() + "' ";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string tuple(const std::string& name) const { return "'" + kData + "/tuples/" + name + "'"; }
  std::string model(const std::string& name) const { return "'" + kData + "/" + name + "'"; }

  fs::path dir_;
  std::string config_;
};

}  // namespace

TEST_F(Cli, Buhstaber) {
  const CliRun r = run("buhstaber 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "12\n");
  EXPECT_EQ(run("buhstaber 1").out, "1\n");
  EXPECT_EQ(run("buhstaber 0").code, 2);
  const CliRun j = run("--json buhstaber 7");
  EXPECT_EQ(Json::parse(j.out)["bound"], "12");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check pn").code, 2);
  EXPECT_EQ(run("roots Q7").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, RootsAndWeyl) {
  const Json j = Json::parse(run("--json roots G2").out);
  EXPECT_EQ(j["positive_roots"], 6);
  EXPECT_NE(run("weyl A4").out.find("120 elements"), std::string::npos);
  EXPECT_EQ(run("weyl E8").code, 2);
  EXPECT_NE(run("weyl A2 --bruhat").out.find("s1*s2 < s1*s2*s1"), std::string::npos);
}

TEST_F(Cli, ProjectiveSpace) {
  EXPECT_EQ(run("check pn 2 --tuple " + tuple("does-not-exist.tuple")).code, 0);
  EXPECT_EQ(run("check pn 3 --tuple " + tuple("p3_tangent.tuple")).code, 0);
  const CliRun bad = run("check pn 3 --tuple " + tuple("p3_odd_c3.tuple"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("3/2"), std::string::npos);
  EXPECT_EQ(run("check pn 4 --tuple " + tuple("p4_fraction.tuple")).code, 2);
  EXPECT_EQ(run("check pn 3 --tuple " + tuple("does-not-exist.tuple")).code, 2);
  const CliRun j = run("--json check pn 4 --tuple " + tuple("p4_sum.tuple"));
  EXPECT_EQ(j.code, 0);
  const Verdict v = verdict_from_json(Json::parse(j.out));
  EXPECT_EQ(v.conditions.size(), 2u);
  EXPECT_TRUE(v.pass());
}

TEST_F(Cli, ModelFiles) {
  EXPECT_EQ(run("check model " + model("p4.model") + " --tuple " + tuple("p4_sum.tuple")).code, 0);
  EXPECT_EQ(run("check model " + model("p4.model") + " --tuple " + tuple("p4_sum.tuple") + " --torsion-free").code, 0);
  EXPECT_EQ(run("check model " + model("p3.model") + " --tuple " + tuple("p3_odd_c3.tuple")).code, 1);
  EXPECT_EQ(run("check model " + model("gr24.model") + " --tuple " + tuple("gr24_tangent.tuple")).code, 0);
  EXPECT_EQ(run("check model " + model("gr24.model") + " --tuple " + tuple("gr24_tangent.tuple") + " --torsion-free").code, 2);
  EXPECT_EQ(run("check model " + model("p1xp3.model") + " --tuple " + tuple("p1xp3_sum.tuple")).code, 0);
  EXPECT_EQ(run("check model " + model("p3.model") + " --tuple " + tuple("p3_tangent.tuple") + " --dim4").code, 2);
  EXPECT_EQ(run("check model " + model("p2.model") + " --tuple " + tuple("p4_sum.tuple")).code, 0);
  const fs::path broken = dir_ / "broken.model";
  std::ofstream(broken) << "name x\ndim 1\nbasis 0 one\nbasis 1 h\nintegrate h = 1\ncolour blue\n";
  EXPECT_EQ(run("check model '" + broken.string() + "' --tuple " + tuple("p4_sum.tuple")).code, 2);
}

TEST_F(Cli, FlagChecksNeedCalibration) {
  const std::string t = tuple("a2_sum.tuple");
  EXPECT_EQ(run(config_ + "check flag A2 --tuple " + t).code, 2);
  EXPECT_EQ(run(config_ + "calibrate A2").code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "calibration.json"));
  EXPECT_EQ(run(config_ + "check flag A2 --tuple " + t).code, 0);
  EXPECT_EQ(run(config_ + "check flag A2 --tuple " + t + " --route weights").code, 0);
  const CliRun bad = run(config_ + "--json check flag A2 --tuple " + tuple("a2_cubic.tuple"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.out)["conditions"][0]["value"], "7/2");
  EXPECT_EQ(run(config_ + "check flag A2 --parabolic 2 --tuple " + t).code, 2);
  EXPECT_EQ(run(config_ + "calibrate B2").code, 0);
  const Json cfg = Json::parse(slurp((dir_ / "calibration.json").string()));
  EXPECT_EQ(cfg["flag-manifold"]["calibrated_on"], Json({"A2", "B2"}));
  EXPECT_EQ(run(config_ + "calibrate A3").code, 2);
}

TEST_F(Cli, QMatrixGoldenFiles) {
  ASSERT_EQ(run(config_ + "calibrate A2").code, 0);
  for (const char* type : {"A2", "B2"}) {
    const CliRun r = run(config_ + "--json qmatrix " + type);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(kGolden + "/qmatrix_" + type + ".json")) << type;
  }
  const CliRun other = run(config_ + "--json qmatrix A2 --word 212");
  const Json a = Json::parse(other.out), b = Json::parse(slurp(kGolden + "/qmatrix_A2.json"));
  EXPECT_EQ(a["q"], b["q"]);
  EXPECT_EQ(a["twisted"], b["twisted"]);
  EXPECT_EQ(run(config_ + "qmatrix A2 --word 12").code, 2);
}

TEST_F(Cli, QMatrixWithoutCalibrationUsesDefaultWithNote) {
  const Json j = Json::parse(run(config_ + "--json qmatrix A1").out);
  ASSERT_EQ(j["notes"].size(), 1u);
  EXPECT_EQ(j["twisted"][1], Json({"1", "1"}));
}

TEST_F(Cli, OutputIsDeterministic) {
  ASSERT_EQ(run(config_ + "calibrate A2").code, 0);
  for (const std::string& args : {config_ + "--json qmatrix B2", "--json check pn 5 --tuple " + tuple("p4_sum.tuple"),
                                  config_ + "--json check flag A2 --tuple " + tuple("a2_sum.tuple")}) {
    EXPECT_EQ(run(args).out, run(args).out) << args;
  }
}
