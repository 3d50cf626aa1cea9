#include "bncsm_cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace bncsm;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bncsm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
  const Result r = run(std::move(args));
  EXPECT_EQ(r.code, expected_code) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(CliSolve, LevelOne) {
  const json j = run_json({"solve", "--n-particles", "2", "--lambda", "1", "--lambda1", "1", "--level", "1"});
  EXPECT_EQ(j["schema_version"], 1);
  ASSERT_EQ(j["eigenfunctions"].size(), 1u);
  EXPECT_EQ(j["eigenfunctions"][0]["energy"], "7");
  EXPECT_EQ(j["eigenfunctions"][0]["label"], json::array({1}));
  EXPECT_EQ(j["eigenfunctions"][0]["poly"]["tag"], "Y");
}

TEST(CliSolve, GroundLevel) {
  const json j = run_json({"solve", "--n-particles", "2", "--lambda", "1", "--lambda1", "1", "--level", "0"});
  ASSERT_EQ(j["eigenfunctions"].size(), 1u);
  const json& ef = j["eigenfunctions"][0];
  EXPECT_EQ(ef["energy"], "5");
  EXPECT_EQ(ef["poly"]["terms"], json::parse(R"([{"partition": [], "coeff": "1"}])"));
}

TEST(CliSolve, LevelTwoHasTwoRecords) {
  const json j = run_json({"solve", "--n-particles", "2", "--level", "2"});
  ASSERT_EQ(j["eigenfunctions"].size(), 2u);
  EXPECT_EQ(j["eigenfunctions"][0]["label"], json::array({2}));
  EXPECT_EQ(j["eigenfunctions"][1]["label"], json::array({1, 1}));
}

TEST(CliSolve, UsageErrors) {
  EXPECT_EQ(run({"solve", "--lambda", "0.5"}).code, 2);
  EXPECT_EQ(run({"solve", "--lambda", "-1"}).code, 2);
  EXPECT_EQ(run({"solve", "--level", "-1"}).code, 2);
  EXPECT_EQ(run({"solve", "--format", "csv"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliSolve, FlagsNormalizabilityRisk) {
  const json j = run_json({"solve", "--lambda", "1/2", "--level", "1"});
  ASSERT_TRUE(j.contains("notes"));
  EXPECT_NE(j["notes"][0].get<std::string>().find("non-normalizable-risk"), std::string::npos);
}

TEST(CliSpectrum, TwoParticles) {
  const Result r = run({"spectrum", "--n-particles", "2", "--lambda", "1", "--lambda1", "1", "--n-max",
                        "3", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,energy,degeneracy\n0,5,1\n1,7,1\n2,9,2\n3,11,2\n");
}

TEST(CliSpectrum, SingleParticleAndFreeBosons) {
  const json one = run_json({"spectrum", "--n-particles", "1", "--lambda1", "1", "--n-max", "2"});
  EXPECT_EQ(one["levels"][0]["energy"], "3/2");
  EXPECT_EQ(one["levels"][1]["energy"], "7/2");
  EXPECT_EQ(one["levels"][2]["energy"], "11/2");
  for (const auto& row : one["levels"]) EXPECT_EQ(row["degeneracy"], 1);
  const json free = run_json({"spectrum", "--n-particles", "3", "--lambda", "0", "--lambda1", "0"});
  EXPECT_EQ(free["params"]["ground_energy"], "3/2");
}

TEST(CliVerify, DefaultPasses) {
  const json j = run_json({"verify"});
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["eigenfunctions"].size(), 6u);
  EXPECT_EQ(j["eigenfunctions"][0]["points_tested"], 20);
  EXPECT_LT(j["gram"]["max_off_block"].get<double>(), 1e-10);
  EXPECT_EQ(j["gram"]["quadrature"]["lambda"], "1");
}

TEST(CliVerify, PerturbedEnergyFails) {
  const Result r = run({"verify", "--perturb-energy", "1"});
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["counterexample"]["check"], "eigen_equation");
  EXPECT_NE(r.err.find("verification failed"), std::string::npos);
}

TEST(CliVerify, SkipNumeric) {
  const json j = run_json({"verify", "--skip-numeric"});
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_FALSE(j.contains("gram"));
  EXPECT_FALSE(j.contains("eigenfunctions"));
}

TEST(CliCsMap, AlphaOne) {
  const json j = run_json({"cs-map", "--n-particles", "2", "--alpha", "1", "--q-partition", "2"});
  ASSERT_EQ(j["entries"].size(), 1u);
  EXPECT_EQ(j["entries"][0]["eigenvalue"], "4");
  EXPECT_TRUE(j["entries"][0]["verified"].get<bool>());
  EXPECT_EQ(j["entries"][0]["poly"]["terms"],
            json::parse(R"([{"partition": [2], "coeff": "1"}, {"partition": [], "coeff": "-2"}])"));
}

TEST(CliCsMap, AlphaZeroMatchesHermiteSmoothing) {
  const json j = run_json({"cs-map", "--n-particles", "3", "--alpha", "0", "--level", "2"});
  ASSERT_EQ(j["entries"].size(), 2u);
  for (const auto& e : j["entries"]) {
    EXPECT_TRUE(e["verified"].get<bool>());
    EXPECT_TRUE(e["hermite_match"].get<bool>());
  }
}

TEST(CliCsMap, OddSeedRejected) {
  const Result r = run({"cs-map", "--alpha", "1", "--q-partition", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("even sector"), std::string::npos);
}

TEST(CliFockCheck, ExitCodes) {
  EXPECT_EQ(run({"fock-check", "--cutoff", "12"}).code, 0);
  EXPECT_EQ(run({"fock-check", "--cutoff", "6"}).code, 0);
  const Result tampered = run({"fock-check", "--k-plus-scale", "1"});
  EXPECT_EQ(tampered.code, 1);
  EXPECT_FALSE(json::parse(tampered.out)["su11"]["passed"].get<bool>());
  EXPECT_EQ(run({"fock-check", "--cutoff", "5"}).code, 2);
}

TEST(Cli, OutputIsByteStable) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "--n-particles", "3", "--lambda", "2", "--n-max", "2"},
           {"solve", "--n-particles", "4", "--lambda", "3/2", "--level", "4"},
           {"cs-map", "--alpha", "2", "--level", "3"}}) {
    const Result a = run(args);
    const Result b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ConfigFileMirrorsFlags) {
  const std::string path = ::testing::TempDir() + "bncsm_test.conf";
  {
    std::ofstream conf(path);
    conf << "n-particles = 1\nlambda1 = 1\nn-max = 1\nformat = csv\n";
  }
  const Result r = run({"--config", path, "spectrum"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "n,energy,degeneracy\n0,3/2,1\n1,7/2,1\n");
  std::remove(path.c_str());
}

TEST(Cli, WritesOutputFile) {
  const std::string path = ::testing::TempDir() + "bncsm_solve.json";
  EXPECT_EQ(run({"solve", "--level", "1", "--output", path}).code, 0);
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_EQ(j["eigenfunctions"][0]["energy"], "7");
  std::remove(path.c_str());
}
