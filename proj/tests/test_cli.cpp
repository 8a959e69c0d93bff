#include "lcz/cli.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace {

using Json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run lcz_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lcz");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = lcz::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

std::string fb_file(double b, int n) {
  std::ostringstream s;
  s.precision(17);
  for (int j = 0; j <= n; ++j) s << std::pow(b, -j * (j + 1)) << '\n';
  return write_temp("lcz_fb_" + std::to_string(n) + ".txt", s.str());
}

TEST(Cli, Beta0AtThreeQuarters) {
  const auto r = lcz_run({"beta0", "--theta", "0.75pi"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_NEAR(j["result"]["beta0"].get<double>(), 1 + std::sqrt(2.0), 1e-9);
  EXPECT_EQ(j["result"]["branch"], "OneMinus2Cos");
  EXPECT_EQ(j["result"]["theta"]["input"], "0.75pi");
  EXPECT_EQ(j["result"]["theta"]["pi_fraction"].get<double>(), 0.75);
}

TEST(Cli, CertifyConstantRatioTwo) {
  const auto r = lcz_run({"certify", "--coeffs", fb_file(2.0, 10), "--theta", "0.6667pi", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["result"]["status"], "Certified");
  EXPECT_NEAR(j["result"]["min_beta"].get<double>(), 4.0, 1e-12);
  EXPECT_TRUE(j["result"]["oracle"]["consistent"].get<bool>());
}

TEST(Cli, CertifyRefusalsExitTwo) {
  auto r = lcz_run({"certify", "--inline", "1,2,3,4,3,2,1", "--theta", "3pi/4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["result"]["status"], "Refused");
  r = lcz_run({"certify", "--inline", "1,6,5,1", "--theta", "pi/2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.json()["result"]["reason"].get<std::string>().find("degree"), std::string::npos);
  r = lcz_run({"certify", "--coeffs", fb_file(2.0, 10), "--max"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["kind"], "RealRoots");
}

TEST(Cli, CriticalBaseFive) {
  const auto r = lcz_run({"constant-ratio", "--critical", "5", "--digits", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["digits"], 50);
  EXPECT_EQ(j["result"]["b0"].get<std::string>().rfind("1.7982270324863302995970201", 0), 0u);
  EXPECT_EQ(j["result"]["bound"], "lower");
}

TEST(Cli, TablesInTextMode) {
  const auto r = lcz_run({"constant-ratio", "--table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("l =  5   b0 = 1.7982270324863302995970201"), std::string::npos);
  EXPECT_NE(r.out.find("l = 10   b0 = 1.7982315382745004887933809"), std::string::npos);
  EXPECT_NE(r.out.find("l =  4   b0 = 1.7989074399478672722612275   x0 = 7.497221"), std::string::npos);
  const auto j = lcz_run({"constant-ratio", "--table", "--output", "json"}).json();
  EXPECT_EQ(j["result"]["odd"].size(), 5u);
  EXPECT_EQ(j["result"]["even"].size(), 5u);
}

TEST(Cli, ClassifyAndSqueeze) {
  auto j = lcz_run({"constant-ratio", "--classify", "1.797", "30"}).json();
  EXPECT_EQ(j["result"]["kind"], "NonrealRoots");
  EXPECT_EQ(j["result"]["l_witness"], 5);
  j = lcz_run({"constant-ratio", "--squeeze", "--lmax", "7"}).json();
  EXPECT_EQ(j["result"]["l_lower"], 7);
  EXPECT_EQ(j["result"]["l_upper"], 6);
  EXPECT_EQ(j["result"]["bases"].size(), 6u);
  j = lcz_run({"constant-ratio", "--sign-test", "1.80", "4"}).json();
  EXPECT_EQ(j["result"]["outcome"], "EvenWitnessFound");
}

TEST(Cli, KurtzModes) {
  auto r = lcz_run({"kurtz"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.json()["result"]["constant"].get<double>(), 4.448505576, 1e-9);
  EXPECT_FALSE(r.json()["result"]["statement_form"]["has_root"].get<bool>());

  r = lcz_run({"kurtz", "--coeffs", fb_file(std::sqrt(4.5), 12), "--annuli", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["result"]["one_root"].size(), 12u);
  EXPECT_TRUE(j["result"]["oracle"]["consistent"].get<bool>());

  r = lcz_run({"kurtz", "--coeffs", fb_file(2.0, 7), "--real-chart", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = r.json();
  EXPECT_EQ(j["result"]["root_intervals"].size(), 7u);
  EXPECT_TRUE(j["result"]["oracle"]["consistent"].get<bool>());

  r = lcz_run({"kurtz", "--inline", "1,6,5,1", "--annuli"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["result"]["code"], "ProfileTooSmall");
  r = lcz_run({"kurtz", "--inline", "1,3,3,1", "--real-chart"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, RootsAtHighPrecisionAreStrings) {
  const auto r = lcz_run({"roots", "--inline", "2,-3,1", "--digits", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["digits"], 30);
  ASSERT_EQ(j["result"]["roots"].size(), 2u);
  EXPECT_TRUE(j["result"]["roots"][0]["re"].is_string());
  EXPECT_NEAR(std::stod(j["result"]["roots"][0]["re"].get<std::string>()), 1.0, 1e-15);
  EXPECT_LT(j["result"]["roots"][1]["residual"].get<double>(), 1e-28);
}

TEST(Cli, ComplexCoefficientsUseModuli) {
  const auto j = lcz_run({"beta", "--inline", "[[1,0],[0,6],[5,0],[0,-1]]"}).json();
  EXPECT_TRUE(j["result"]["moduli"].get<bool>());
  EXPECT_NEAR(j["result"]["min_beta"].get<double>(), 25.0 / 6, 1e-12);
}

TEST(Cli, ParadoxDemo) {
  const auto r = lcz_run({"demo-paradox", "--digits", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_GT(j["result"]["nonreal_despite_large_ratios"]["min_beta"].get<double>(), 3.99);
  EXPECT_EQ(j["result"]["nonreal_despite_large_ratios"]["nonreal_count"], 2);
  EXPECT_TRUE(j["result"]["real_with_constant_ratio"]["all_real"].get<bool>());
}

TEST(Cli, UsageErrorsExitSixtyFour) {
  EXPECT_EQ(lcz_run({}).code, 64);
  EXPECT_EQ(lcz_run({"frobnicate"}).code, 64);
  EXPECT_EQ(lcz_run({"beta0"}).code, 64);
  EXPECT_EQ(lcz_run({"beta0", "--theta", "three quarters"}).code, 64);
  EXPECT_EQ(lcz_run({"constant-ratio", "--critical", "5", "--digits", "10"}).code, 64);
  EXPECT_EQ(lcz_run({"constant-ratio", "--critical", "5", "--squeeze"}).code, 64);
  EXPECT_EQ(lcz_run({"certify", "--theta", "pi/2"}).code, 64);
  EXPECT_EQ(lcz_run({"sharpness", "--theta", "3pi/4", "--base", "Q"}).code, 64);
  EXPECT_EQ(lcz_run({"--output", "xml", "beta0", "--theta", "pi/2"}).code, 64);
  EXPECT_EQ(lcz_run({"--help"}).code, 0);
}

TEST(Cli, LibraryErrorsExitOne) {
  EXPECT_EQ(lcz_run({"beta0", "--theta", "0.25pi"}).code, 1);
  EXPECT_EQ(lcz_run({"theta", "--beta", "5"}).code, 1);
  EXPECT_EQ(lcz_run({"roots", "--coeffs", "/nonexistent/coeffs.txt"}).code, 1);
  EXPECT_EQ(lcz_run({"constant-ratio", "--critical", "20"}).code, 1);
}

TEST(Cli, DigitsFromEnvironment) {
  ::setenv("LCZ_DIGITS", "35", 1);
  auto r = lcz_run({"constant-ratio", "--critical", "4"});
  EXPECT_EQ(r.json()["digits"], 35);
  ::setenv("LCZ_DIGITS", "many", 1);
  r = lcz_run({"constant-ratio", "--critical", "4"});
  EXPECT_EQ(r.code, 64);
  ::unsetenv("LCZ_DIGITS");
  EXPECT_EQ(lcz_run({"constant-ratio", "--critical", "4"}).json()["digits"], 50);
}

TEST(Cli, TableOutputFlattens) {
  const auto r = lcz_run({"--output", "table", "beta0", "--theta", "2pi/3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("result.branch"), std::string::npos);
  EXPECT_NE(r.out.find("result.theta.pi_fraction"), std::string::npos);
}

TEST(Cli, SweepCsv) {
  const auto r = lcz_run({"sweep", "theta", "--from", "pi/2", "--to", "0.9pi", "--steps", "5", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("index,theta,theta_over_pi,beta0,branch,theta_back\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}

// Properties.

TEST(CliProperties, EveryReportCarriesTheEnvelope) {
  const std::vector<std::vector<std::string>> calls = {
      {"beta", "--inline", "1,3,3,1"},
      {"beta0", "--theta", "pi/2"},
      {"theta", "--beta", "2"},
      {"certify", "--inline", "1,2,3,4,3,2,1", "--theta", "pi/2"},
      {"sharpness", "--theta", "3pi/4", "--base", "H", "--n", "50", "--degree", "8"},
      {"kurtz"},
      {"roots", "--inline", "1,3,3,1"},
      {"constant-ratio", "--critical", "3", "--digits", "30"},
      {"sweep", "random", "--count", "5"},
  };
  for (const auto& call : calls) {
    const auto r = lcz_run(call);
    ASSERT_NE(r.code, 64) << call[0] << ": " << r.err;
    const auto j = r.json();
    for (const char* key : {"artifact_version", "digits", "inputs", "result"}) {
      EXPECT_TRUE(j.contains(key)) << call[0] << " lacks " << key;
    }
  }
}

TEST(CliProperties, AngleFormsRoundTrip) {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> num(1, 60);
  std::uniform_int_distribution<int> den(1, 60);
  for (int trial = 0; trial < 300; ++trial) {
    const int p = num(rng);
    const int q = den(rng);
    const std::string text = std::to_string(p) + "pi/" + std::to_string(q);
    const auto a = lcz::cli::parse_angle(text);
    EXPECT_EQ(a.text, text);
    EXPECT_EQ(a.pi_fraction, static_cast<double>(p) / q);
    EXPECT_NEAR(a.radians, kPi * p / q, 1e-15 * a.radians);

    std::ostringstream s;
    s.precision(17);
    s << a.radians;
    const auto back = lcz::cli::parse_angle(s.str());
    EXPECT_EQ(back.radians, a.radians);
  }
  EXPECT_EQ(lcz::cli::parse_angle("pi").pi_fraction, 1.0);
  EXPECT_EQ(lcz::cli::parse_angle("-pi/3").pi_fraction, -1.0 / 3);
  EXPECT_EQ(lcz::cli::parse_angle("0.64 pi").pi_fraction, 0.64);
  EXPECT_THROW(lcz::cli::parse_angle("pi/0"), std::invalid_argument);
  EXPECT_THROW(lcz::cli::parse_angle(""), std::invalid_argument);
  EXPECT_THROW(lcz::cli::parse_angle("2pix"), std::invalid_argument);
}

TEST(CliProperties, SweepIsIndependentOfThreadCount) {
  const auto one = lcz_run({"sweep", "random", "--count", "60", "--seed", "9", "--threads", "1", "--csv"});
  const auto many = lcz_run({"sweep", "random", "--count", "60", "--seed", "9", "--threads", "6", "--csv"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
  const auto other = lcz_run({"sweep", "random", "--count", "60", "--seed", "10", "--threads", "1", "--csv"});
  EXPECT_NE(one.out, other.out);

  const auto b1 = lcz_run({"sweep", "base", "--steps", "5", "--degree", "20", "--digits", "30", "--threads", "1"});
  const auto b4 = lcz_run({"sweep", "base", "--steps", "5", "--degree", "20", "--digits", "30", "--threads", "4"});
  EXPECT_EQ(b1.json()["result"], b4.json()["result"]);
}

}  // namespace
