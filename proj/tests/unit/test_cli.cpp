#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "run_config.hpp"

using namespace lavaurs;
using namespace lavaurs::cli;

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LAVAURS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json last_line(const std::string& out) {
  std::istringstream in(out);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return nlohmann::json::parse(last);
}

nlohmann::json first_line(const std::string& out) { return nlohmann::json::parse(out.substr(0, out.find('\n'))); }

Complex cx(const nlohmann::json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lavaurs_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out_flag() const { return " --out " + dir_.string(); }
  fs::path dir_;
};

}  // namespace

TEST(CliConfig, ParseComplex) {
  EXPECT_EQ(parse_complex("0.5"), Complex(0.5));
  EXPECT_EQ(parse_complex("-1e-3"), Complex(-1e-3));
  EXPECT_EQ(parse_complex("0.1+0.2i"), Complex(0.1, 0.2));
  EXPECT_EQ(parse_complex("0.1-0.2i"), Complex(0.1, -0.2));
  EXPECT_EQ(parse_complex("2i"), Complex(0, 2));
  EXPECT_EQ(parse_complex("(0.1,0.2)"), Complex(0.1, 0.2));
  EXPECT_EQ(parse_complex("0.1,0.2"), Complex(0.1, 0.2));
  EXPECT_THROW(parse_complex("abc"), Error);
  EXPECT_EQ(parse_complex_list("1;2i").size(), 2u);
  EXPECT_EQ(parse_int_list("8,16,32"), (std::vector<std::int64_t>{8, 16, 32}));
}

TEST(CliConfig, Keys) {
  ExperimentConfig cfg;
  apply_key(cfg, "alpha", "0.55");
  EXPECT_EQ(cfg.params.alpha, 0.55);
  apply_key(cfg, "n_list", "10,20");
  EXPECT_EQ(cfg.n_list.size(), 2u);
  try {
    apply_key(cfg, "bogus", "1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  EXPECT_EQ(fixture_key(0.95), "0.95");
  EXPECT_EQ(fixture_key(1e-3), "0.001");
  EXPECT_EQ(config_echo(cfg)["alpha"].get<double>(), 0.55);
}

TEST_F(Cli, NormalFormDegenerates) {
  const auto a = run("normal-form --delta 0" + out_flag());
  ASSERT_EQ(a.code, 0);
  const auto j = last_line(a.out);
  EXPECT_NEAR(std::abs(cx(j["a3"]) - Complex(0.95)), 0, 1e-15);
  const auto b = run("normal-form --delta 0" + out_flag());
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, RejectsBadInput) {
  const auto key = run("normal-form --set nope=1" + out_flag());
  EXPECT_EQ(key.code, 2);
  EXPECT_NE(key.out.find("nope"), std::string::npos);
  const fs::path cfg = dir_ / "bad.cfg";
  std::ofstream(cfg) << "alpha = 0.55\nthis line has no equals sign\n";
  EXPECT_EQ(run("normal-form --config " + cfg.string() + out_flag()).code, 2);
  EXPECT_EQ(run("normal-form --alpha 0.9" + out_flag()).code, 2);
  EXPECT_EQ(run("verify unknown-name" + out_flag()).code, 2);
}

TEST_F(Cli, FatouValues) {
  const auto phi = run("fatou --which phi --z -0.05");
  ASSERT_EQ(phi.code, 0);
  const auto j = last_line(phi.out);
  EXPECT_LT(j["abel_residual"].get<double>(), 1e-8);
  EXPECT_NEAR(cx(j["value"]).real(), 19.80403728772068, 1e-9);

  const auto basin = run("fatou --which phi --z 0.5");
  EXPECT_EQ(basin.code, 3);
  EXPECT_EQ(last_line(basin.out)["error"], "basin");

  const auto lav = last_line(run("fatou --which lavaurs --z -0.3+0.2i").out);
  const auto ph = cx(last_line(run("fatou --which phi --z -0.3+0.2i").out)["value"]);
  const auto ps = last_line(run("fatou --which psi --z " + format_complex(ph)).out);
  EXPECT_NEAR(std::abs(cx(lav["value"]) - cx(ps["value"])), 0, 1e-12);
}

TEST_F(Cli, FixtureCacheHit) {
  const auto r = run("scan-fixed-point --fixtures " LAVAURS_FIXTURE_DIR + out_flag());
  ASSERT_EQ(r.code, 0);
  const auto j = first_line(r.out);
  EXPECT_TRUE(j["cached"].get<bool>());
  EXPECT_LT(j["multiplier_abs"].get<double>(), 1);
}

TEST_F(Cli, VerifyProp2) {
  const auto r = run("verify prop2" + out_flag());
  EXPECT_EQ(r.code, 0);
  std::ifstream csv(dir_ / "prop2.csv");
  std::string line;
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty() && line[0] != '#' && line.rfind("experiment,", 0) != 0) ++rows;
  EXPECT_EQ(rows, 3);
  ASSERT_TRUE(fs::exists(dir_ / "prop2.json"));
  ASSERT_TRUE(fs::exists(dir_ / "prop2.gp"));
  // rerun gives the same CSV
  std::ifstream first(dir_ / "prop2.csv");
  std::stringstream a;
  a << first.rdbuf();
  run("verify prop2" + out_flag());
  std::ifstream second(dir_ / "prop2.csv");
  std::stringstream b;
  b << second.rdbuf();
  EXPECT_EQ(a.str(), b.str());
}

TEST_F(Cli, PropADimensionsAgree) {
  const fs::path d1 = dir_ / "d1", d4 = dir_ / "d4";
  const std::string fx = " --fixtures " LAVAURS_FIXTURE_DIR;
  run("verify prop_a --dims 1 --delta 0 --out " + d1.string() + fx);
  run("verify prop_a --dims 4 --delta 0 --out " + d4.string() + fx);
  auto residuals = [](const fs::path& p) {
    std::ifstream in(p / "prop_a.json");
    const auto j = nlohmann::json::parse(in);
    std::vector<double> r;
    for (const auto& pt : j["series"][0]["points"]) r.push_back(pt["aux1"].get<double>());
    return r;
  };
  const auto r1 = residuals(d1), r4 = residuals(d4);
  ASSERT_EQ(r1.size(), 4u);
  ASSERT_EQ(r1.size(), r4.size());
  for (std::size_t i = 0; i < r1.size(); ++i) EXPECT_NEAR(r1[i], r4[i], 1e-6);
}
