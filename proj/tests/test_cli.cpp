#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "conegeo/cli.hpp"
#include "conegeo/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace conegeo;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("conegeo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  static json load(const std::string& p) { return json::parse(slurp(p)); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, CrossCheckQuarterPi) {
  ASSERT_EQ(run({"crosscheck", "--a", "1", "--b", "0", "--c", "0", "--psi0", "0.7853981634", "--report",
                 path("cc.json")}),
            cli::kExitOk)
      << err_.str();
  const auto j = load(path("cc.json"));
  EXPECT_TRUE(j.at("rectifying").get<bool>());
  EXPECT_TRUE(j.at("slant_helix").get<bool>());
  EXPECT_TRUE(j.at("geodesic").get<bool>());
  EXPECT_TRUE(j.at("consistent").get<bool>());
  EXPECT_LT(j.at("identity_residual_axis").get<double>(), 1e-4);
}

TEST_F(Cli, StraightLineThroughOriginIsNumericalFailure) {
  std::string csv = "s,x,y,z\n";
  for (int i = 0; i <= 100; ++i) {
    const double s = 0.1 + 0.02 * i;
    csv += io::format_double(s) + "," + io::format_double(s * 0.6) + ",0," + io::format_double(s * 0.8) + "\n";
  }
  write("line.csv", csv);
  EXPECT_EQ(run({"classify", "--in", path("line.csv"), "--report", path("r.json")}), cli::kExitNumerical);
  EXPECT_NE(err_.str().find("VanishingCurvature"), std::string::npos);
  EXPECT_EQ(load(path("r.json")).at("error"), "VanishingCurvature");
}

TEST_F(Cli, LatitudeCircleIsNotGeodesic) {
  // u0 = 2 latitude of the psi0 = pi/6 cone, sampled by arc length.
  const double psi0 = std::numbers::pi / 6, u0 = 2.0;
  std::string csv = "s,x,y,z\n";
  for (int i = 0; i <= 400; ++i) {
    const double s = -2.0 + 0.01 * i;
    const double t = s / u0;
    const double phi = t / std::sin(psi0);
    csv += io::format_double(s) + "," + io::format_double(u0 * std::sin(psi0) * std::cos(phi)) + "," +
           io::format_double(u0 * std::sin(psi0) * std::sin(phi)) + "," + io::format_double(u0 * std::cos(psi0)) +
           "\n";
  }
  write("lat.csv", csv);
  write("cone.json", R"({"kind": "circular", "psi0": 0.5235987755982988})");
  ASSERT_EQ(run({"verify", "--cone", path("cone.json"), "--in", path("lat.csv"), "--report", path("v.json")}),
            cli::kExitOk)
      << err_.str();
  const auto j = load(path("v.json"));
  EXPECT_EQ(j.at("verdict"), "not-geodesic");
  EXPECT_NEAR(j.at("max_abs_kg").get<double>(), 0.5, 1e-3);
}

TEST_F(Cli, GenerateClassifyRoundTrip) {
  ASSERT_EQ(run({"generate", "--a", "1.5", "--b", "0.4", "--c", "0.2", "--psi0", "0.6", "--out", path("g.csv")}),
            cli::kExitOk)
      << err_.str();
  ASSERT_EQ(run({"classify", "--in", path("g.csv"), "--report", path("c.json")}), cli::kExitOk) << err_.str();
  const auto j = load(path("c.json"));
  EXPECT_EQ(j.at("label"), "Rectifying");
  EXPECT_NEAR(j.at("fitted_a").get<double>(), 1.5, 1.5e-3);
  EXPECT_NEAR(j.at("fitted_b").get<double>(), 0.4, 0.4e-3);
  EXPECT_TRUE(j.at("is_slant_helix").get<bool>());
}

TEST_F(Cli, GenerateOnSampledBase) {
  std::string base = "t,x,y,z\n";
  const double psi0 = 0.7;
  for (int i = 0; i <= 800; ++i) {
    const double t = -2.0 + 0.005 * i;
    base += io::format_double(t) + "," + io::format_double(std::sin(psi0) * std::cos(t / std::sin(psi0))) + "," +
            io::format_double(std::sin(psi0) * std::sin(t / std::sin(psi0))) + "," +
            io::format_double(std::cos(psi0)) + "\n";
  }
  write("base.csv", base);
  write("cone.json", R"({"kind": "general", "base_csv": "base.csv"})");
  ASSERT_EQ(run({"generate", "--a", "2", "--b", "0", "--c", "0", "--base", path("base.csv"), "--out",
                 path("g.csv")}),
            cli::kExitOk)
      << err_.str();
  ASSERT_EQ(run({"verify", "--cone", path("cone.json"), "--in", path("g.csv"), "--report", path("v.json")}),
            cli::kExitOk)
      << err_.str();
  EXPECT_EQ(load(path("v.json")).at("verdict"), "geodesic");
  ASSERT_EQ(run({"develop", "--cone", path("cone.json"), "--in", path("g.csv"), "--out", path("d.csv")}),
            cli::kExitOk)
      << err_.str();
  const auto dev = io::read_table(path("d.csv"), {"s", "px", "py"});
  std::vector<Vec2> pts;
  for (const auto& r : dev.rows) pts.emplace_back(r[1], r[2]);
  const auto fit = fit_line(pts);
  EXPECT_NEAR(fit.distance_to_origin, 0.5, 1e-5);
}

TEST_F(Cli, IntegrateWritesCurveAndChart) {
  write("cone.json", R"({"kind": "circular", "psi0": 0.7853981633974483})");
  write("ivp.json", R"({"t0": 0, "u0": 1, "dt0": 1, "du0": 0, "length": 5})");
  ASSERT_EQ(run({"integrate", "--cone", path("cone.json"), "--ivp", path("ivp.json"), "--out", path("i.csv"),
                 "--chart", path("ch.csv")}),
            cli::kExitOk)
      << err_.str();
  const auto curve = io::read_curve_csv(path("i.csv"));
  EXPECT_EQ(curve.params.size(), 5001u);
  const auto chart = io::read_table(path("ch.csv"), {"s", "t", "u", "dt", "du"});
  // Closed form for a = 1, b = 0, c = 0: u = sqrt(1+s^2), t = atan s.
  for (const auto& r : chart.rows) {
    EXPECT_NEAR(r[2], std::hypot(1.0, r[0]), 1e-6);
    EXPECT_NEAR(r[1], std::atan(r[0]), 1e-6);
  }
}

TEST_F(Cli, VertexApproachExitsTwoWithoutCurve) {
  write("cone.json", R"({"kind": "circular", "psi0": 0.5})");
  write("ivp.json", R"({"t0": 0, "u0": 1, "dt0": 0, "du0": -1, "length": 3})");
  EXPECT_EQ(run({"integrate", "--cone", path("cone.json"), "--ivp", path("ivp.json"), "--out", path("i.csv")}),
            cli::kExitNumerical);
  EXPECT_NE(err_.str().find("VertexApproach"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("i.csv")));
  EXPECT_FALSE(fs::exists(path("i.csv.tmp")));
}

TEST_F(Cli, ValidationErrorsExitOne) {
  EXPECT_EQ(run({}), cli::kExitInvalid);
  EXPECT_EQ(run({"generate", "--a", "-1", "--psi0", "0.5", "--out", path("g.csv")}), cli::kExitInvalid);
  EXPECT_EQ(run({"generate", "--a", "1", "--psi0", "2", "--out", path("g.csv")}), cli::kExitInvalid);
  EXPECT_EQ(run({"generate", "--a", "1", "--out", path("g.csv")}), cli::kExitInvalid);
  EXPECT_EQ(run({"classify", "--in", path("missing.csv"), "--report", path("r.json")}), cli::kExitInvalid);
  EXPECT_EQ(run({"classify", "--in", path("x.csv"), "--report", path("r.json"), "--slant-tol", "-1"}),
            cli::kExitInvalid);
  write("cone.json", R"({"kind": "circular"})");
  write("ivp.json", R"({"t0": 0, "u0": 1, "dt0": 0, "du0": 1, "length": 1})");
  EXPECT_EQ(run({"integrate", "--cone", path("cone.json"), "--ivp", path("ivp.json"), "--out", path("i.csv")}),
            cli::kExitInvalid);
  EXPECT_NE(err_.str().find("psi0"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("g.csv")));
  EXPECT_FALSE(fs::exists(path("r.json")));
  EXPECT_FALSE(fs::exists(path("i.csv")));
}

TEST_F(Cli, OutputsAreDeterministic) {
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(run({"generate", "--a", "2", "--b", "-1", "--c", "0.3", "--psi0", "0.4", "--samples", "333", "--out",
                   path(std::string(name) + ".csv")}),
              cli::kExitOk);
    ASSERT_EQ(run({"crosscheck", "--a", "2", "--b", "-1", "--c", "0.3", "--psi0", "0.4", "--report",
                   path(std::string(name) + ".json")}),
              cli::kExitOk);
  }
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(Cli, ConfigFileSuppliesDefaultsAndFlagsOverride) {
  write("run.toml", "[crosscheck]\na = 2\nb = 0.5\npsi0 = 0.6\nseed = 3\n");
  ASSERT_EQ(run({"--config", path("run.toml"), "crosscheck", "--a", "3", "--report", path("cc.json")}),
            cli::kExitOk)
      << err_.str();
  const auto j = load(path("cc.json"));
  EXPECT_EQ(j.at("a").get<double>(), 3.0);
  EXPECT_EQ(j.at("b").get<double>(), 0.5);
  EXPECT_EQ(j.at("psi0").get<double>(), 0.6);
}
