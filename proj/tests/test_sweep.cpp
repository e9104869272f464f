#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cylresp/errors.hpp"
#include "cylresp/sweep.hpp"
#include "cylresp/system.hpp"

using namespace cylresp;

namespace {

const std::string kMinimal =
    "# minimal\n"
    "bvp = 2\n"
    "m = 1\n"
    "k = 1\n"
    "f_start_hz = 1000\n"
    "f_stop_hz = 1100\n"
    "amp_a_pa = 1e5\n"
    "amp_b_pa = 1e5\n"
    "amp_c_pa = 1e5   # trailing comment\n";

std::string with(const std::string& base, const std::string& key, const std::string& value) {
  std::istringstream in(base);
  std::string out, line;
  bool replaced = false;
  while (std::getline(in, line)) {
    if (line.rfind(key + " =", 0) == 0) {
      if (!value.empty()) out += key + " = " + value + "\n";
      replaced = true;
    } else {
      out += line + "\n";
    }
  }
  if (!replaced) out += key + " = " + value + "\n";
  return out;
}

std::string csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_sweep_csv(os, rows);
  return os.str();
}

std::string key_of_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

TEST(Config, Minimal) {
  const auto cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.bvp, Bvp::Two);
  EXPECT_EQ(cfg.m, 1);
  ASSERT_EQ(cfg.k.size(), 1u);
  EXPECT_EQ(cfg.f_step_hz, 10.0);
  EXPECT_EQ(cfg.point_r, cfg.material.R / 2);
  EXPECT_EQ(cfg.point_theta, 0.0);
  EXPECT_EQ(cfg.point_z, cfg.material.L / 7);
  EXPECT_EQ(cfg.frequencies().size(), 11u);
  EXPECT_EQ(cfg.frequencies().back(), 1100.0);
  EXPECT_TRUE(cfg.out.empty());
}

TEST(Config, Lists) {
  EXPECT_EQ(parse_config(with(kMinimal, "k", "0..3")).k, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(parse_config(with(kMinimal, "k", "1, 4,5")).k, (std::vector<int>{1, 4, 5}));
  EXPECT_EQ(parse_config(with(kMinimal, "bvp", "bvp1")).bvp, Bvp::One);
}

TEST(Config, Errors) {
  EXPECT_EQ(key_of_error(with(kMinimal, "m", "-1")), "m");
  EXPECT_EQ(key_of_error(with(kMinimal, "amp_c_pa", "")), "amp_c_pa");
  EXPECT_EQ(key_of_error(with(kMinimal, "colour", "red")), "colour");
  EXPECT_EQ(key_of_error(kMinimal + "m = 2\n"), "m");
  EXPECT_EQ(key_of_error(with(kMinimal, "bvp", "3")), "bvp");
  EXPECT_EQ(key_of_error(with(kMinimal, "f_start_hz", "0")), "f_start_hz");
  EXPECT_EQ(key_of_error(with(kMinimal, "f_step_hz", "-10")), "f_step_hz");
  EXPECT_EQ(key_of_error(with(kMinimal, "f_stop_hz", "10")), "f_stop_hz");
  EXPECT_EQ(key_of_error(with(kMinimal, "k", "1..x")), "k");
  EXPECT_EQ(key_of_error(with(kMinimal, "point_r", "0.06")), "point_r");
  EXPECT_EQ(key_of_error(with(kMinimal, "rho", "7800")), "lambda_pa");
  EXPECT_EQ(key_of_error(with(kMinimal, "amp_a_pa", "1e5x")), "amp_a_pa");
  EXPECT_THROW(parse_config("just text\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/cylresp.cfg"), ConfigError);
}

TEST(Config, Material) {
  std::string text = kMinimal;
  for (auto [k, v] : {std::pair{"lambda_pa", "1e11"}, {"mu_pa", "8e10"}, {"rho", "7800"}, {"length_m", "0.2"},
                      {"radius_m", "0.04"}})
    text = with(text, k, v);
  const auto cfg = parse_config(text);
  EXPECT_EQ(cfg.material.mu, 8e10);
  EXPECT_EQ(cfg.material.R, 0.04);
  EXPECT_EQ(cfg.point_r, 0.02);
  EXPECT_EQ(key_of_error(with(text, "mu_pa", "-1")), "mu_pa");
}

TEST(Config, ShippedFigureSetup) {
  const auto cfg = load_config(std::string(CYLRESP_SOURCE_DIR) + "/configs/paper_fig2.cfg");
  EXPECT_EQ(cfg.bvp, Bvp::Two);
  EXPECT_EQ(cfg.m, 1);
  EXPECT_EQ(cfg.k, std::vector<int>{1});
  EXPECT_EQ(cfg.frequencies().size(), 10000u);
  EXPECT_EQ(cfg.amp_a_pa, 1e5);
  EXPECT_EQ(cfg.material.lambda, reference_cylinder().lambda);
  EXPECT_EQ(cfg.material.mu, reference_cylinder().mu);
  EXPECT_EQ(cfg.point_r, cfg.material.R / 2);
  EXPECT_DOUBLE_EQ(cfg.point_z, cfg.material.L / 7);
}

TEST(Sweep, RowsAndHeader) {
  auto cfg = parse_config(with(with(kMinimal, "f_start_hz", "9000"), "f_stop_hz", "12000"));
  cfg.f_step_hz = 500;
  const auto rows = run_sweep(cfg, 2);
  ASSERT_EQ(rows.size(), 7u);
  const auto text = csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kSweepCsvHeader);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.has_fields);
    EXPECT_LE(r.boundary_residual, 1e-10);
    EXPECT_EQ(r.status, "ok");
  }
  EXPECT_EQ(rows[0].case_id, CaseId::Case1);
  EXPECT_EQ(rows[6].case_id, CaseId::Case3);
}

TEST(Sweep, SingularRowsAreKept) {
  auto cfg = parse_config(kMinimal);
  const double fs = case_boundaries_hz(cfg.material, 1).first;
  const auto row = sweep_point(cfg, 1, fs);
  EXPECT_EQ(row.status, "singular");
  EXPECT_FALSE(row.has_fields);
  const auto line = format_row(row);
  EXPECT_NE(line.find(",,,,,singular"), std::string::npos) << line;
}

TEST(Sweep, ZeroAmplitudes) {
  auto cfg = parse_config(kMinimal);
  cfg.amp_a_pa = cfg.amp_b_pa = cfg.amp_c_pa = 0.0;
  cfg.f_stop_hz = cfg.f_start_hz;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].u_r, 0.0);
  EXPECT_EQ(rows[0].u_theta, 0.0);
  EXPECT_EQ(rows[0].u_z, 0.0);
}

TEST(Sweep, DoublingAmplitudesDoublesDisplacements) {
  auto cfg = parse_config(with(with(kMinimal, "f_stop_hz", "30000"), "point_theta", "0.3"));
  cfg.f_step_hz = 1450;
  auto cfg2 = cfg;
  cfg2.amp_a_pa *= 2;
  cfg2.amp_b_pa *= 2;
  cfg2.amp_c_pa *= 2;
  const auto a = run_sweep(cfg), b = run_sweep(cfg2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].has_fields) continue;
    EXPECT_EQ(b[i].u_r, 2 * a[i].u_r);
    EXPECT_EQ(b[i].u_theta, 2 * a[i].u_theta);
    EXPECT_EQ(b[i].u_z, 2 * a[i].u_z);
  }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  auto cfg = parse_config(with(kMinimal, "f_stop_hz", "40000"));
  cfg.f_step_hz = 37;
  const auto one = csv(run_sweep(cfg, 1));
  EXPECT_EQ(csv(run_sweep(cfg, 4)), one);
  EXPECT_EQ(csv(run_sweep(cfg, 3)), one);
}

TEST(Sweep, NeedsSingleK) {
  const auto cfg = parse_config(with(kMinimal, "k", "1,2"));
  EXPECT_THROW(run_sweep(cfg), ConfigError);
}

TEST(Resonances, FirstBendingMode) {
  auto cfg = parse_config(with(with(with(kMinimal, "k", "0..5"), "f_start_hz", "10"), "f_stop_hz", "20000"));
  const auto rep = detect_resonances(cfg);
  bool found = false;
  for (const auto& r : rep.resonances) {
    EXPECT_GT(r.f_hz, r.bracket_lo_hz);
    EXPECT_LT(r.f_hz, r.bracket_hi_hz);
    if (std::abs(r.f_hz / 1000 - 6.118) <= 0.02 * 6.118) {
      found = true;
      EXPECT_EQ(r.table_mode.value(), 1);
      EXPECT_LT(std::abs(*r.offset), 0.02);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Resonances, RefinedDeterminantIsSmaller) {
  auto cfg = parse_config(with(with(with(kMinimal, "k", "1..2"), "f_start_hz", "10"), "f_stop_hz", "40000"));
  const auto rep = detect_resonances(cfg);
  ASSERT_FALSE(rep.resonances.empty());
  for (const auto& r : rep.resonances) {
    EXPECT_LE(r.bracket_hi_hz - r.bracket_lo_hz, cfg.f_step_hz + 1e-9);
    const double lo = system_determinant(cfg.material, cfg.excitation(r.k, r.bracket_lo_hz)).determinant;
    const double hi = system_determinant(cfg.material, cfg.excitation(r.k, r.bracket_hi_hz)).determinant;
    EXPECT_LT(std::abs(r.det), std::min(std::abs(lo), std::abs(hi)));
  }
}

TEST(Resonances, NoneBelow25kHzForM3) {
  auto cfg = parse_config(with(with(with(with(kMinimal, "m", "3"), "k", "1..5"), "f_start_hz", "10"),
                               "f_stop_hz", "25000"));
  EXPECT_TRUE(detect_resonances(cfg).resonances.empty());
}

TEST(Resonances, ConstantSignGridIsEmpty) {
  auto cfg = parse_config(kMinimal);
  cfg.f_step_hz = 1;
  const auto rep = detect_resonances(cfg);
  EXPECT_TRUE(rep.resonances.empty());
  std::ostringstream os;
  write_resonance_csv(os, rep);
  EXPECT_EQ(os.str(), "k,f_hz,bracket_lo_hz,bracket_hi_hz,case,det,table_mode,table_khz,offset\n");
}

TEST(Verify, PassesOnShortGrid) {
  auto cfg = parse_config(with(with(with(kMinimal, "m", "0"), "k", "0..2"), "f_stop_hz", "40000"));
  const auto out = run_verification(cfg, 6);
  ASSERT_FALSE(out.empty());
  bool series = false;
  for (const auto& o : out) {
    EXPECT_TRUE(o.pass()) << o.check << " k=" << o.k << " f=" << o.f_hz << " " << o.value;
    series = series || o.check == "series";
  }
  EXPECT_TRUE(series);
}

// the command line front end
class Cli : public ::testing::Test {
 protected:
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "cylresp_cli_test";
  void SetUp() override { std::filesystem::create_directories(dir); }
  void TearDown() override { std::filesystem::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir / name).string();
    std::ofstream(p) << text;
    return p;
  }
  static int run(const std::string& args) {
    const std::string cmd = std::string(CYLRESP_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }
  static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

TEST_F(Cli, SweepWritesCsv) {
  const auto cfg = write("a.cfg", kMinimal);
  const auto out = (dir / "a.csv").string();
  ASSERT_EQ(run("sweep --config " + cfg + " --out " + out), 0);
  const auto text = slurp(out);
  EXPECT_EQ(text.substr(0, text.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 12);
  const auto out2 = (dir / "b.csv").string();
  ASSERT_EQ(run("sweep --config " + cfg + " --out " + out2), 0);
  EXPECT_EQ(slurp(out2), text);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("sweep --config " + write("bad.cfg", with(kMinimal, "m", "-1"))), 2);
  EXPECT_EQ(run("sweep --config " + (dir / "missing.cfg").string()), 2);
  EXPECT_EQ(run("sweep"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("resonances --config " + write("r.cfg", kMinimal)), 0);
  EXPECT_EQ(run("verify --config " + write("v.cfg", kMinimal) + " --samples 2"), 0);
  EXPECT_EQ(run("sweep --config " + write("u.cfg", kMinimal) + " --out /nonexistent/dir/x.csv"), 2);
}

}  // namespace
