#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string_view>

#include "cylresp/errors.hpp"
#include "cylresp/sweep.hpp"

namespace cylresp {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "bvp",      "m",        "k",        "f_start_hz", "f_stop_hz", "f_step_hz", "point_r",  "point_theta", "point_z",
    "amp_a_pa", "amp_b_pa", "amp_c_pa", "lambda_pa",  "mu_pa",     "rho",       "length_m", "radius_m",    "out"};

const char* kRequired[] = {"bvp", "m", "k", "f_start_hz", "f_stop_hz", "amp_a_pa", "amp_b_pa", "amp_c_pa"};
const char* kMaterialKeys[] = {"lambda_pa", "mu_pa", "rho", "length_m", "radius_m"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end) throw ConfigError(key, "not a number: '" + std::string(v) + "'");
  if (!std::isfinite(out)) throw ConfigError(key, "must be finite");
  return out;
}

int to_int(const std::string& key, std::string_view v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end) throw ConfigError(key, "not an integer: '" + std::string(v) + "'");
  return out;
}

// "3", "0,1,2" or "0..5"
std::vector<int> to_int_list(const std::string& key, std::string_view v) {
  std::vector<int> out;
  if (auto dots = v.find(".."); dots != std::string_view::npos) {
    const int lo = to_int(key, trim(v.substr(0, dots)));
    const int hi = to_int(key, trim(v.substr(dots + 2)));
    if (hi < lo) throw ConfigError(key, "empty range");
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = v.find(',', start);
    out.push_back(to_int(key, trim(v.substr(start, pos == std::string_view::npos ? pos : pos - start))));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<double> SweepConfig::frequencies() const {
  std::vector<double> out;
  const double span = (f_stop_hz - f_start_hz) / f_step_hz;
  const auto n = static_cast<long long>(std::floor(span + 1e-9));
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) out.push_back(f_start_hz + static_cast<double>(i) * f_step_hz);
  return out;
}

ExcitationSpec SweepConfig::excitation(int k_value, double f_hz) const {
  return ExcitationSpec::at_hz(bvp, m, k_value, f_hz, amp_a_pa, amp_b_pa, amp_c_pa);
}

SweepConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    if (!kKnownKeys.count(key)) throw ConfigError(key, "unknown key");
    if (kv.count(key)) throw ConfigError(key, "given more than once");
    kv[key] = value;
  }
  for (const char* req : kRequired)
    if (!kv.count(req)) throw ConfigError(req, "missing required key");

  SweepConfig cfg;
  const std::string& bvp = kv["bvp"];
  if (bvp == "1" || bvp == "bvp1") cfg.bvp = Bvp::One;
  else if (bvp == "2" || bvp == "bvp2") cfg.bvp = Bvp::Two;
  else throw ConfigError("bvp", "must be 1 or 2");

  cfg.m = to_int("m", kv["m"]);
  if (cfg.m < 0) throw ConfigError("m", "must be >= 0");
  cfg.k = to_int_list("k", kv["k"]);
  for (int k : cfg.k)
    if (k < 0) throw ConfigError("k", "must be >= 0");

  cfg.f_start_hz = to_double("f_start_hz", kv["f_start_hz"]);
  cfg.f_stop_hz = to_double("f_stop_hz", kv["f_stop_hz"]);
  if (!(cfg.f_start_hz > 0)) throw ConfigError("f_start_hz", "must be > 0");
  if (cfg.f_stop_hz < cfg.f_start_hz) throw ConfigError("f_stop_hz", "must be >= f_start_hz");
  if (kv.count("f_step_hz")) cfg.f_step_hz = to_double("f_step_hz", kv["f_step_hz"]);
  if (!(cfg.f_step_hz > 0)) throw ConfigError("f_step_hz", "must be > 0");

  cfg.amp_a_pa = to_double("amp_a_pa", kv["amp_a_pa"]);
  cfg.amp_b_pa = to_double("amp_b_pa", kv["amp_b_pa"]);
  cfg.amp_c_pa = to_double("amp_c_pa", kv["amp_c_pa"]);

  int given = 0;
  for (const char* key : kMaterialKeys) given += static_cast<int>(kv.count(key));
  if (given != 0 && given != 5)
    throw ConfigError(given ? "lambda_pa" : "", "material keys lambda_pa, mu_pa, rho, length_m, radius_m go together");
  if (given == 5) {
    cfg.material.lambda = to_double("lambda_pa", kv["lambda_pa"]);
    cfg.material.mu = to_double("mu_pa", kv["mu_pa"]);
    cfg.material.rho = to_double("rho", kv["rho"]);
    cfg.material.L = to_double("length_m", kv["length_m"]);
    cfg.material.R = to_double("radius_m", kv["radius_m"]);
    const std::pair<const char*, double> checks[] = {{"lambda_pa", cfg.material.lambda},
                                                     {"mu_pa", cfg.material.mu},
                                                     {"rho", cfg.material.rho},
                                                     {"length_m", cfg.material.L},
                                                     {"radius_m", cfg.material.R}};
    for (const auto& [key, value] : checks)
      if (!(value > 0)) throw ConfigError(key, "must be > 0");
  }

  cfg.point_r = kv.count("point_r") ? to_double("point_r", kv["point_r"]) : cfg.material.R / 2;
  cfg.point_theta = kv.count("point_theta") ? to_double("point_theta", kv["point_theta"]) : 0.0;
  cfg.point_z = kv.count("point_z") ? to_double("point_z", kv["point_z"]) : cfg.material.L / 7;
  if (cfg.point_r < 0 || cfg.point_r > cfg.material.R) throw ConfigError("point_r", "must lie in [0, R]");
  if (cfg.point_z < 0 || cfg.point_z > cfg.material.L) throw ConfigError("point_z", "must lie in [0, L]");

  if (kv.count("out")) cfg.out = kv["out"];
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cylresp
