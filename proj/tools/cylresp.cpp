// cylresp: frequency sweeps, resonance search and self-checks for the forced
// simply supported cylinder.
//
// exit codes: 0 success, 2 configuration error, 3 numerical failure

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cylresp/errors.hpp"
#include "cylresp/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int cmd_sweep(const std::string& config_path, const std::string& out_override) {
  auto cfg = cylresp::load_config(config_path);
  if (!out_override.empty()) cfg.out = out_override;
  if (cfg.k.size() != 1) throw cylresp::ConfigError("k", "sweep takes a single k");
  if (!cfg.excitation(cfg.k.front(), cfg.f_start_hz).is_forced())
    std::cerr << "note: amplitudes do not drive this problem; all fields will be zero\n";

  const auto rows = cylresp::run_sweep(cfg);
  std::size_t skipped = 0, resonant = 0;
  for (const auto& r : rows) {
    skipped += r.status == "singular";
    resonant += r.status == "resonance";
  }
  if (skipped) std::cerr << "note: " << skipped << " singular frequencies left without fields\n";
  if (resonant) std::cerr << "note: " << resonant << " frequencies hit a vanishing determinant\n";

  if (cfg.out.empty()) {
    cylresp::write_sweep_csv(std::cout, rows);
    return 0;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw cylresp::ConfigError("out", "cannot write '" + cfg.out + "'");
  cylresp::write_sweep_csv(os, rows);
  if (!os) throw cylresp::ConfigError("out", "write to '" + cfg.out + "' failed");
  std::cerr << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
  return 0;
}

int cmd_resonances(const std::string& config_path) {
  const auto cfg = cylresp::load_config(config_path);
  const auto report = cylresp::detect_resonances(cfg);
  cylresp::write_resonance_csv(std::cout, report);
  std::cerr << report.resonances.size() << " determinant zero-crossings";
  if (!report.skipped_hz.empty()) std::cerr << ", " << report.skipped_hz.size() << " singular grid points skipped";
  std::cerr << "\n";
  return 0;
}

int cmd_verify(const std::string& config_path, int samples) {
  const auto cfg = cylresp::load_config(config_path);
  const auto outcomes = cylresp::run_verification(cfg, samples);
  int failures = 0;
  for (const auto& o : outcomes) {
    std::printf("%-8s k=%d f=%.3f Hz  %.3e (limit %.0e)  %s\n", o.check.c_str(), o.k, o.f_hz, o.value, o.limit,
                o.pass() ? "ok" : "FAIL");
    failures += !o.pass();
  }
  std::printf("%zu checks, %d failed\n", outcomes.size(), failures);
  return failures ? kExitNumerical : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forced vibration of a simply supported elastic cylinder"};
  app.require_subcommand(1);

  std::string config, out;
  int samples = 12;
  auto* sweep = app.add_subcommand("sweep", "stationary displacement over a frequency grid (CSV)");
  sweep->add_option("--config", config, "key = value config file")->required();
  sweep->add_option("--out", out, "output CSV (overrides the config's out)");

  auto* res = app.add_subcommand("resonances", "determinant zero-crossings matched to the natural-frequency table");
  res->add_option("--config", config, "key = value config file")->required();

  auto* verify = app.add_subcommand("verify", "boundary, finite-difference and series cross-checks");
  verify->add_option("--config", config, "key = value config file")->required();
  verify->add_option("--samples", samples, "frequencies checked per k")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep) return cmd_sweep(config, out);
    if (*res) return cmd_resonances(config);
    if (*verify) return cmd_verify(config, samples);
  } catch (const cylresp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cylresp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cylresp::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
