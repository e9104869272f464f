#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cylresp/classify.hpp"
#include "cylresp/model.hpp"

namespace cylresp {

struct SweepConfig {
  Bvp bvp = Bvp::Two;
  int m = 0;
  std::vector<int> k;  // `sweep` needs exactly one entry
  double f_start_hz = 0.0;
  double f_stop_hz = 0.0;
  double f_step_hz = 10.0;
  double point_r = 0.0;
  double point_theta = 0.0;
  double point_z = 0.0;
  double amp_a_pa = 0.0;
  double amp_b_pa = 0.0;
  double amp_c_pa = 0.0;
  MaterialGeometry<double> material = reference_cylinder();
  std::string out;  // empty: stdout

  /// Grid points f_start + i * f_step up to f_stop (inclusive within rounding).
  std::vector<double> frequencies() const;
  ExcitationSpec excitation(int k_value, double f_hz) const;
};

/// key = value lines, '#' starts a comment. Unknown keys, missing required keys
/// and out-of-range values raise ConfigError naming the key.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);

struct SweepRow {
  double f_hz = 0.0;
  CaseId case_id = CaseId::Case1;
  bool has_fields = false;
  double u_r = 0.0, u_theta = 0.0, u_z = 0.0;
  double det = 0.0;
  double boundary_residual = 0.0;
  std::string status;  // ok | near_resonance | near_boundary | singular | resonance
};

inline constexpr const char* kSweepCsvHeader = "f_hz,case,u_r_m,u_theta_m,u_z_m,det,boundary_residual,status";

/// Evaluates one grid point.
SweepRow sweep_point(const SweepConfig& cfg, int k_value, double f_hz);

/// All grid points for the configured (single) k, evaluated on `threads` workers
/// (0 = hardware concurrency) and returned in grid order.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 0);

std::string format_row(const SweepRow& row);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct Resonance {
  int k = 0;
  double f_hz = 0.0;        // refined
  double bracket_lo_hz = 0.0;
  double bracket_hi_hz = 0.0;
  double det = 0.0;         // at the refined frequency
  CaseId case_id = CaseId::Case1;
  std::optional<int> table_mode;
  std::optional<double> table_khz;
  std::optional<double> offset;  // (f - table) / table, signed
};

struct ResonanceReport {
  int m = 0;
  Bvp bvp = Bvp::Two;
  std::vector<Resonance> resonances;  // sorted by frequency
  std::vector<double> skipped_hz;     // singular grid points
};

/// Sign changes of the determinant between neighbouring grid points of the same
/// case, bisected to 0.1 Hz and matched to the bundled table for cfg.m.
ResonanceReport detect_resonances(const SweepConfig& cfg, const std::vector<double>& grid,
                                  const NaturalFrequencyTable& table = bundled_natural_frequencies(),
                                  unsigned threads = 0);

/// Same, on cfg.frequencies().
ResonanceReport detect_resonances(const SweepConfig& cfg, unsigned threads = 0);

void write_resonance_csv(std::ostream& os, const ResonanceReport& report);

struct VerifyOutcome {
  std::string check;
  int k = 0;
  double f_hz = 0.0;
  double value = 0.0;
  double limit = 0.0;
  bool pass() const { return value <= limit; }
};

/// Boundary, finite-difference and (m = 0, BVP2) series checks on up to
/// `samples` off-resonance grid frequencies per k.
std::vector<VerifyOutcome> run_verification(const SweepConfig& cfg, int samples = 12);

}  // namespace cylresp
