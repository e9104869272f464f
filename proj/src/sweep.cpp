#include "cylresp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "cylresp/errors.hpp"
#include "cylresp/fields.hpp"
#include "cylresp/system.hpp"
#include "cylresp/verification.hpp"

namespace cylresp {

namespace {

// Runs fn(i) for i in [0, n) on a small pool; results are written by index so
// the output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double det_at(const SweepConfig& cfg, int k, double f_hz, CaseId* case_out = nullptr) {
  const auto s = system_determinant(cfg.material, cfg.excitation(k, f_hz));
  if (case_out) *case_out = s.case_id;
  return s.determinant;
}

}  // namespace

SweepRow sweep_point(const SweepConfig& cfg, int k_value, double f_hz) {
  const auto& mg = cfg.material;
  const auto ex = cfg.excitation(k_value, f_hz);
  SweepRow row;
  row.f_hz = f_hz;
  const auto cls = classify(mg, ex.m, ex.k, ex.omega);
  row.case_id = cls.case_id;
  if (is_singular(cls.case_id)) {
    row.status = "singular";
    return row;
  }
  ModalSolution<double> sol;
  try {
    sol = solve(mg, ex);
  } catch (const ResonanceError& e) {
    row.det = e.determinant();
    row.status = "resonance";
    return row;
  }
  row.det = sol.determinant;
  const auto fs = stationary_field(sol, cls, ex, mg, Point<double>{cfg.point_r, cfg.point_theta, cfg.point_z});
  row.u_r = fs.u(0);
  row.u_theta = fs.u(1);
  row.u_z = fs.u(2);
  row.boundary_residual = boundary_residual(sol, cls, ex, mg);
  row.has_fields = true;
  if (sol.near_resonance) row.status = "near_resonance";
  else if (cls.near_boundary) row.status = "near_boundary";
  else row.status = "ok";
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads) {
  if (cfg.k.size() != 1) throw ConfigError("k", "a sweep needs exactly one k");
  const auto grid = cfg.frequencies();
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { rows[i] = sweep_point(cfg, cfg.k.front(), grid[i]); });
  return rows;
}

std::string format_row(const SweepRow& row) {
  std::string s = num(row.f_hz) + "," + to_string(row.case_id) + ",";
  if (row.has_fields) s += num(row.u_r) + "," + num(row.u_theta) + "," + num(row.u_z) + ",";
  else s += ",,,";
  s += row.status == "singular" ? "" : num(row.det);
  s += ",";
  if (row.has_fields) s += num(row.boundary_residual);
  s += "," + row.status;
  return s;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) os << format_row(r) << '\n';
}

ResonanceReport detect_resonances(const SweepConfig& cfg, const std::vector<double>& grid,
                                  const NaturalFrequencyTable& table, unsigned threads) {
  ResonanceReport report;
  report.m = cfg.m;
  report.bvp = cfg.bvp;
  for (int k : cfg.k) {
    std::vector<double> det(grid.size());
    std::vector<CaseId> cases(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) { det[i] = det_at(cfg, k, grid[i], &cases[i]); });

    for (std::size_t i = 0; i < grid.size(); ++i)
      if (is_singular(cases[i])) report.skipped_hz.push_back(grid[i]);

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (cases[i] != cases[i + 1] || is_singular(cases[i])) continue;
      const double da = det[i], db = det[i + 1];
      if (da == 0.0 || (da < 0) == (db < 0)) continue;
      double lo = grid[i], hi = grid[i + 1], dlo = da;
      const double endpoint_min = std::min(std::abs(da), std::abs(db));
      double refined = 0.5 * (lo + hi), dref = 0.0;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double dm = det_at(cfg, k, mid);
        refined = mid;
        dref = dm;
        if (dm == 0.0) break;
        if (hi - lo <= 0.1 && std::abs(dm) < endpoint_min) break;
        if ((dm < 0) == (dlo < 0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
      Resonance r;
      r.k = k;
      r.f_hz = refined;
      r.bracket_lo_hz = grid[i];
      r.bracket_hi_hz = grid[i + 1];
      r.det = dref;
      r.case_id = cases[i];
      if (auto near = table.nearest(cfg.m, refined / 1000.0)) {
        r.table_mode = near->first;
        r.table_khz = near->second;
        r.offset = (refined / 1000.0 - near->second) / near->second;
      }
      report.resonances.push_back(r);
    }
  }
  std::sort(report.skipped_hz.begin(), report.skipped_hz.end());
  std::stable_sort(report.resonances.begin(), report.resonances.end(),
                   [](const Resonance& a, const Resonance& b) { return a.f_hz < b.f_hz; });
  return report;
}

ResonanceReport detect_resonances(const SweepConfig& cfg, unsigned threads) {
  return detect_resonances(cfg, cfg.frequencies(), bundled_natural_frequencies(), threads);
}

void write_resonance_csv(std::ostream& os, const ResonanceReport& report) {
  os << "k,f_hz,bracket_lo_hz,bracket_hi_hz,case,det,table_mode,table_khz,offset\n";
  for (const auto& r : report.resonances) {
    os << r.k << ',' << num(r.f_hz) << ',' << num(r.bracket_lo_hz) << ',' << num(r.bracket_hi_hz) << ','
       << to_string(r.case_id) << ',' << num(r.det) << ',';
    if (r.table_mode) os << *r.table_mode << ',' << num(*r.table_khz) << ',' << num(*r.offset);
    else os << ",,";
    os << '\n';
  }
}

std::vector<VerifyOutcome> run_verification(const SweepConfig& cfg, int samples) {
  using LD = long double;
  const auto grid = cfg.frequencies();
  const auto mg = cfg.material;
  const auto mgl = mg.cast<LD>();
  std::vector<VerifyOutcome> out;
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / static_cast<std::size_t>(std::max(samples, 1)));
  // interior probe points as fractions of (R, 2π, L)
  const double probes[3][3] = {{0.31, 0.07, 0.29}, {0.58, 0.41, 0.53}, {0.83, 0.77, 0.81}};
  for (int k : cfg.k) {
    for (std::size_t i = stride / 2; i < grid.size(); i += stride) {
      const double f = grid[i];
      const auto ex = cfg.excitation(k, f);
      const auto cls = classify(mg, ex.m, ex.k, ex.omega);
      if (is_singular(cls.case_id) || cls.near_boundary) continue;
      ModalSolution<double> sol;
      try {
        sol = solve(mg, ex);
      } catch (const ResonanceError&) {
        continue;
      }
      if (sol.near_resonance) continue;
      out.push_back({"boundary", k, f, boundary_residual(sol, cls, ex, mg), 1e-10});

      // quasi-static end of case 1: the ρω²|u| normalization loses meaning
      const auto bounds = case_boundaries_hz(mg, k);
      if (k == 0 || f >= 0.2 * bounds.first) {
        const auto soll = solve(mgl, ex);
        const auto clsl = classify(mgl, ex.m, ex.k, LD(ex.omega));
        const LD h = LD(1e-4) * mgl.R;
        LD worst = 0;
        for (const auto& pr : probes) {
          const Point<LD> p{LD(pr[0]) * mgl.R, LD(pr[1]) * 2 * pi<LD>(), LD(pr[2]) * mgl.L};
          worst = std::max(worst, pde_residual(soll, clsl, ex, mgl, p, h).normalized);
        }
        out.push_back({"pde", k, f, static_cast<double>(worst), 1e-5});
      }
      if (cfg.m == 0 && cfg.bvp == Bvp::Two && k > 0)
        out.push_back({"series", k, f, enbks_compare(mg, ex).worst(), 1e-10});
    }
  }
  return out;
}

}  // namespace cylresp
