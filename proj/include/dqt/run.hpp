// run.hpp — command orchestration: single-point reports, sweeps with a
// content-addressed cache, dispersion tables and the cone probe
#pragma once

#include "dqt/config.hpp"
#include "dqt/hydro.hpp"
#include "dqt/report.hpp"

namespace dqt {

// Full pipeline: diffusivity (selected methods), tau, A on the ring, current
// and microscopic-diffusivity intervals, bound assembly.
TransportReport run_bound_report(const RunConfig& config);

// Diffusivity only (methods per config).
TransportReport run_diffusivity(const RunConfig& config);

// Decoherence time only.
TransportReport run_tau(const RunConfig& config);

struct DispersionTable {
  std::vector<DispersionPoint> points;
  std::string csv() const;
  nlohmann::json json() const;
};
DispersionTable run_dispersion(const RunConfig& config);

struct ConeResult {
  double velocity = 0.0;
  int ring_sites = 0;
  std::string csv() const;
  nlohmann::json json() const;
};
ConeResult run_probe_cone(const RunConfig& config);

struct SweepResult {
  std::vector<TransportReport> rows;
  int computed = 0;  // points solved in this run
  int cached = 0;    // points served from the cache
  std::string csv() const { return table_to_csv(rows); }
  nlohmann::json json() const;
};
SweepResult run_sweep(const RunConfig& config);

}  // namespace dqt
