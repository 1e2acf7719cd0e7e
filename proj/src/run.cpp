// run.cpp — pipelines behind the CLI commands
#include "dqt/run.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "dqt/chainsim.hpp"
#include "dqt/util.hpp"

namespace dqt {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct VelocityChoice {
  double value = 0.0;
  std::string source;
  std::vector<std::string> warnings;
};

// Empirical cone slope on the ring with a pattern-based horizon velocity.
double cone_velocity(const RunConfig& config) {
  double v_ref;
  if (config.v_lr.has_value()) {
    v_ref = *config.v_lr;
  } else if (auto builtin = builtin_lr_velocity(config.model)) {
    v_ref = *builtin;
  } else {
    double coupling = 0.0;
    for (const auto& t : config.model.hamiltonian) {
      coupling += std::abs(t.coefficient) * std::max(1, t.pattern.extent() - 1);
    }
    v_ref = std::max(1.0, 2.0 * coupling);
  }
  const double horizon = ring_horizon(config.model, 1, config.ring_sites, v_ref);
  if (horizon <= 0.0) throw ValidationError("ring too small for the cone probe");
  std::vector<double> times(24);
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = horizon * static_cast<double>(i + 1) / times.size();
  }
  const int distance =
      std::max(1, std::min(config.cone_distance, config.ring_sites / 2 - 1));
  return lr_cone(config.model, distance, times, config.ring_sites, std::nullopt,
                 v_ref);
}

VelocityChoice resolve_lr_velocity(const RunConfig& config) {
  VelocityChoice out;
  if (config.v_lr.has_value()) {
    out.value = *config.v_lr;
    out.source = "config";
    return out;
  }
  if (auto builtin = builtin_lr_velocity(config.model)) {
    out.value = *builtin;
    out.source = "builtin";
    return out;
  }
  out.value = cone_velocity(config);
  out.source = "cone";
  out.warnings.push_back(
      "v_LR taken from the cone probe: a sampling estimate, not a rigorous bound");
  return out;
}

void fill_diffusivity(const Engine& engine, const RunConfig& config,
                      TransportReport& report,
                      std::map<std::string, double>& timings) {
  const bool want_res =
      config.method == Method::Resolvent || config.method == Method::All;
  const bool want_int =
      config.method == Method::Integral || config.method == Method::All;
  const bool want_dir =
      config.method == Method::Direct || config.method == Method::All;

  if (want_res || want_int || want_dir) {
    // The resolvent solve also provides the dressed charge used everywhere.
    Stopwatch sw;
    const HydroSolution sol = engine.diffusivity_resolvent();
    timings["resolvent"] = sw.seconds();
    if (want_res) {
      report.d_by_method["resolvent"] = sol.D;
      report.D = sol.D;
      report.method = "resolvent";
      report.first_order_abs = std::abs(sol.first_order);
    }
  }
  if (want_int) {
    Stopwatch sw;
    const HydroSolution sol =
        engine.diffusivity_time_integral(config.t_max, config.integral_tolerance);
    timings["integral"] = sw.seconds();
    report.d_by_method["integral"] = sol.D;
    if (report.method.empty()) {
      report.D = sol.D;
      report.method = "integral";
      report.first_order_abs = std::abs(sol.first_order);
    }
  }
  if (want_dir) {
    Stopwatch sw;
    const HydroSolution sol = engine.diffusivity_direct(config.direct_k);
    timings["direct"] = sw.seconds();
    report.d_by_method["direct"] = sol.D;
    if (report.method.empty()) {
      report.D = sol.D;
      report.method = "direct";
      report.first_order_abs = std::abs(sol.first_order);
    }
  }
  double spread = 0.0;
  for (const auto& [ma, va] : report.d_by_method) {
    for (const auto& [mb, vb] : report.d_by_method) {
      const double scale = std::max({std::abs(va), std::abs(vb), 1e-300});
      spread = std::max(spread, std::abs(va - vb) / scale);
    }
  }
  report.method_spread = spread;
  report.loss = engine.loss();
}

double resolvent_d_at(const ModelSpec& model, int truncation, int workers) {
  ModelSpec m = model;
  m.truncation = truncation;
  Engine engine(m, workers);
  return engine.diffusivity_resolvent().D;
}

}  // namespace

TransportReport run_diffusivity(const RunConfig& config) {
  TransportReport report;
  report.model = config.model;
  std::map<std::string, double> timings;
  Stopwatch total;
  Engine engine(config.model, config.workers);
  timings["build"] = total.seconds();
  fill_diffusivity(engine, config, report, timings);
  if (config.band) {
    Stopwatch sw;
    double lo = report.D, hi = report.D;
    if (config.model.truncation > 1) {
      const double d = resolvent_d_at(config.model, config.model.truncation - 1, config.workers);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (config.model.truncation < kTruncationCap) {
      const double d = resolvent_d_at(config.model, config.model.truncation + 1, config.workers);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    report.d_band_lo = lo;
    report.d_band_hi = hi;
    timings["band"] = sw.seconds();
  }
  timings["total"] = total.seconds();
  report.timings = timings;
  return report;
}

TransportReport run_tau(const RunConfig& config) {
  TransportReport report;
  report.model = config.model;
  std::map<std::string, double> timings;
  Stopwatch total;
  Engine engine(config.model, config.workers);
  timings["build"] = total.seconds();
  Stopwatch sw;
  const SpectralScan scan = engine.decoherence_time(config.kpoints, config.eig_nev);
  timings["tau"] = sw.seconds();
  report.tau = scan.tau;
  report.tau_argmax_k = scan.argmax_k;
  report.tau_kpoints = config.kpoints;
  report.warnings = scan.warnings;
  report.loss = engine.loss();
  timings["total"] = total.seconds();
  report.timings = timings;
  return report;
}

TransportReport run_bound_report(const RunConfig& config) {
  TransportReport report;
  report.model = config.model;
  std::map<std::string, double> timings;
  Stopwatch total;

  Engine engine(config.model, config.workers);
  timings["build"] = total.seconds();

  fill_diffusivity(engine, config, report, timings);

  {
    Stopwatch sw;
    const SpectralScan scan = engine.decoherence_time(config.kpoints, config.eig_nev);
    timings["tau"] = sw.seconds();
    report.tau = scan.tau;
    report.tau_argmax_k = scan.argmax_k;
    report.tau_kpoints = config.kpoints;
    report.warnings.insert(report.warnings.end(), scan.warnings.begin(),
                           scan.warnings.end());
  }

  const VelocityChoice v_lr = resolve_lr_velocity(config);
  report.v_lr = v_lr.value;
  report.v_lr_source = v_lr.source;
  report.warnings.insert(report.warnings.end(), v_lr.warnings.begin(),
                         v_lr.warnings.end());

  {
    Stopwatch sw;
    const AEstimate a =
        estimate_A(config.model, report.tau, config.ring_sites, config.time_points,
                   std::nullopt, v_lr.value, engine.drude().real());
    timings["A"] = sw.seconds();
    report.A = a.A;
    report.a_ring_sites = a.sites;
    report.a_time_points = a.time_points;
    report.a_t_valid = a.t_valid;
  }

  {
    Stopwatch sw;
    report.d0 = engine.microscopic_diffusivity();
    report.v_c = current_operator(config.model).v_c;
    timings["norms"] = sw.seconds();
  }

  if (config.band) {
    Stopwatch sw;
    double lo = report.D, hi = report.D;
    if (config.model.truncation > 1) {
      const double d = resolvent_d_at(config.model, config.model.truncation - 1, config.workers);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (config.model.truncation < kTruncationCap) {
      const double d = resolvent_d_at(config.model, config.model.truncation + 1, config.workers);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    report.d_band_lo = lo;
    report.d_band_hi = hi;
    timings["band"] = sw.seconds();
  }

  const TransportReport bound =
      assemble_bound(report.D, report.d0, report.v_c, report.tau, report.A,
                     config.a_prime, report.v_lr, interaction_range(config.model));
  report.xi = bound.xi;
  report.a_prime = bound.a_prime;
  report.alpha = bound.alpha;
  report.beta = bound.beta;
  report.bound_rhs = bound.bound_rhs;
  report.satisfied = bound.satisfied;

  timings["total"] = total.seconds();
  report.timings = timings;
  return report;
}

std::string DispersionTable::csv() const {
  std::string out = "k,omega_re,omega_im,overlap,D_estimate\n";
  for (const auto& p : points) {
    const double d_est = p.k != 0.0 ? -p.omega.imag() / (p.k * p.k)
                                    : std::numeric_limits<double>::quiet_NaN();
    out += format_double(p.k) + "," + format_double(p.omega.real()) + "," +
           format_double(p.omega.imag()) + "," + format_double(p.overlap) + "," +
           (std::isnan(d_est) ? std::string("") : format_double(d_est)) + "\n";
  }
  return out;
}

nlohmann::json DispersionTable::json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : points) {
    rows.push_back({{"k", p.k},
                    {"omega_re", p.omega.real()},
                    {"omega_im", p.omega.imag()},
                    {"overlap", p.overlap}});
  }
  return {{"version", kVersion}, {"points", rows}};
}

DispersionTable run_dispersion(const RunConfig& config) {
  if (config.k_count < 1) throw ConfigError("run.k_count must be at least 1");
  Engine engine(config.model, config.workers);
  std::vector<double> ks(config.k_count);
  for (int i = 0; i < config.k_count; ++i) {
    ks[i] = config.k_max * static_cast<double>(i + 1) / config.k_count;
  }
  DispersionTable out;
  out.points = engine.dispersion_direct(ks);
  return out;
}

std::string ConeResult::csv() const {
  return "velocity,ring_sites\n" + format_double(velocity) + "," +
         std::to_string(ring_sites) + "\n";
}

nlohmann::json ConeResult::json() const {
  return {{"version", kVersion}, {"velocity", velocity}, {"ring_sites", ring_sites}};
}

ConeResult run_probe_cone(const RunConfig& config) {
  ConeResult out;
  out.ring_sites = config.ring_sites;
  out.velocity = cone_velocity(config);
  return out;
}

namespace {

std::filesystem::path cache_file(const std::string& dir, const std::string& key) {
  return std::filesystem::path(dir) / (hex64(fnv1a(key)) + ".json");
}

std::optional<TransportReport> cache_load(const std::string& dir, const std::string& key) {
  if (dir.empty()) return std::nullopt;
  const auto path = cache_file(dir, key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("key", "") != key) return std::nullopt;
    if (j.value("version", "") != kVersion) return std::nullopt;
    return report_from_json(j.at("report"));
  } catch (...) {
    return std::nullopt;
  }
}

void cache_store(const std::string& dir, const std::string& key,
                 const TransportReport& report) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = cache_file(dir, key);
  const auto tmp = path.string() + "." + std::to_string(::getpid()) + ".tmp";
  {
    std::ofstream out(tmp);
    nlohmann::json j;
    j["key"] = key;
    j["version"] = kVersion;
    j["report"] = report_to_json(report);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

nlohmann::json SweepResult::json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) rs.push_back(report_to_json(r));
  return {{"version", kVersion},
          {"rows", rs},
          {"stats", {{"computed", computed}, {"cached", cached}}}};
}

SweepResult run_sweep(const RunConfig& config) {
  if (!config.sweep.has_value()) throw ConfigError("sweep configuration missing");
  const SweepSpec& sweep = *config.sweep;

  std::vector<double> values(sweep.points);
  for (int i = 0; i < sweep.points; ++i) {
    if (sweep.points == 1) {
      values[i] = sweep.from;
    } else if (sweep.log_scale) {
      values[i] = sweep.from *
                  std::pow(sweep.to / sweep.from,
                           static_cast<double>(i) / (sweep.points - 1));
    } else {
      values[i] = sweep.from +
                  (sweep.to - sweep.from) * static_cast<double>(i) / (sweep.points - 1);
    }
  }

  std::vector<RunConfig> point_configs(values.size(), config);
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig& pc = point_configs[i];
    pc.sweep.reset();
    if (sweep.param == "c") {
      pc.model.c = values[i];
    } else {  // delta: rebuild builtin models so the term coefficients follow
      if (pc.model.name == "xxz_dephasing") {
        pc.model = xxz_dephasing(values[i], pc.model.c, pc.model.truncation);
      } else {
        throw ConfigError("sweep.param 'delta' needs the xxz_dephasing model");
      }
    }
  }

  SweepResult result;
  result.rows.resize(values.size());
  std::vector<int> from_cache(values.size(), 0);

  const int outer = std::min<int>(config.workers, static_cast<int>(values.size()));
  const int inner = std::max(1, config.workers / std::max(1, outer));

  parallel_for(values.size(), outer, [&](std::size_t i) {
    RunConfig pc = point_configs[i];
    pc.workers = inner;
    const std::string key = canonical_key(pc);
    if (auto hit = cache_load(config.cache_dir, key)) {
      result.rows[i] = std::move(*hit);
      result.rows[i].param = values[i];
      from_cache[i] = 1;
      return;
    }
    TransportReport report;
    try {
      report = run_bound_report(pc);
    } catch (const Error& e) {
      report = TransportReport{};
      report.model = pc.model;
      report.error = e.what();
    }
    report.param = values[i];
    cache_store(config.cache_dir, key, report);
    result.rows[i] = std::move(report);
  });

  for (int c : from_cache) {
    if (c) {
      ++result.cached;
    } else {
      ++result.computed;
    }
  }
  return result;
}

}  // namespace dqt
