// config.hpp — run configuration: the key-value file format and defaults
#pragma once

#include <map>
#include <optional>
#include <string>

#include "dqt/model.hpp"

namespace dqt {

enum class Method { Resolvent, Integral, Direct, All };

std::string method_name(Method m);
Method method_from_name(const std::string& name);  // ConfigError

struct SweepSpec {
  std::string param;  // "c" or "delta"
  double from = 0.0;
  double to = 0.0;
  int points = 1;
  bool log_scale = false;
};

struct RunConfig {
  ModelSpec model;
  Method method = Method::Resolvent;
  int kpoints = 64;       // tau scan grid over (0, pi]
  double direct_k = 0.1;  // wavevector for the direct-dispersion fit
  int ring_sites = 8;
  int workers = 1;
  double a_prime = 1.0;
  std::optional<double> v_lr;  // fixed velocity; otherwise builtin, then cone
  std::string cache_dir;       // empty disables caching
  bool band = false;           // diffusivity band from truncations n -/+ 1
  int time_points = 200;
  double t_max = 200.0;
  double integral_tolerance = 1e-9;
  int eig_nev = 32;
  double k_max = 0.2;  // dispersion command grid
  int k_count = 8;
  int cone_distance = 4;
  std::optional<SweepSpec> sweep;
};

// Flat `key = value` text with dotted keys, optionally grouped by [model],
// [run] and [sweep] section headers; # and ; start comments.
class ConfigSource {
 public:
  static ConfigSource parse(const std::string& text);  // ConfigError

  // Same key names as the file format; unknown keys are rejected.
  void set(const std::string& dotted_key, const std::string& value);
  RunConfig build() const;  // ConfigError / ValidationError

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

RunConfig parse_config(const std::string& text);

// Stable textual identity of everything that affects computed numbers; the
// cache key hashes this.
std::string canonical_key(const RunConfig& config);

}  // namespace dqt
