// config.cpp — key-value configuration parsing
#include "dqt/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "dqt/report.hpp"
#include "dqt/util.hpp"

namespace dqt {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model.name",        "model.delta",
      "model.c",           "model.truncation",
      "model.hamiltonian", "model.jumps",
      "model.charge",      "run.method",
      "run.kpoints",       "run.direct_k",
      "run.ring_sites",    "run.workers",
      "run.a_prime",       "run.v_lr",
      "run.cache",         "run.band",
      "run.time_points",   "run.t_max",
      "run.integral_tolerance", "run.eig_nev",
      "run.k_max",         "run.k_count",
      "run.cone_distance", "sweep.param",
      "sweep.from",        "sweep.to",
      "sweep.points",      "sweep.scale",
  };
  return keys;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a finite number, got '" + value + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
  return i;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + value + "'");
}

// "1.0 XX; 1.0 YY; 0.5 ZZ" -> terms
std::vector<ModelTerm> parse_terms(const std::string& key, const std::string& value) {
  std::vector<ModelTerm> out;
  std::istringstream is(value);
  std::string item;
  while (std::getline(is, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::istringstream ts(item);
    std::string coef_text, word;
    if (!(ts >> coef_text >> word)) {
      throw ConfigError("key '" + key + "': term '" + item +
                        "' is not 'coefficient PATTERN'");
    }
    std::string extra;
    if (ts >> extra) {
      throw ConfigError("key '" + key + "': trailing content in term '" + item + "'");
    }
    ModelTerm term;
    term.coefficient = to_double(key, coef_text);
    try {
      term.pattern = pattern_from_word(word);
    } catch (const ValidationError& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
    if (term.pattern.is_identity()) {
      throw ConfigError("key '" + key + "': pattern '" + word + "' is the identity");
    }
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Resolvent: return "resolvent";
    case Method::Integral: return "integral";
    case Method::Direct: return "direct";
    case Method::All: return "all";
  }
  return "resolvent";
}

Method method_from_name(const std::string& name) {
  if (name == "resolvent") return Method::Resolvent;
  if (name == "integral") return Method::Integral;
  if (name == "direct") return Method::Direct;
  if (name == "all") return Method::All;
  throw ConfigError("unknown method '" + name +
                    "' (expected resolvent|integral|direct|all)");
}

ConfigSource ConfigSource::parse(const std::string& text) {
  ConfigSource out;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t comment = line.find_first_of("#");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "run" && section != "sweep") {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.find('.') == std::string::npos && !section.empty()) {
      key = section + "." + key;
    }
    if (!known_keys().count(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out.values_[key] = value;
    out.lines_[key] = lineno;
  }
  return out;
}

void ConfigSource::set(const std::string& dotted_key, const std::string& value) {
  if (!known_keys().count(dotted_key)) {
    throw ConfigError("unknown key '" + dotted_key + "'");
  }
  values_[dotted_key] = unquote(trim(value));
  lines_[dotted_key] = 0;
}

RunConfig ConfigSource::build() const {
  RunConfig cfg;
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  };

  const std::string name = get("model.name").value_or("");
  if (name.empty() && !values_.count("model.hamiltonian") && !values_.count("model.jumps")) {
    throw ConfigError("missing key 'model.name' (or a custom model definition)");
  }

  const int truncation =
      get("model.truncation") ? to_int("model.truncation", *get("model.truncation")) : 7;

  if (name == "xxz_dephasing" || name == "xxz") {
    if (!get("model.c")) throw ConfigError("missing key 'model.c'");
    const double delta = get("model.delta") ? to_double("model.delta", *get("model.delta")) : 1.0;
    cfg.model = xxz_dephasing(delta, to_double("model.c", *get("model.c")), truncation);
  } else if (name == "dephasing") {
    if (!get("model.c")) throw ConfigError("missing key 'model.c'");
    cfg.model = dephasing_only(to_double("model.c", *get("model.c")), truncation);
  } else if (name == "custom" || name.empty()) {
    if (!get("model.c")) throw ConfigError("missing key 'model.c'");
    cfg.model.name = "custom";
    cfg.model.c = to_double("model.c", *get("model.c"));
    cfg.model.truncation = truncation;
    if (get("model.hamiltonian")) {
      cfg.model.hamiltonian = parse_terms("model.hamiltonian", *get("model.hamiltonian"));
    }
    if (get("model.jumps")) {
      cfg.model.jumps = parse_terms("model.jumps", *get("model.jumps"));
    }
    if (get("model.charge")) {
      cfg.model.charge = pattern_from_word(*get("model.charge"));
    }
    if (get("model.delta")) {
      cfg.model.delta = to_double("model.delta", *get("model.delta"));
    }
  } else {
    throw ConfigError("unknown model name '" + name +
                      "' (expected xxz_dephasing|dephasing|custom)");
  }
  cfg.model.validate();

  if (get("run.method")) cfg.method = method_from_name(*get("run.method"));
  if (get("run.kpoints")) cfg.kpoints = to_int("run.kpoints", *get("run.kpoints"));
  if (get("run.direct_k")) cfg.direct_k = to_double("run.direct_k", *get("run.direct_k"));
  if (get("run.ring_sites")) cfg.ring_sites = to_int("run.ring_sites", *get("run.ring_sites"));
  if (get("run.workers")) cfg.workers = to_int("run.workers", *get("run.workers"));
  if (get("run.a_prime")) cfg.a_prime = to_double("run.a_prime", *get("run.a_prime"));
  if (get("run.v_lr")) {
    const std::string v = *get("run.v_lr");
    if (v != "auto") cfg.v_lr = to_double("run.v_lr", v);
  }
  if (get("run.cache")) cfg.cache_dir = *get("run.cache");
  if (get("run.band")) cfg.band = to_bool("run.band", *get("run.band"));
  if (get("run.time_points")) cfg.time_points = to_int("run.time_points", *get("run.time_points"));
  if (get("run.t_max")) cfg.t_max = to_double("run.t_max", *get("run.t_max"));
  if (get("run.integral_tolerance")) {
    cfg.integral_tolerance = to_double("run.integral_tolerance", *get("run.integral_tolerance"));
  }
  if (get("run.eig_nev")) cfg.eig_nev = to_int("run.eig_nev", *get("run.eig_nev"));
  if (get("run.k_max")) cfg.k_max = to_double("run.k_max", *get("run.k_max"));
  if (get("run.k_count")) cfg.k_count = to_int("run.k_count", *get("run.k_count"));
  if (get("run.cone_distance")) {
    cfg.cone_distance = to_int("run.cone_distance", *get("run.cone_distance"));
  }

  if (cfg.kpoints < 1) throw ConfigError("run.kpoints must be at least 1");
  if (cfg.workers < 1) throw ConfigError("run.workers must be at least 1");
  if (cfg.ring_sites < 2) throw ConfigError("run.ring_sites must be at least 2");
  if (!(cfg.direct_k > 0.0)) throw ConfigError("run.direct_k must be positive");
  if (cfg.time_points < 2) throw ConfigError("run.time_points must be at least 2");
  if (!(cfg.a_prime >= 1.0)) throw ConfigError("run.a_prime must be at least 1");

  const bool has_sweep = values_.count("sweep.param") || values_.count("sweep.from") ||
                         values_.count("sweep.to") || values_.count("sweep.points");
  if (has_sweep) {
    SweepSpec sweep;
    if (!get("sweep.param")) throw ConfigError("missing key 'sweep.param'");
    sweep.param = *get("sweep.param");
    if (sweep.param != "c" && sweep.param != "delta") {
      throw ConfigError("sweep.param must be 'c' or 'delta'");
    }
    if (!get("sweep.from")) throw ConfigError("missing key 'sweep.from'");
    sweep.from = to_double("sweep.from", *get("sweep.from"));
    sweep.to = get("sweep.to") ? to_double("sweep.to", *get("sweep.to")) : sweep.from;
    sweep.points = get("sweep.points") ? to_int("sweep.points", *get("sweep.points")) : 1;
    if (sweep.points < 1) throw ConfigError("sweep.points must be at least 1");
    const std::string scale = get("sweep.scale").value_or("linear");
    if (scale == "log") {
      sweep.log_scale = true;
      if (!(sweep.from > 0.0) || !(sweep.to > 0.0)) {
        throw ConfigError("log sweeps need positive endpoints");
      }
    } else if (scale != "linear") {
      throw ConfigError("sweep.scale must be 'linear' or 'log'");
    }
    cfg.sweep = sweep;
  }
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  return ConfigSource::parse(text).build();
}

std::string canonical_key(const RunConfig& cfg) {
  std::ostringstream os;
  os << "version=" << kVersion << ";model=" << model_to_json(cfg.model).dump()
     << ";method=" << method_name(cfg.method) << ";kpoints=" << cfg.kpoints
     << ";direct_k=" << format_double(cfg.direct_k)
     << ";ring_sites=" << cfg.ring_sites
     << ";a_prime=" << format_double(cfg.a_prime) << ";v_lr="
     << (cfg.v_lr ? format_double(*cfg.v_lr) : std::string("auto"))
     << ";band=" << (cfg.band ? "1" : "0")
     << ";time_points=" << cfg.time_points
     << ";t_max=" << format_double(cfg.t_max)
     << ";integral_tolerance=" << format_double(cfg.integral_tolerance)
     << ";eig_nev=" << cfg.eig_nev;
  return os.str();
}

}  // namespace dqt
