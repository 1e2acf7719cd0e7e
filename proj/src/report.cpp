// report.cpp — bound arithmetic and report serialization
#include "dqt/report.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "dqt/util.hpp"

namespace dqt {

namespace {

double parse_csv_double(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(s.c_str(), nullptr);
}

std::string csv_double(double v) {
  if (std::isnan(v)) return "";
  return format_double(v);
}

}  // namespace

TransportReport assemble_bound(double D, Interval d0, Interval v_c, double tau,
                               double A, double a_prime, double v_lr, int xi) {
  if (!std::isfinite(D) || !std::isfinite(tau) || !std::isfinite(A) ||
      !std::isfinite(v_lr) || !std::isfinite(a_prime) ||
      !std::isfinite(d0.upper) || !std::isfinite(v_c.upper)) {
    throw InvalidBoundInput("bound inputs must be finite");
  }
  if (!(A > 0.0)) throw InvalidBoundInput("A must be positive");
  if (!(tau > 0.0)) throw InvalidBoundInput("tau must be positive");
  if (!(v_lr > 0.0)) throw InvalidBoundInput("v_LR must be positive");
  if (!(a_prime >= 1.0)) throw InvalidBoundInput("A' must be at least 1");
  if (xi < 0) throw InvalidBoundInput("interaction range must be nonnegative");

  TransportReport r;
  r.D = D;
  r.d0 = d0;
  r.v_c = v_c;
  r.tau = tau;
  r.A = A;
  r.a_prime = a_prime;
  r.v_lr = v_lr;
  r.xi = xi;
  r.alpha = 3.0 * A;
  r.beta = 3.0 * A * (2.0 + std::log(a_prime));
  r.bound_rhs = d0.upper + (r.alpha * v_lr * tau + r.beta * xi) * v_c.upper;
  r.satisfied = D <= r.bound_rhs;
  return r;
}

std::string pattern_word(const PauliString& pattern) {
  if (pattern.is_identity()) return "";
  std::string out;
  for (int j = 0; j < pattern.extent(); ++j) {
    out += letter_char(pattern.at(pattern.min_site() + j));
  }
  return out;
}

PauliString pattern_from_word(const std::string& word) {
  return PauliString::from_word(0, word);
}

nlohmann::json model_to_json(const ModelSpec& model) {
  nlohmann::json j;
  j["name"] = model.name;
  if (model.delta.has_value()) j["delta"] = *model.delta;
  j["c"] = model.c;
  j["truncation"] = model.truncation;
  j["charge"] = pattern_word(model.charge);
  nlohmann::json ham = nlohmann::json::array();
  for (const auto& t : model.hamiltonian) {
    ham.push_back({{"coefficient", t.coefficient}, {"pattern", pattern_word(t.pattern)}});
  }
  j["hamiltonian"] = ham;
  nlohmann::json jumps = nlohmann::json::array();
  for (const auto& t : model.jumps) {
    jumps.push_back({{"coefficient", t.coefficient}, {"pattern", pattern_word(t.pattern)}});
  }
  j["jumps"] = jumps;
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  ModelSpec m;
  m.name = j.value("name", "custom");
  if (j.contains("delta")) m.delta = j["delta"].get<double>();
  m.c = j.value("c", 0.0);
  m.truncation = j.value("truncation", 7);
  m.charge = pattern_from_word(j.value("charge", "Z"));
  m.hamiltonian.clear();
  for (const auto& t : j.value("hamiltonian", nlohmann::json::array())) {
    m.hamiltonian.push_back(
        {t["coefficient"].get<double>(), pattern_from_word(t["pattern"].get<std::string>())});
  }
  m.jumps.clear();
  for (const auto& t : j.value("jumps", nlohmann::json::array())) {
    m.jumps.push_back(
        {t["coefficient"].get<double>(), pattern_from_word(t["pattern"].get<std::string>())});
  }
  return m;
}

namespace {

void put_optional(nlohmann::json& j, const char* key, double v) {
  if (!std::isnan(v)) j[key] = v;
}

double get_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j[key].get<double>();
}

}  // namespace

nlohmann::json report_to_json(const TransportReport& r) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["model"] = model_to_json(r.model);
  put_optional(j, "param", r.param);
  put_optional(j, "D", r.D);
  if (!r.method.empty()) j["method"] = r.method;
  if (!r.d_by_method.empty()) j["D_by_method"] = r.d_by_method;
  j["method_spread"] = r.method_spread;
  put_optional(j, "D_lo", r.d_band_lo);
  put_optional(j, "D_hi", r.d_band_hi);
  put_optional(j, "tau", r.tau);
  j["tau_argmax_k"] = r.tau_argmax_k;
  j["tau_kpoints"] = r.tau_kpoints;
  j["D0"] = {{"lower", r.d0.lower}, {"upper", r.d0.upper}};
  j["v_C"] = {{"lower", r.v_c.lower}, {"upper", r.v_c.upper}};
  put_optional(j, "A", r.A);
  j["A_ring_sites"] = r.a_ring_sites;
  j["A_time_points"] = r.a_time_points;
  j["A_t_valid"] = r.a_t_valid;
  j["A_prime"] = r.a_prime;
  put_optional(j, "v_LR", r.v_lr);
  if (!r.v_lr_source.empty()) j["v_LR_source"] = r.v_lr_source;
  j["xi"] = r.xi;
  put_optional(j, "alpha", r.alpha);
  put_optional(j, "beta", r.beta);
  put_optional(j, "bound_rhs", r.bound_rhs);
  j["satisfied"] = r.satisfied;
  j["first_order_abs"] = r.first_order_abs;
  j["loss"] = r.loss;
  if (!r.timings.empty()) j["timings"] = r.timings;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

TransportReport report_from_json(const nlohmann::json& j) {
  TransportReport r;
  if (j.contains("model")) r.model = model_from_json(j["model"]);
  r.param = get_optional(j, "param");
  r.D = get_optional(j, "D");
  r.method = j.value("method", "");
  if (j.contains("D_by_method")) {
    r.d_by_method = j["D_by_method"].get<std::map<std::string, double>>();
  }
  r.method_spread = j.value("method_spread", 0.0);
  r.d_band_lo = get_optional(j, "D_lo");
  r.d_band_hi = get_optional(j, "D_hi");
  r.tau = get_optional(j, "tau");
  r.tau_argmax_k = j.value("tau_argmax_k", 0.0);
  r.tau_kpoints = j.value("tau_kpoints", 0);
  if (j.contains("D0")) r.d0 = {j["D0"]["lower"].get<double>(), j["D0"]["upper"].get<double>()};
  if (j.contains("v_C")) r.v_c = {j["v_C"]["lower"].get<double>(), j["v_C"]["upper"].get<double>()};
  r.A = get_optional(j, "A");
  r.a_ring_sites = j.value("A_ring_sites", 0);
  r.a_time_points = j.value("A_time_points", 0);
  r.a_t_valid = j.value("A_t_valid", 0.0);
  r.a_prime = j.value("A_prime", 1.0);
  r.v_lr = get_optional(j, "v_LR");
  r.v_lr_source = j.value("v_LR_source", "");
  r.xi = j.value("xi", 0);
  r.alpha = get_optional(j, "alpha");
  r.beta = get_optional(j, "beta");
  r.bound_rhs = get_optional(j, "bound_rhs");
  r.satisfied = j.value("satisfied", false);
  r.first_order_abs = j.value("first_order_abs", 0.0);
  r.loss = j.value("loss", 0.0);
  if (j.contains("timings")) r.timings = j["timings"].get<std::map<std::string, double>>();
  if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
  r.error = j.value("error", "");
  return r;
}

std::string csv_header() {
  return "param,D,D_lo,D_hi,tau,D0_hi,vC_hi,A,alpha,beta,bound_rhs,satisfied,loss,error";
}

std::string csv_row(const TransportReport& r) {
  std::string error = r.error;
  for (char& ch : error) {
    if (ch == ',' || ch == '\n') ch = ';';
  }
  std::ostringstream os;
  os << csv_double(r.param) << ',' << csv_double(r.D) << ','
     << csv_double(r.d_band_lo) << ',' << csv_double(r.d_band_hi) << ','
     << csv_double(r.tau) << ',' << csv_double(r.d0.upper) << ','
     << csv_double(r.v_c.upper) << ',' << csv_double(r.A) << ','
     << csv_double(r.alpha) << ',' << csv_double(r.beta) << ','
     << csv_double(r.bound_rhs) << ',' << (r.satisfied ? "true" : "false")
     << ',' << csv_double(r.loss) << ',' << error;
  return os.str();
}

std::string table_to_csv(const std::vector<TransportReport>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

std::vector<TransportReport> table_from_csv(const std::string& text) {
  std::vector<TransportReport> rows;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != csv_header()) {
        throw ValidationError("unexpected CSV header: " + line);
      }
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    while (fields.size() < 14) fields.push_back("");
    TransportReport r;
    r.param = parse_csv_double(fields[0]);
    r.D = parse_csv_double(fields[1]);
    r.d_band_lo = parse_csv_double(fields[2]);
    r.d_band_hi = parse_csv_double(fields[3]);
    r.tau = parse_csv_double(fields[4]);
    r.d0.upper = parse_csv_double(fields[5]);
    r.v_c.upper = parse_csv_double(fields[6]);
    r.A = parse_csv_double(fields[7]);
    r.alpha = parse_csv_double(fields[8]);
    r.beta = parse_csv_double(fields[9]);
    r.bound_rhs = parse_csv_double(fields[10]);
    r.satisfied = fields[11] == "true";
    r.loss = parse_csv_double(fields[12]);
    r.error = fields[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace dqt
