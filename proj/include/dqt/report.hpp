// report.hpp — transport report assembly and serialization
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dqt/model.hpp"

#include "json.hpp"

namespace dqt {

inline constexpr const char* kVersion = "0.1.0";

struct TransportReport {
  ModelSpec model;

  double param = std::numeric_limits<double>::quiet_NaN();  // sweep axis value

  double D = std::numeric_limits<double>::quiet_NaN();
  std::string method;  // method behind D
  std::map<std::string, double> d_by_method;
  double method_spread = 0.0;  // max relative difference across methods
  double d_band_lo = std::numeric_limits<double>::quiet_NaN();
  double d_band_hi = std::numeric_limits<double>::quiet_NaN();

  double tau = std::numeric_limits<double>::quiet_NaN();
  double tau_argmax_k = 0.0;
  int tau_kpoints = 0;

  Interval d0{0.0, 0.0};
  Interval v_c{0.0, 0.0};

  double A = std::numeric_limits<double>::quiet_NaN();
  int a_ring_sites = 0;
  int a_time_points = 0;
  double a_t_valid = 0.0;

  double a_prime = 1.0;
  double v_lr = std::numeric_limits<double>::quiet_NaN();
  std::string v_lr_source;  // config | builtin | cone

  int xi = 0;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double bound_rhs = std::numeric_limits<double>::quiet_NaN();
  bool satisfied = false;

  double first_order_abs = 0.0;
  double loss = 0.0;

  std::map<std::string, double> timings;
  std::vector<std::string> warnings;
  std::string error;
};

// Fills the bound fields (alpha = 3A, beta = 3A(2 + ln A'), rhs from the
// conservative interval ends) into a fresh report. Throws InvalidBoundInput
// for non-positive A, tau, v_LR or A' < 1.
TransportReport assemble_bound(double D, Interval d0, Interval v_c, double tau,
                               double A, double a_prime, double v_lr, int xi);

// Pattern word at offsets 0..extent-1, e.g. "XIZ".
std::string pattern_word(const PauliString& pattern);
PauliString pattern_from_word(const std::string& word);

nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const TransportReport& report);
TransportReport report_from_json(const nlohmann::json& j);

// CSV schema: param, D, D_lo, D_hi, tau, D0_hi, vC_hi, A, alpha, beta,
// bound_rhs, satisfied, loss, error. Floats carry 17 significant digits.
std::string csv_header();
std::string csv_row(const TransportReport& report);
std::string table_to_csv(const std::vector<TransportReport>& rows);
std::vector<TransportReport> table_from_csv(const std::string& text);

}  // namespace dqt
