// capi.cpp — extern "C" surface over the library
#include "dqt/dqt_c.h"

#include <memory>
#include <string>

#include "dqt/run.hpp"

struct dqt_config {
  dqt::ConfigSource source;
};

struct dqt_result {
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

dqt_status fail(dqt_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

dqt_status classify(const std::exception& e) {
  if (dynamic_cast<const dqt::BallisticTransport*>(&e)) {
    return DQT_ERR_BALLISTIC;
  }
  if (dynamic_cast<const dqt::SolverDivergence*>(&e) ||
      dynamic_cast<const dqt::NonDecayingIntegrand*>(&e) ||
      dynamic_cast<const dqt::DegenerateKernel*>(&e) ||
      dynamic_cast<const dqt::GapClosure*>(&e) ||
      dynamic_cast<const dqt::ModeTrackingLost*>(&e)) {
    return DQT_ERR_SOLVER;
  }
  if (dynamic_cast<const dqt::ConfigError*>(&e) ||
      dynamic_cast<const dqt::ValidationError*>(&e) ||
      dynamic_cast<const dqt::InvalidBoundInput*>(&e)) {
    return DQT_ERR_CONFIG;
  }
  return DQT_ERROR;
}

}  // namespace

extern "C" {

const char* dqt_version(void) { return dqt::kVersion; }

const char* dqt_last_error(void) { return g_last_error.c_str(); }

dqt_status dqt_config_parse(const char* text, dqt_config** out) {
  if (out == nullptr) return fail(DQT_ERR_INVALID, "null output handle");
  *out = nullptr;
  try {
    auto* cfg = new dqt_config{dqt::ConfigSource::parse(text ? text : "")};
    *out = cfg;
    return DQT_OK;
  } catch (const std::exception& e) {
    return fail(classify(e), e.what());
  }
}

dqt_status dqt_config_set(dqt_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return fail(DQT_ERR_INVALID, "null argument");
  }
  try {
    config->source.set(key, value);
    return DQT_OK;
  } catch (const std::exception& e) {
    return fail(classify(e), e.what());
  }
}

void dqt_config_free(dqt_config* config) { delete config; }

dqt_status dqt_run(const dqt_config* config, const char* command, dqt_result** out) {
  if (config == nullptr || command == nullptr || out == nullptr) {
    return fail(DQT_ERR_INVALID, "null argument");
  }
  *out = nullptr;
  try {
    const dqt::RunConfig run_config = config->source.build();
    const std::string cmd = command;
    auto result = std::make_unique<dqt_result>();
    if (cmd == "diffusivity") {
      const dqt::TransportReport r = dqt::run_diffusivity(run_config);
      result->json = dqt::report_to_json(r).dump(2) + "\n";
      result->csv = dqt::table_to_csv({r});
    } else if (cmd == "tau") {
      const dqt::TransportReport r = dqt::run_tau(run_config);
      result->json = dqt::report_to_json(r).dump(2) + "\n";
      result->csv = dqt::table_to_csv({r});
    } else if (cmd == "bound") {
      const dqt::TransportReport r = dqt::run_bound_report(run_config);
      result->json = dqt::report_to_json(r).dump(2) + "\n";
      result->csv = dqt::table_to_csv({r});
    } else if (cmd == "dispersion") {
      const dqt::DispersionTable t = dqt::run_dispersion(run_config);
      result->json = t.json().dump(2) + "\n";
      result->csv = t.csv();
    } else if (cmd == "sweep") {
      const dqt::SweepResult s = dqt::run_sweep(run_config);
      result->json = s.json().dump(2) + "\n";
      result->csv = s.csv();
    } else if (cmd == "probe-cone") {
      const dqt::ConeResult c = dqt::run_probe_cone(run_config);
      result->json = c.json().dump(2) + "\n";
      result->csv = c.csv();
    } else {
      return fail(DQT_ERR_INVALID, "unknown command '" + cmd + "'");
    }
    *out = result.release();
    return DQT_OK;
  } catch (const std::exception& e) {
    return fail(classify(e), e.what());
  }
}

const char* dqt_result_json(const dqt_result* result) {
  return result ? result->json.c_str() : "";
}

const char* dqt_result_csv(const dqt_result* result) {
  return result ? result->csv.c_str() : "";
}

void dqt_result_free(dqt_result* result) { delete result; }

}  // extern "C"
