// test_capi.cpp — the extern-C surface: handles, status codes, payloads
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "dqt/dqt_c.h"

namespace {

struct Config {
  dqt_config* ptr = nullptr;
  ~Config() { dqt_config_free(ptr); }
};

struct Result {
  dqt_result* ptr = nullptr;
  ~Result() { dqt_result_free(ptr); }
};

}  // namespace

TEST_CASE("capi: version and invalid arguments") {
  CHECK(std::strlen(dqt_version()) > 0);
  CHECK(dqt_config_parse("", nullptr) == DQT_ERR_INVALID);
  dqt_config* cfg = nullptr;
  REQUIRE(dqt_config_parse("", &cfg) == DQT_OK);
  CHECK(dqt_run(cfg, "bogus", nullptr) == DQT_ERR_INVALID);
  dqt_config_free(cfg);
}

TEST_CASE("capi: diffusivity run end to end") {
  Config cfg;
  REQUIRE(dqt_config_parse("model.name = xxz_dephasing\nmodel.c = 4.0\n",
                           &cfg.ptr) == DQT_OK);
  REQUIRE(dqt_config_set(cfg.ptr, "model.truncation", "3") == DQT_OK);
  REQUIRE(dqt_config_set(cfg.ptr, "model.delta", "1.0") == DQT_OK);

  Result result;
  REQUIRE(dqt_run(cfg.ptr, "diffusivity", &result.ptr) == DQT_OK);
  const std::string json = dqt_result_json(result.ptr);
  CHECK(json.find("\"D\"") != std::string::npos);
  const std::string csv = dqt_result_csv(result.ptr);
  CHECK(csv.rfind("param,D,", 0) == 0);
}

TEST_CASE("capi: config errors map to the config status") {
  Config cfg;
  REQUIRE(dqt_config_parse("model.name = xxz_dephasing\n", &cfg.ptr) == DQT_OK);
  Result result;
  CHECK(dqt_run(cfg.ptr, "diffusivity", &result.ptr) == DQT_ERR_CONFIG);
  CHECK(std::string(dqt_last_error()).find("model.c") != std::string::npos);

  dqt_config* bad = nullptr;
  CHECK(dqt_config_parse("nonsense = 1\n", &bad) == DQT_ERR_CONFIG);
  CHECK(bad == nullptr);
}

TEST_CASE("capi: custom model text runs end to end") {
  Config cfg;
  REQUIRE(dqt_config_parse(
              "model.name = custom\n"
              "model.hamiltonian = 1.0 XY; -1.0 YX\n"
              "model.jumps = 1.0 Z\n"
              "model.c = 0.4\n"
              "model.truncation = 3\n",
              &cfg.ptr) == DQT_OK);
  Result result;
  REQUIRE(dqt_run(cfg.ptr, "diffusivity", &result.ptr) == DQT_OK);
  CHECK(std::string(dqt_result_json(result.ptr)).find("\"D\"") != std::string::npos);
}

TEST_CASE("capi: solver failures map to the solver status") {
  // An integration horizon far too short for the integrand to decay.
  Config cfg;
  REQUIRE(dqt_config_parse(
              "model.name = xxz_dephasing\n"
              "model.c = 0.5\n"
              "model.truncation = 3\n"
              "run.method = integral\n"
              "run.t_max = 0.01\n",
              &cfg.ptr) == DQT_OK);
  Result result;
  CHECK(dqt_run(cfg.ptr, "diffusivity", &result.ptr) == DQT_ERR_SOLVER);

  // No dissipation: the kernel reduction refuses.
  Config cfg2;
  REQUIRE(dqt_config_parse(
              "model.name = xxz_dephasing\n"
              "model.c = 0.0\n"
              "model.truncation = 3\n",
              &cfg2.ptr) == DQT_OK);
  Result result2;
  CHECK(dqt_run(cfg2.ptr, "diffusivity", &result2.ptr) == DQT_ERR_SOLVER);
}
