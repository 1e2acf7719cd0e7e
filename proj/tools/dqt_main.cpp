// dqt_main.cpp — command-line front end; talks to the library through the C
// API only
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqt/dqt_c.h"

namespace {

struct ConfigDeleter {
  void operator()(dqt_config* c) const { dqt_config_free(c); }
};
struct ResultDeleter {
  void operator()(dqt_result* r) const { dqt_result_free(r); }
};
using ConfigPtr = std::unique_ptr<dqt_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<dqt_result, ResultDeleter>;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::string model;
  std::string method;
  std::string cache_dir;
  std::string v_lr;
  double delta = 0.0;
  double c = 0.0;
  double a_prime = 0.0;
  double k_max = 0.0;
  int truncation = 0;
  int kpoints = 0;
  int k_count = 0;
  int ring_sites = 0;
  int workers = 0;
  bool band = false;
  bool has_delta = false, has_c = false, has_a_prime = false, has_k_max = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "configuration file path");
  cmd->add_option("--out", flags.out_path, "output file (default stdout)");
  cmd->add_option("--format", flags.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--truncation", flags.truncation, "operator extent cutoff n");
  cmd->add_option("--method", flags.method, "resolvent|integral|direct|all");
  cmd->add_option("--kpoints", flags.kpoints, "tau scan grid size");
  cmd->add_option("--ring-sites", flags.ring_sites, "ring size for A and cone probes");
  cmd->add_option("--workers", flags.workers, "worker threads");
  cmd->add_option("--cache", flags.cache_dir, "cache directory");
  cmd->add_option("--model", flags.model, "built-in model: xxz_dephasing|dephasing|custom");
  cmd->add_option("--delta", flags.delta, "xxz anisotropy")
      ->each([&flags](const std::string&) { flags.has_delta = true; });
  cmd->add_option("--c", flags.c, "decoherence strength")
      ->each([&flags](const std::string&) { flags.has_c = true; });
  cmd->add_option("--a-prime", flags.a_prime, "A' constant of the bound (>= 1)")
      ->each([&flags](const std::string&) { flags.has_a_prime = true; });
  cmd->add_option("--v-lr", flags.v_lr, "Lieb-Robinson velocity or 'auto'");
  cmd->add_option("--k-max", flags.k_max, "largest wavevector for 'dispersion'")
      ->each([&flags](const std::string&) { flags.has_k_max = true; });
  cmd->add_option("--k-count", flags.k_count, "number of wavevectors for 'dispersion'");
  cmd->add_flag("--band", flags.band, "add the truncation uncertainty band");
}

int fail_with(dqt_status status, const std::string& context) {
  std::cerr << "dqt: " << context << ": " << dqt_last_error() << "\n";
  switch (status) {
    case DQT_ERR_BALLISTIC: return 2;
    case DQT_ERR_SOLVER: return 3;
    case DQT_ERR_CONFIG: return 4;
    default: return 1;
  }
}

int set_or_fail(dqt_config* cfg, const char* key, const std::string& value) {
  const dqt_status s = dqt_config_set(cfg, key, value.c_str());
  if (s != DQT_OK) return fail_with(s, std::string("setting ") + key);
  return 0;
}

int run_command(const std::string& command, const CommonFlags& flags) {
  std::string text;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) {
      std::cerr << "dqt: cannot read config file '" << flags.config_path << "'\n";
      return 4;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  dqt_config* raw = nullptr;
  dqt_status status = dqt_config_parse(text.c_str(), &raw);
  if (status != DQT_OK) return fail_with(status, "parsing configuration");
  ConfigPtr cfg(raw);

  int rc = 0;
  auto set_if = [&](bool condition, const char* key, const std::string& value) {
    if (rc == 0 && condition) rc = set_or_fail(cfg.get(), key, value);
  };
  set_if(!flags.model.empty(), "model.name", flags.model);
  set_if(flags.has_delta, "model.delta", std::to_string(flags.delta));
  set_if(flags.has_c, "model.c", std::to_string(flags.c));
  set_if(flags.truncation > 0, "model.truncation", std::to_string(flags.truncation));
  set_if(!flags.method.empty(), "run.method", flags.method);
  set_if(flags.kpoints > 0, "run.kpoints", std::to_string(flags.kpoints));
  set_if(flags.ring_sites > 0, "run.ring_sites", std::to_string(flags.ring_sites));
  set_if(flags.workers > 0, "run.workers", std::to_string(flags.workers));
  set_if(!flags.cache_dir.empty(), "run.cache", flags.cache_dir);
  set_if(flags.has_a_prime, "run.a_prime", std::to_string(flags.a_prime));
  set_if(!flags.v_lr.empty(), "run.v_lr", flags.v_lr);
  set_if(flags.has_k_max, "run.k_max", std::to_string(flags.k_max));
  set_if(flags.k_count > 0, "run.k_count", std::to_string(flags.k_count));
  set_if(flags.band, "run.band", "true");
  if (rc != 0) return rc;

  dqt_result* result_raw = nullptr;
  status = dqt_run(cfg.get(), command.c_str(), &result_raw);
  if (status != DQT_OK) return fail_with(status, "running " + command);
  ResultPtr result(result_raw);

  const char* payload =
      flags.format == "csv" ? dqt_result_csv(result.get()) : dqt_result_json(result.get());
  if (flags.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(flags.out_path);
    if (!out) {
      std::cerr << "dqt: cannot write '" << flags.out_path << "'\n";
      return 1;
    }
    out << payload;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqt — transport quantities and the locality bound for "
               "translation-invariant Lindbladian spin chains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dqt_version()));

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"diffusivity", "compute the diffusivity D"},
      {"tau", "compute the decoherence time tau"},
      {"dispersion", "slow-mode dispersion on a small-k grid"},
      {"bound", "full transport report with the bound verdict"},
      {"sweep", "parameter sweep with caching"},
      {"probe-cone", "empirical spreading-cone velocity on the ring"},
  };

  std::vector<std::unique_ptr<CommonFlags>> flag_sets;
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    flag_sets.push_back(std::make_unique<CommonFlags>());
    add_common_flags(cmd, *flag_sets.back());
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (app.get_subcommand(commands[i].first)->parsed()) {
      return run_command(commands[i].first, *flag_sets[i]);
    }
  }
  std::cerr << "dqt: no command\n";
  return 1;
}
