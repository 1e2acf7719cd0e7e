// model.cpp — model validation and built-in instances
#include "dqt/model.hpp"

#include <cmath>

#include "dqt/ksector.hpp"

namespace dqt {

void ModelSpec::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ValidationError("decoherence strength c must be finite and >= 0");
  }
  auto check_terms = [](const std::vector<ModelTerm>& terms, const char* what) {
    for (const auto& t : terms) {
      if (!std::isfinite(t.coefficient)) {
        throw ValidationError(std::string(what) + " coefficient must be finite");
      }
      if (t.pattern.is_identity()) {
        throw ValidationError(std::string(what) + " pattern must not be the identity");
      }
      if (t.pattern.min_site() != 0) {
        throw ValidationError(std::string(what) + " pattern must start at offset 0");
      }
    }
  };
  check_terms(hamiltonian, "hamiltonian");
  check_terms(jumps, "jump");
  if (charge.is_identity()) {
    throw ValidationError("charge must not be the identity");
  }
  if (charge.extent() != 1) {
    throw ValidationError("only single-site charges are supported");
  }
  if (truncation < 1 || truncation > kTruncationCap) {
    throw ValidationError("truncation length " + std::to_string(truncation) +
                          " outside [1, " + std::to_string(kTruncationCap) + "]");
  }
}

ModelSpec xxz_dephasing(double delta, double c, int truncation) {
  ModelSpec m;
  m.name = "xxz_dephasing";
  m.delta = delta;
  m.hamiltonian = {
      {1.0, PauliString::from_word(0, "XX")},
      {1.0, PauliString::from_word(0, "YY")},
      {delta, PauliString::from_word(0, "ZZ")},
  };
  m.jumps = {{1.0, PauliString::single(0, Letter::Z)}};
  m.c = c;
  m.truncation = truncation;
  return m;
}

ModelSpec dephasing_only(double c, int truncation) {
  ModelSpec m;
  m.name = "dephasing";
  m.jumps = {{1.0, PauliString::single(0, Letter::Z)}};
  m.c = c;
  m.truncation = truncation;
  return m;
}

int interaction_range(const ModelSpec& model) {
  int range = 0;
  for (const auto& t : model.hamiltonian) range = std::max(range, t.pattern.extent() - 1);
  for (const auto& t : model.jumps) range = std::max(range, t.pattern.extent() - 1);
  return range;
}

std::optional<double> builtin_lr_velocity(const ModelSpec& model) {
  if (model.name == "xxz_dephasing" && model.delta.has_value()) {
    return 2.0 + *model.delta;
  }
  return std::nullopt;
}

}  // namespace dqt
