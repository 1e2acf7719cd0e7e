// model.hpp — declarative translation-invariant Lindbladian models
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqt/pauli.hpp"

namespace dqt {

// One translation-invariant term: coefficient times a letter pattern placed
// at consecutive offsets 0..extent-1 (interior identities allowed).
struct ModelTerm {
  double coefficient = 0.0;
  PauliString pattern;  // support starts at offset 0
};

struct ModelSpec {
  std::string name = "custom";
  std::vector<ModelTerm> hamiltonian;
  std::vector<ModelTerm> jumps;
  double c = 0.0;                                  // decoherence strength
  PauliString charge = PauliString::single(0, Letter::Z);
  int truncation = 7;
  std::optional<double> delta;  // echoed for built-in models

  bool hermitian_jumps() const { return true; }  // single-string jumps are
                                                 // hermitian up to phase
  void validate() const;  // throws ValidationError
};

// XXZ chain with on-site dephasing: nearest-neighbour XX + YY + delta*ZZ and
// a Z jump on every site.
ModelSpec xxz_dephasing(double delta, double c, int truncation);

// No Hamiltonian, Z jump on every site.
ModelSpec dephasing_only(double c, int truncation);

// Largest pattern extent minus one over Hamiltonian and jump terms.
int interaction_range(const ModelSpec& model);

// Built-in Lieb-Robinson velocity when one is known (2 + delta for the XXZ
// chain), otherwise nullopt.
std::optional<double> builtin_lr_velocity(const ModelSpec& model);

}  // namespace dqt
