// ksector.hpp — canonical truncated basis of the translation-covariant
// operator sector and phase-polynomial coordinates in it
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dqt/pauli.hpp"

namespace dqt {

// A canonical string is a PauliString whose support starts at site 0 (the
// letters at site 0 and at the maximal site are then automatically
// non-identity because identity letters are never stored).
using CanonicalString = PauliString;

struct Canonicalized {
  CanonicalString string;
  int shift = 0;  // translate `string` by `shift` to recover the input
};

// Throws IdentityString for the identity (it carries no wavevector content).
Canonicalized canonicalize(const PauliString& p);

inline constexpr int kTruncationCap = 9;

// All canonical strings of extent <= n, ordered by extent and then
// lexicographically in the letter word (I < X < Y < Z). Size is 3*4^(n-1).
class KBasis {
 public:
  explicit KBasis(int n, int cap = kTruncationCap);

  int truncation() const { return n_; }
  std::size_t size() const { return strings_.size(); }
  const CanonicalString& string_at(std::size_t index) const { return strings_[index]; }
  const std::vector<CanonicalString>& strings() const { return strings_; }

  // Index of a canonical string, or -1 when its extent exceeds n.
  std::ptrdiff_t index_of(const CanonicalString& s) const;

 private:
  int n_;
  std::vector<CanonicalString> strings_;
};

// Finite Laurent polynomial sum_m c_m e^{ikm}.
class PhasePoly {
 public:
  void add(int m, Complex c);
  Complex eval(double k) const;
  // Taylor coefficient of k^order at k = 0: sum_m c_m (i m)^order / order!.
  Complex taylor(int order) const;
  bool empty() const { return terms_.empty(); }
  const std::vector<std::pair<int, Complex>>& terms() const { return terms_; }

 private:
  std::vector<std::pair<int, Complex>> terms_;  // sorted by m
};

// Sparse coordinate vector over a KBasis whose entries are phase polynomials.
class PhasePolyVector {
 public:
  explicit PhasePolyVector(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  void add(std::size_t index, int m, Complex c) { entries_[index].add(m, c); }
  const std::map<std::size_t, PhasePoly>& entries() const { return entries_; }

 private:
  std::size_t dimension_;
  std::map<std::size_t, PhasePoly> entries_;
};

using KVector = Eigen::VectorXcd;

struct EmbedResult {
  PhasePolyVector vector;
  double loss = 0.0;  // summed |coefficient| of terms truncated away
};

// Coordinates of a local operator in the k-sector: a term that canonicalizes
// to (O_b, shift m) contributes c e^{ikm} at index b. The identity component
// is dropped; strings of extent > n are dropped into `loss`.
EmbedResult embed(const LocalOperator& o, const KBasis& basis);

KVector eval_vector(const PhasePolyVector& v, double k);

}  // namespace dqt
