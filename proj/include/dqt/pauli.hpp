// pauli.hpp — exact Pauli-string algebra on the integer lattice
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "dqt/errors.hpp"

namespace dqt {

using Complex = std::complex<double>;

enum class Letter : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);  // throws ValidationError on anything but IXYZ

// A finitely supported product of single-site Pauli operators. Sites carrying
// the identity are absent from the map, so the empty string is the identity.
class PauliString {
 public:
  PauliString() = default;

  static PauliString single(int site, Letter l);
  // Word of letters at consecutive sites origin, origin+1, ... e.g. "XIY".
  static PauliString from_word(int origin, const std::string& word);

  Letter at(int site) const;
  void set(int site, Letter l);  // setting I erases the site

  bool is_identity() const { return letters_.empty(); }
  int min_site() const;  // requires !is_identity()
  int max_site() const;
  int extent() const;    // max - min + 1; 0 for the identity
  int weight() const { return static_cast<int>(letters_.size()); }

  PauliString translated(int shift) const;

  const std::map<int, Letter>& letters() const { return letters_; }

  bool operator==(const PauliString& o) const { return letters_ == o.letters_; }
  bool operator<(const PauliString& o) const { return letters_ < o.letters_; }

  std::string str() const;  // e.g. "X0.Y1"; "1" for the identity

 private:
  std::map<int, Letter> letters_;
};

struct PauliProduct {
  Complex phase;  // one of {1, i, -1, -i}
  PauliString string;
};

// p*q = phase * r, exactly.
PauliProduct multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

// A finite complex combination of Pauli strings; the identity component is the
// coefficient of the empty string. Zero coefficients are never stored.
class LocalOperator {
 public:
  LocalOperator() = default;
  static LocalOperator identity(Complex coefficient);
  static LocalOperator term(const PauliString& s, Complex coefficient);

  void add(const PauliString& s, Complex coefficient);
  Complex coefficient(const PauliString& s) const;

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<PauliString, Complex>& terms() const { return terms_; }

  // Union of term supports; requires at least one non-identity term.
  int min_site() const;
  int max_site() const;

  LocalOperator translated(int shift) const;
  LocalOperator dagger() const;
  bool is_hermitian(double tol = 1e-12) const;

  LocalOperator& operator+=(const LocalOperator& o);
  LocalOperator& operator-=(const LocalOperator& o);
  LocalOperator& operator*=(Complex scale);
  friend LocalOperator operator+(LocalOperator a, const LocalOperator& b) { return a += b; }
  friend LocalOperator operator-(LocalOperator a, const LocalOperator& b) { return a -= b; }
  friend LocalOperator operator*(Complex s, LocalOperator a) { return a *= s; }
  friend LocalOperator operator*(const LocalOperator& a, const LocalOperator& b);

  std::string str() const;

 private:
  std::map<PauliString, Complex> terms_;
};

LocalOperator commutator(const PauliString& p, const PauliString& q);
LocalOperator commutator(const LocalOperator& a, const LocalOperator& b);

// One Lindblad jump term: c * (2 L^dag O L - {L^dag L, O}).
LocalOperator dissipator(const LocalOperator& jump, const LocalOperator& o, double c);

struct SiteWindow {
  int first = 0;
  int last = 0;  // inclusive
  int size() const { return last - first + 1; }
};

inline constexpr int kDenseSiteCap = 12;

// Kronecker realization over the window, ascending site order with the
// leftmost site as the most significant tensor factor.
Eigen::MatrixXcd to_dense(const LocalOperator& o, SiteWindow window,
                          int cap = kDenseSiteCap);

// Largest singular value of the dense realization on the support window.
double spectral_norm(const LocalOperator& o, int cap = kDenseSiteCap);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Family of translation-invariant single-site product states, each given by a
// unit Bloch vector applied uniformly to every site.
struct BlochFamily {
  std::vector<Eigen::Vector3d> states;
  static const BlochFamily& default_family();  // 6 axis states + 12^3 cube grid
};

// Certified interval around the translation-sum seminorm of a hermitian
// operator: the upper end is the local spectral norm, the lower end the best
// per-site expectation over the product-state family. Single-site operators
// are maximized exactly instead of over the grid.
Interval seminorm_bounds(const LocalOperator& c,
                         const BlochFamily& family = BlochFamily::default_family());

}  // namespace dqt
