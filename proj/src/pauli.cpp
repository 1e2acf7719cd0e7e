// pauli.cpp — exact Pauli-string algebra on the integer lattice
#include "dqt/pauli.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace dqt {

namespace {

// Single-site products. result_letter[a][b] and i-power phase[a][b] encode
// sigma_a * sigma_b = i^phase * sigma_result.
constexpr unsigned char kProd[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr unsigned char kPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

Complex i_power(unsigned exponent) {
  switch (exponent & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

char letter_char(Letter l) {
  static constexpr char chars[] = {'I', 'X', 'Y', 'Z'};
  return chars[static_cast<unsigned>(l)];
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '1': return Letter::I;
    case 'X': case 'x': return Letter::X;
    case 'Y': case 'y': return Letter::Y;
    case 'Z': case 'z': return Letter::Z;
    default:
      throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString PauliString::single(int site, Letter l) {
  PauliString p;
  p.set(site, l);
  return p;
}

PauliString PauliString::from_word(int origin, const std::string& word) {
  PauliString p;
  for (std::size_t j = 0; j < word.size(); ++j) {
    p.set(origin + static_cast<int>(j), letter_from_char(word[j]));
  }
  return p;
}

Letter PauliString::at(int site) const {
  auto it = letters_.find(site);
  return it == letters_.end() ? Letter::I : it->second;
}

void PauliString::set(int site, Letter l) {
  if (l == Letter::I) {
    letters_.erase(site);
  } else {
    letters_[site] = l;
  }
}

int PauliString::min_site() const { return letters_.begin()->first; }
int PauliString::max_site() const { return letters_.rbegin()->first; }

int PauliString::extent() const {
  if (letters_.empty()) return 0;
  return max_site() - min_site() + 1;
}

PauliString PauliString::translated(int shift) const {
  PauliString out;
  for (const auto& [site, l] : letters_) out.letters_[site + shift] = l;
  return out;
}

std::string PauliString::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [site, l] : letters_) {
    if (!first) os << '.';
    os << letter_char(l) << site;
    first = false;
  }
  return os.str();
}

PauliProduct multiply(const PauliString& p, const PauliString& q) {
  PauliProduct out;
  unsigned phase = 0;
  out.string = p;
  for (const auto& [site, lq] : q.letters()) {
    const unsigned a = static_cast<unsigned>(out.string.at(site));
    const unsigned b = static_cast<unsigned>(lq);
    phase += kPhase[a][b];
    out.string.set(site, static_cast<Letter>(kProd[a][b]));
  }
  out.phase = i_power(phase);
  return out;
}

bool commutes(const PauliString& p, const PauliString& q) {
  int clashes = 0;
  const auto& small = p.weight() <= q.weight() ? p : q;
  const auto& large = p.weight() <= q.weight() ? q : p;
  for (const auto& [site, l] : small.letters()) {
    const Letter other = large.at(site);
    if (other != Letter::I && other != l) ++clashes;
  }
  return (clashes & 1) == 0;
}

LocalOperator LocalOperator::identity(Complex coefficient) {
  LocalOperator o;
  o.add(PauliString{}, coefficient);
  return o;
}

LocalOperator LocalOperator::term(const PauliString& s, Complex coefficient) {
  LocalOperator o;
  o.add(s, coefficient);
  return o;
}

void LocalOperator::add(const PauliString& s, Complex coefficient) {
  if (coefficient == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.try_emplace(s, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

Complex LocalOperator::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

int LocalOperator::min_site() const {
  int m = 0;
  bool seen = false;
  for (const auto& [s, c] : terms_) {
    if (s.is_identity()) continue;
    m = seen ? std::min(m, s.min_site()) : s.min_site();
    seen = true;
  }
  if (!seen) throw Error("min_site of an operator without non-identity terms");
  return m;
}

int LocalOperator::max_site() const {
  int m = 0;
  bool seen = false;
  for (const auto& [s, c] : terms_) {
    if (s.is_identity()) continue;
    m = seen ? std::max(m, s.max_site()) : s.max_site();
    seen = true;
  }
  if (!seen) throw Error("max_site of an operator without non-identity terms");
  return m;
}

LocalOperator LocalOperator::translated(int shift) const {
  LocalOperator out;
  for (const auto& [s, c] : terms_) out.terms_[s.translated(shift)] = c;
  return out;
}

LocalOperator LocalOperator::dagger() const {
  LocalOperator out;
  for (const auto& [s, c] : terms_) out.terms_[s] = std::conj(c);
  return out;
}

bool LocalOperator::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_) {
    if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c))) return false;
  }
  return true;
}

LocalOperator& LocalOperator::operator+=(const LocalOperator& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

LocalOperator& LocalOperator::operator-=(const LocalOperator& o) {
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

LocalOperator& LocalOperator::operator*=(Complex scale) {
  if (scale == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, c] : terms_) c *= scale;
  return *this;
}

LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
  LocalOperator out;
  for (const auto& [p, cp] : a.terms()) {
    for (const auto& [q, cq] : b.terms()) {
      PauliProduct prod = multiply(p, q);
      out.add(prod.string, cp * cq * prod.phase);
    }
  }
  return out;
}

std::string LocalOperator::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.real() << (c.imag() >= 0 ? "+" : "") << c.imag() << "i)*" << s.str();
    first = false;
  }
  return os.str();
}

LocalOperator commutator(const PauliString& p, const PauliString& q) {
  LocalOperator out;
  if (commutes(p, q)) return out;
  // Anticommuting strings: [p,q] = 2 p q.
  PauliProduct prod = multiply(p, q);
  out.add(prod.string, 2.0 * prod.phase);
  return out;
}

LocalOperator commutator(const LocalOperator& a, const LocalOperator& b) {
  LocalOperator out;
  for (const auto& [p, cp] : a.terms()) {
    for (const auto& [q, cq] : b.terms()) {
      if (commutes(p, q)) continue;
      PauliProduct prod = multiply(p, q);
      out.add(prod.string, 2.0 * cp * cq * prod.phase);
    }
  }
  return out;
}

LocalOperator dissipator(const LocalOperator& jump, const LocalOperator& o, double c) {
  const LocalOperator jd = jump.dagger();
  const LocalOperator jdj = jd * jump;
  LocalOperator out = 2.0 * (jd * o * jump);
  out -= jdj * o;
  out -= o * jdj;
  out *= c;
  return out;
}

Eigen::MatrixXcd to_dense(const LocalOperator& o, SiteWindow window, int cap) {
  if (window.size() < 1) throw ValidationError("empty dense window");
  if (window.size() > cap) {
    throw WindowTooLarge("dense window of " + std::to_string(window.size()) +
                         " sites exceeds the cap of " + std::to_string(cap));
  }
  const int w = window.size();
  const long dim = 1L << w;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, coef] : o.terms()) {
    if (!s.is_identity() &&
        (s.min_site() < window.first || s.max_site() > window.last)) {
      throw WindowTooSmall("operator support [" + std::to_string(s.min_site()) +
                           "," + std::to_string(s.max_site()) +
                           "] exceeds window [" + std::to_string(window.first) +
                           "," + std::to_string(window.last) + "]");
    }
    // The string is a permutation-with-phase matrix: column b maps to row
    // b^flip with phase prod over Y (±i) and Z (±1) sites.
    long flip = 0;
    std::vector<std::pair<long, Letter>> phase_bits;
    for (const auto& [site, l] : s.letters()) {
      const long bit = 1L << (w - 1 - (site - window.first));
      if (l == Letter::X || l == Letter::Y) flip |= bit;
      if (l == Letter::Y || l == Letter::Z) phase_bits.emplace_back(bit, l);
    }
    for (long col = 0; col < dim; ++col) {
      Complex phase = coef;
      for (const auto& [bit, l] : phase_bits) {
        const bool set = (col & bit) != 0;
        if (l == Letter::Z) {
          if (set) phase = -phase;
        } else {  // Y: <1|Y|0> = i, <0|Y|1> = -i
          phase *= set ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
        }
      }
      m(col ^ flip, col) += phase;
    }
  }
  return m;
}

double spectral_norm(const LocalOperator& o, int cap) {
  if (o.is_zero()) return 0.0;
  SiteWindow window{0, 0};
  bool has_support = false;
  for (const auto& [s, c] : o.terms()) {
    if (s.is_identity()) continue;
    if (!has_support) {
      window = {s.min_site(), s.max_site()};
      has_support = true;
    } else {
      window.first = std::min(window.first, s.min_site());
      window.last = std::max(window.last, s.max_site());
    }
  }
  if (!has_support) return std::abs(o.coefficient(PauliString{}));
  const Eigen::MatrixXcd m = to_dense(o, window, cap);
  if (o.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  if (m.rows() <= 1024) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m,
                                                     Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

const BlochFamily& BlochFamily::default_family() {
  static const BlochFamily family = [] {
    BlochFamily f;
    for (int axis = 0; axis < 3; ++axis) {
      for (int sign : {-1, 1}) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        v(axis) = sign;
        f.states.push_back(v);
      }
    }
    constexpr int kGrid = 12;
    for (int ix = 0; ix < kGrid; ++ix) {
      for (int iy = 0; iy < kGrid; ++iy) {
        for (int iz = 0; iz < kGrid; ++iz) {
          Eigen::Vector3d v(-1.0 + 2.0 * ix / (kGrid - 1),
                            -1.0 + 2.0 * iy / (kGrid - 1),
                            -1.0 + 2.0 * iz / (kGrid - 1));
          const double norm = v.norm();
          if (norm < 1e-12) continue;
          f.states.push_back(v / norm);
        }
      }
    }
    return f;
  }();
  return family;
}

Interval seminorm_bounds(const LocalOperator& c, const BlochFamily& family) {
  if (!c.is_hermitian()) {
    throw ValidationError("seminorm_bounds requires a hermitian operator");
  }
  // The identity does not contribute to the translation sum.
  LocalOperator stripped = c;
  stripped.add(PauliString{}, -c.coefficient(PauliString{}));
  if (stripped.is_zero()) return {0.0, 0.0};

  Interval out;
  out.upper = spectral_norm(stripped);

  const int lo = stripped.min_site();
  const int hi = stripped.max_site();
  if (lo == hi) {
    // Single-site: the optimal product state is the top eigenstate, with
    // per-site expectation equal to the Bloch-vector length.
    Eigen::Vector3d r(stripped.coefficient(PauliString::single(lo, Letter::X)).real(),
                      stripped.coefficient(PauliString::single(lo, Letter::Y)).real(),
                      stripped.coefficient(PauliString::single(lo, Letter::Z)).real());
    out.lower = std::min(r.norm(), out.upper);
    return out;
  }

  double best = 0.0;
  for (const auto& bloch : family.states) {
    double value = 0.0;
    for (const auto& [s, coef] : stripped.terms()) {
      double prod = 1.0;
      for (const auto& [site, l] : s.letters()) {
        prod *= bloch(static_cast<int>(l) - 1);
      }
      value += coef.real() * prod;
    }
    best = std::max(best, std::abs(value));
  }
  out.lower = std::min(best, out.upper);
  return out;
}

}  // namespace dqt
