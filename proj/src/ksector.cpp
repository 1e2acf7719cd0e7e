// ksector.cpp — canonical basis construction and k-space embedding
#include "dqt/ksector.hpp"

#include <algorithm>
#include <cmath>

namespace dqt {

Canonicalized canonicalize(const PauliString& p) {
  if (p.is_identity()) {
    throw IdentityString("the identity has no canonical representative");
  }
  const int shift = p.min_site();
  return {p.translated(-shift), shift};
}

KBasis::KBasis(int n, int cap) : n_(n) {
  if (n < 1 || n > cap) {
    throw TruncationTooLarge("truncation length " + std::to_string(n) +
                             " outside [1, " + std::to_string(cap) + "]");
  }
  std::size_t total = 3;
  for (int e = 2; e <= n; ++e) total += 9ull << (2 * (e - 2));
  strings_.reserve(total);
  for (unsigned l = 1; l <= 3; ++l) {
    strings_.push_back(PauliString::single(0, static_cast<Letter>(l)));
  }
  for (int e = 2; e <= n; ++e) {
    const std::uint64_t mids = 1ull << (2 * (e - 2));
    for (unsigned first = 1; first <= 3; ++first) {
      for (std::uint64_t mid = 0; mid < mids; ++mid) {
        for (unsigned last = 1; last <= 3; ++last) {
          PauliString s = PauliString::single(0, static_cast<Letter>(first));
          for (int j = 1; j < e - 1; ++j) {
            const unsigned code =
                static_cast<unsigned>(mid >> (2 * (e - 2 - j))) & 3u;
            if (code != 0) s.set(j, static_cast<Letter>(code));
          }
          s.set(e - 1, static_cast<Letter>(last));
          strings_.push_back(std::move(s));
        }
      }
    }
  }
}

std::ptrdiff_t KBasis::index_of(const CanonicalString& s) const {
  const int e = s.extent();
  if (e < 1 || e > n_) return -1;
  if (e == 1) return static_cast<std::ptrdiff_t>(s.at(0)) - 1;
  // Offset of the extent-e block is 3*4^(e-2); within it the word
  // (l_0, m_1..m_{e-2}, l_{e-1}) is a mixed-radix number.
  std::uint64_t offset = 3ull << (2 * (e - 2));
  std::uint64_t mid = 0;
  for (int j = 1; j < e - 1; ++j) {
    mid = (mid << 2) | static_cast<unsigned>(s.at(j));
  }
  const std::uint64_t first = static_cast<unsigned>(s.at(0)) - 1;
  const std::uint64_t last = static_cast<unsigned>(s.at(e - 1)) - 1;
  return static_cast<std::ptrdiff_t>(offset + (first * (1ull << (2 * (e - 2))) + mid) * 3 + last);
}

void PhasePoly::add(int m, Complex c) {
  if (c == Complex{0.0, 0.0}) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const auto& t, int v) { return t.first < v; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  } else {
    terms_.insert(it, {m, c});
  }
}

Complex PhasePoly::eval(double k) const {
  Complex out{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    out += c * Complex{std::cos(k * m), std::sin(k * m)};
  }
  return out;
}

Complex PhasePoly::taylor(int order) const {
  Complex out{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    switch (order) {
      case 0: out += c; break;
      case 1: out += c * Complex{0.0, static_cast<double>(m)}; break;
      case 2: out += c * (-0.5 * static_cast<double>(m) * m); break;
      default: throw Error("taylor order must be 0, 1 or 2");
    }
  }
  return out;
}

EmbedResult embed(const LocalOperator& o, const KBasis& basis) {
  EmbedResult out{PhasePolyVector(basis.size()), 0.0};
  for (const auto& [s, coef] : o.terms()) {
    if (s.is_identity()) continue;  // (I)_k = 0
    const Canonicalized c = canonicalize(s);
    const std::ptrdiff_t index = basis.index_of(c.string);
    if (index < 0) {
      out.loss += std::abs(coef);
      continue;
    }
    out.vector.add(static_cast<std::size_t>(index), c.shift, coef);
  }
  return out;
}

KVector eval_vector(const PhasePolyVector& v, double k) {
  KVector out = KVector::Zero(static_cast<Eigen::Index>(v.dimension()));
  for (const auto& [index, poly] : v.entries()) {
    out(static_cast<Eigen::Index>(index)) = poly.eval(k);
  }
  return out;
}

}  // namespace dqt
