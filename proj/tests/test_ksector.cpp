// test_ksector.cpp — canonical basis, canonicalization and embedding
#include <random>
#include <set>

#include "doctest.h"
#include "dqt/ksector.hpp"

using namespace dqt;

namespace {

// Brute-force enumeration: every letter word on n sites whose first and last
// letters are non-identity, collected as strings.
std::set<PauliString> brute_force_basis(int n) {
  std::set<PauliString> out;
  for (int e = 1; e <= n; ++e) {
    std::vector<unsigned> word(e, 0);
    for (;;) {
      bool valid = word.front() != 0 && word.back() != 0;
      if (valid) {
        PauliString s;
        for (int j = 0; j < e; ++j) {
          if (word[j] != 0) s.set(j, static_cast<Letter>(word[j]));
        }
        out.insert(s);
      }
      int pos = e - 1;
      while (pos >= 0 && word[pos] == 3) {
        word[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++word[pos];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("canonical_basis: counts and membership") {
  const KBasis b1(1);
  REQUIRE(b1.size() == 3);
  CHECK(b1.string_at(0) == PauliString::single(0, Letter::X));
  CHECK(b1.string_at(1) == PauliString::single(0, Letter::Y));
  CHECK(b1.string_at(2) == PauliString::single(0, Letter::Z));

  const KBasis b2(2);
  CHECK(b2.size() == 12);
  CHECK(b2.index_of(PauliString::from_word(0, "XY")) >= 0);
  CHECK(b2.index_of(PauliString::from_word(0, "XX")) >= 0);
  CHECK(b2.index_of(PauliString::from_word(1, "XY")) == -1);  // not canonical form

  const KBasis b7(7);
  CHECK(b7.size() == 12288);

  CHECK_THROWS_AS(KBasis(0), TruncationTooLarge);
  CHECK_THROWS_AS(KBasis(10), TruncationTooLarge);
}

TEST_CASE("canonical_basis matches a brute-force enumeration for n = 1..6") {
  for (int n = 1; n <= 6; ++n) {
    const KBasis basis(n);
    const std::set<PauliString> brute = brute_force_basis(n);
    const std::size_t expected = 3ull << (2 * (n - 1));
    REQUIRE(basis.size() == expected);
    REQUIRE(brute.size() == expected);
    std::set<PauliString> got(basis.strings().begin(), basis.strings().end());
    CHECK(got == brute);
  }
}

TEST_CASE("canonical_basis: deterministic ordering and index lookup") {
  const KBasis basis(4);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(basis.index_of(basis.string_at(i)) == static_cast<std::ptrdiff_t>(i));
  }
  // Ordering: by extent, then lexicographic with I < X < Y < Z.
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const auto& prev = basis.string_at(i - 1);
    const auto& cur = basis.string_at(i);
    CHECK(prev.extent() <= cur.extent());
    if (prev.extent() == cur.extent()) {
      std::string wp, wc;
      for (int j = 0; j < prev.extent(); ++j) {
        wp += static_cast<char>('0' + static_cast<int>(prev.at(j)));
        wc += static_cast<char>('0' + static_cast<int>(cur.at(j)));
      }
      CHECK(wp < wc);
    }
  }
}

TEST_CASE("canonicalize: shifts and errors") {
  const auto c1 = canonicalize(PauliString::from_word(1, "XY"));
  CHECK(c1.string == PauliString::from_word(0, "XY"));
  CHECK(c1.shift == 1);

  const auto c2 = canonicalize(PauliString::single(0, Letter::Z));
  CHECK(c2.string == PauliString::single(0, Letter::Z));
  CHECK(c2.shift == 0);

  const auto c3 = canonicalize(PauliString::single(-3, Letter::Y));
  CHECK(c3.string == PauliString::single(0, Letter::Y));
  CHECK(c3.shift == -3);

  CHECK_THROWS_AS(canonicalize(PauliString{}), IdentityString);
}

TEST_CASE("canonicalize round trip on random strings") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> site(-6, 6);
  std::uniform_int_distribution<int> letter(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    PauliString s;
    for (int j = 0; j < 3; ++j) s.set(site(rng), static_cast<Letter>(letter(rng)));
    const auto c = canonicalize(s);
    CHECK(c.string.translated(c.shift) == s);
    CHECK(c.string.min_site() == 0);
  }
}

TEST_CASE("embed: worked examples") {
  const KBasis basis(3);

  const auto e1 = embed(LocalOperator::term(PauliString::from_word(1, "XY"), 1.0), basis);
  CHECK(e1.loss == 0.0);
  REQUIRE(e1.vector.entries().size() == 1);
  const auto idx = basis.index_of(PauliString::from_word(0, "XY"));
  const auto& poly = e1.vector.entries().at(static_cast<std::size_t>(idx));
  REQUIRE(poly.terms().size() == 1);
  CHECK(poly.terms()[0].first == 1);
  CHECK(poly.terms()[0].second == Complex{1.0, 0.0});

  const auto e2 = embed(LocalOperator::identity(2.5), basis);
  CHECK(e2.loss == 0.0);
  CHECK(e2.vector.entries().empty());

  LocalOperator current;
  current.add(PauliString::from_word(0, "YX"), Complex{0.0, 2.0});
  current.add(PauliString::from_word(0, "XY"), Complex{0.0, -2.0});
  const auto e3 = embed(current, basis);
  CHECK(e3.loss == 0.0);
  CHECK(e3.vector.entries().size() == 2);
  const auto& pyx =
      e3.vector.entries().at(static_cast<std::size_t>(basis.index_of(PauliString::from_word(0, "YX"))));
  CHECK(pyx.terms()[0].first == 0);
  CHECK(pyx.terms()[0].second == Complex{0.0, 2.0});

  // Truncation loss: an extent-4 string cannot embed at n = 3.
  const auto e4 = embed(LocalOperator::term(PauliString::from_word(0, "XIIZ"), 0.5), basis);
  CHECK(e4.loss == doctest::Approx(0.5));
  CHECK(e4.vector.entries().empty());
}

TEST_CASE("embed is linear") {
  const KBasis basis(3);
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> site(0, 2);
  std::uniform_int_distribution<int> letter(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    LocalOperator o1, o2;
    for (int t = 0; t < 3; ++t) {
      o1.add(PauliString::single(site(rng), static_cast<Letter>(letter(rng))), coef(rng));
      o2.add(PauliString::single(site(rng), static_cast<Letter>(letter(rng))), coef(rng));
    }
    const Complex a{coef(rng), coef(rng)};
    const Complex b{coef(rng), coef(rng)};
    LocalOperator combo = a * o1;
    combo += b * o2;
    const KVector lhs = eval_vector(embed(combo, basis).vector, 0.7);
    const KVector rhs = a * eval_vector(embed(o1, basis).vector, 0.7) +
                        b * eval_vector(embed(o2, basis).vector, 0.7);
    CHECK((lhs - rhs).norm() <= 1e-14);
  }
}

TEST_CASE("embed: translation covariance as a phase") {
  const KBasis basis(4);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    LocalOperator o;
    o.add(PauliString::from_word(0, "XZ"), coef(rng));
    o.add(PauliString::from_word(0, "YY"), coef(rng));
    const int shift = 1 + trial % 3;
    const double k = 0.3 + 0.1 * (trial % 5);
    const KVector base = eval_vector(embed(o, basis).vector, k);
    const KVector moved = eval_vector(embed(o.translated(shift), basis).vector, k);
    const Complex phase{std::cos(k * shift), std::sin(k * shift)};
    CHECK((moved - phase * base).norm() <= 1e-14);
  }
}

TEST_CASE("eval_vector: phase arithmetic") {
  PhasePolyVector v(4);
  v.add(2, 1, Complex{1.0, 0.0});
  CHECK(eval_vector(v, 0.0)(2) == Complex{1.0, 0.0});
  const Complex at_pi = eval_vector(v, M_PI)(2);
  CHECK(std::abs(at_pi - Complex{-1.0, 0.0}) <= 1e-15);

  PhasePolyVector w(4);
  w.add(0, 0, Complex{0.0, 2.0});
  w.add(0, 2, Complex{-1.0, 0.0});
  const Complex got = eval_vector(w, M_PI / 2)(0);
  CHECK(std::abs(got - Complex{1.0, 2.0}) <= 1e-15);
}
