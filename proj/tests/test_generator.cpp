// test_generator.cpp — generator assembly against worked columns, the ring
// oracle and finite-difference Taylor checks
#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "dqt/generator.hpp"
#include "oracle.hpp"

using namespace dqt;

namespace {

Eigen::MatrixXcd dense(const SparseC& m) { return Eigen::MatrixXcd(m); }

}  // namespace

TEST_CASE("build: the xxz charge column reproduces the worked coefficients") {
  const ModelSpec model = xxz_dephasing(1.0, 1.0, 3);
  const KBasis basis(model.truncation);
  const PhasePolyMatrix gen = build_generator(model, basis);
  const std::size_t ic = charge_index(model, basis);
  const std::ptrdiff_t ixy = basis.index_of(PauliString::from_word(0, "XY"));
  const std::ptrdiff_t iyx = basis.index_of(PauliString::from_word(0, "YX"));

  // Column of Z_0: 2(e^{-ik} - 1) at X_0 Y_1 and -2(e^{-ik} - 1) at Y_0 X_1.
  for (double k : {0.0, 0.4, M_PI / 2, M_PI}) {
    const SparseC m = gen.eval_at(k);
    const Complex expected = 2.0 * (Complex{std::cos(k), -std::sin(k)} - 1.0);
    CHECK(std::abs(m.coeff(ixy, ic) - expected) <= 1e-14);
    CHECK(std::abs(m.coeff(iyx, ic) + expected) <= 1e-14);
    // Nothing else in that column.
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(m.rows());
    for (SparseC::InnerIterator it(m, static_cast<Eigen::Index>(ic)); it; ++it) {
      col(it.row()) = it.value();
    }
    col(ixy) = 0.0;
    col(iyx) = 0.0;
    CHECK(col.norm() <= 1e-14);
  }

  // At k = pi the coefficients are -4 and +4.
  const SparseC mpi = gen.eval_at(M_PI);
  CHECK(std::abs(mpi.coeff(ixy, ic) - Complex{-4.0, 0.0}) <= 1e-14);
  CHECK(std::abs(mpi.coeff(iyx, ic) - Complex{4.0, 0.0}) <= 1e-14);
}

TEST_CASE("build: dephasing-only diagonal") {
  const ModelSpec model = dephasing_only(1.5, 2);
  const KBasis basis(model.truncation);
  const PhasePolyMatrix gen = build_generator(model, basis);
  const SparseC m = gen.eval_at(0.3);
  const std::ptrdiff_t ix = basis.index_of(PauliString::single(0, Letter::X));
  CHECK(std::abs(m.coeff(ix, ix) - Complex{-6.0, 0.0}) <= 1e-14);  // -4c
  // Pure-Z strings are untouched.
  const std::ptrdiff_t izz = basis.index_of(PauliString::from_word(0, "ZZ"));
  for (SparseC::InnerIterator it(m, izz); it; ++it) {
    CHECK(std::abs(it.value()) <= 1e-14);
  }
}

TEST_CASE("build: charge conservation holds and is checked") {
  const ModelSpec model = xxz_dephasing(0.7, 2.0, 4);
  const KBasis basis(model.truncation);
  const PhasePolyMatrix gen = build_generator(model, basis);
  const std::size_t ic = charge_index(model, basis);
  Eigen::VectorXcd charge = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  charge(static_cast<Eigen::Index>(ic)) = 1.0;
  CHECK((gen.eval_at(0.0) * charge).norm() <= 1e-12);

  // A model whose "charge" is not conserved must be rejected.
  ModelSpec broken = xxz_dephasing(1.0, 1.0, 3);
  broken.charge = PauliString::single(0, Letter::X);
  CHECK_THROWS_AS(build_generator(broken, KBasis(3)), ChargeNotConserved);
}

TEST_CASE("taylor terms: worked first and second order on the charge") {
  const ModelSpec model = xxz_dephasing(1.0, 2.0, 3);
  const KBasis basis(model.truncation);
  const PhasePolyMatrix gen = build_generator(model, basis);
  const std::size_t ic = charge_index(model, basis);
  const std::ptrdiff_t ixy = basis.index_of(PauliString::from_word(0, "XY"));
  const std::ptrdiff_t iyx = basis.index_of(PauliString::from_word(0, "YX"));

  const SparseC l0 = gen.taylor_term(0);
  const SparseC l1 = gen.taylor_term(1);
  const SparseC l2 = gen.taylor_term(2);

  Eigen::VectorXcd charge = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  charge(static_cast<Eigen::Index>(ic)) = 1.0;

  CHECK((l0 * charge).norm() <= 1e-14);

  const Eigen::VectorXcd j = l1 * charge;
  CHECK(std::abs(j(iyx) - Complex{0.0, 2.0}) <= 1e-14);
  CHECK(std::abs(j(ixy) - Complex{0.0, -2.0}) <= 1e-14);
  Eigen::VectorXcd rest = j;
  rest(iyx) = 0.0;
  rest(ixy) = 0.0;
  CHECK(rest.norm() <= 1e-14);

  const Eigen::VectorXcd d2 = l2 * charge;
  CHECK(std::abs(d2(iyx) - Complex{1.0, 0.0}) <= 1e-14);
  CHECK(std::abs(d2(ixy) - Complex{-1.0, 0.0}) <= 1e-14);
}

TEST_CASE("taylor terms: central finite differences of eval_at") {
  const ModelSpec model = xxz_dephasing(0.5, 1.0, 3);
  const KBasis basis(model.truncation);
  const PhasePolyMatrix gen = build_generator(model, basis);
  const double h = 1e-4;
  const Eigen::MatrixXcd m_plus = dense(gen.eval_at(h));
  const Eigen::MatrixXcd m_minus = dense(gen.eval_at(-h));
  const Eigen::MatrixXcd m_zero = dense(gen.eval_at(0.0));

  const Eigen::MatrixXcd fd1 = (m_plus - m_minus) / (2.0 * h);
  const Eigen::MatrixXcd fd2 = (m_plus - 2.0 * m_zero + m_minus) / (2.0 * h * h);

  CHECK((dense(gen.taylor_term(1)) - fd1).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((dense(gen.taylor_term(2)) - fd2).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("taylor terms: reality structure in the hermitian string basis") {
  const ModelSpec model = xxz_dephasing(1.3, 0.8, 4);
  const KBasis basis(model.truncation);
  const PhasePolyMatrix gen = build_generator(model, basis);
  const Eigen::MatrixXcd l0 = dense(gen.taylor_term(0));
  const Eigen::MatrixXcd l1 = dense(gen.taylor_term(1));
  const Eigen::MatrixXcd l2 = dense(gen.taylor_term(2));
  CHECK(l0.imag().cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(l1.real().cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(l2.imag().cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("eval_at agrees with the sparse ring-sum oracle at n <= 3") {
  for (double delta : {0.5, 1.0}) {
    const ModelSpec model = xxz_dephasing(delta, 1.7, 3);
    const KBasis basis(model.truncation);
    const PhasePolyMatrix gen = build_generator(model, basis);
    const int sites = 12;
    for (int k_index : {0, 1, 3, 5}) {
      const double k = 2.0 * M_PI * k_index / sites;
      const Eigen::MatrixXcd direct = dense(gen.eval_at(k));
      const Eigen::MatrixXcd brute = oracle::ring_k_matrix(model, basis, sites, k_index);
      CHECK((direct - brute).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("sparsity: per-column fill is independent of the basis size") {
  const ModelSpec m4 = xxz_dephasing(1.0, 1.0, 4);
  const ModelSpec m6 = xxz_dephasing(1.0, 1.0, 6);
  const PhasePolyMatrix g4 = build_generator(m4, KBasis(4));
  const PhasePolyMatrix g6 = build_generator(m6, KBasis(6));
  std::size_t max4 = 0, max6 = 0;
  for (std::size_t a = 0; a < g4.dimension(); ++a) max4 = std::max(max4, g4.column(a).size());
  for (std::size_t a = 0; a < g6.dimension(); ++a) max6 = std::max(max6, g6.column(a).size());
  // The bound: one output string per overlapping Hamiltonian translate plus
  // the diagonal.
  const std::size_t bound = 3 * (6 + 1) + 1;
  CHECK(max4 <= bound);
  CHECK(max6 <= bound);
  CHECK(max6 <= max4 + 6);  // growth with n comes from translates, not dimension
}

TEST_CASE("spectral stability: hermitian-jump spectra stay in the left half plane") {
  const ModelSpec model = xxz_dephasing(1.0, 0.6, 3);
  const PhasePolyMatrix gen = build_generator(model, KBasis(3));
  for (double k : {0.3, 1.0, 2.2, M_PI}) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense(gen.eval_at(k)),
                                                   /*computeEigenvectors=*/false);
    CHECK(es.eigenvalues().real().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("heisenberg_derivative matches the dissipator and commutator algebra") {
  const ModelSpec model = xxz_dephasing(1.0, 1.0, 3);
  // d/dt X_0 under dephasing only: -4c X_0 plus Hamiltonian commutators.
  const LocalOperator x0 = LocalOperator::term(PauliString::single(0, Letter::X), 1.0);
  LocalOperator expected;
  for (const auto& term : model.hamiltonian) {
    for (int x = -2; x <= 2; ++x) {
      LocalOperator c = commutator(
          LocalOperator::term(term.pattern.translated(x), term.coefficient), x0);
      c *= Complex{0.0, 1.0};
      expected += c;
    }
  }
  for (int x = -2; x <= 2; ++x) {
    expected += dissipator(
        LocalOperator::term(PauliString::single(x, Letter::Z), 1.0), x0, model.c);
  }
  LocalOperator got = heisenberg_derivative(model, x0);
  got -= expected;
  CHECK(got.is_zero());
}
