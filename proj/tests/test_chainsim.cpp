// test_chainsim.cpp — ring generator, integrator, decay profiles, A and cone
#include <cmath>

#include "doctest.h"
#include "dqt/chainsim.hpp"
#include "dqt/generator.hpp"

using namespace dqt;

TEST_CASE("ring_generator: conservation, identity, dephasing eigenvalue") {
  const ModelSpec model = xxz_dephasing(1.0, 1.0, 3);
  const int sites = 6;
  RingGenerator gen(model, sites);

  const RingOperator total_charge = ring_charge_sum(model, sites);
  CHECK(gen.apply(total_charge.matrix).norm() <= 1e-12);

  const Eigen::MatrixXcd identity =
      Eigen::MatrixXcd::Identity(gen.dim(), gen.dim());
  CHECK(gen.apply(identity).norm() <= 1e-12);

  const ModelSpec deph = dephasing_only(1.0, 2);
  RingGenerator dgen(deph, sites);
  const RingOperator x0 =
      place_on_ring(LocalOperator::term(PauliString::single(0, Letter::X), 1.0), sites);
  const Eigen::MatrixXcd dx = dgen.apply(x0.matrix);
  CHECK((dx + 4.0 * x0.matrix).norm() <= 1e-12);

  CHECK_THROWS_AS(RingGenerator(model, 11), RingTooLarge);
  CHECK_THROWS_AS(RingGenerator(model, 1), RingTooLarge);
}

TEST_CASE("ring generator matches the dense window realization of the local rule") {
  // Cross-check the ring action against heisenberg_derivative on an operator
  // far from the wrap.
  const ModelSpec model = xxz_dephasing(0.7, 1.3, 3);
  const int sites = 8;
  RingGenerator gen(model, sites);
  LocalOperator probe;
  probe.add(PauliString::from_word(3, "XZ"), 0.8);
  probe.add(PauliString::single(4, Letter::Y), -0.25);
  const RingOperator placed = place_on_ring(probe, sites);
  const Eigen::MatrixXcd got = gen.apply(placed.matrix);
  const LocalOperator expected = heisenberg_derivative(model, probe);
  const Eigen::MatrixXcd want = place_on_ring(expected, sites).matrix;
  CHECK((got - want).norm() <= 1e-12);
}

TEST_CASE("evolve: identity at t = 0, unitary isometry, dephasing decay") {
  const ModelSpec model = xxz_dephasing(1.0, 0.0, 3);
  const int sites = 4;
  RingGenerator gen(model, sites);
  const RingOperator x0 =
      place_on_ring(LocalOperator::term(PauliString::single(0, Letter::X), 1.0), sites);

  const RingOperator same = evolve(gen, x0, 0.0);
  CHECK((same.matrix - x0.matrix).norm() == 0.0);

  // Hamiltonian-only evolution preserves the norm.
  const RingOperator moved = evolve(gen, x0, 0.4);
  CHECK(moved.matrix.norm() == doctest::Approx(x0.matrix.norm()).epsilon(1e-8));

  // Dephasing-only: X_0(t) = e^{-4ct} X_0 exactly.
  const ModelSpec deph = dephasing_only(1.0, 2);
  RingGenerator dgen(deph, sites);
  for (double t : {0.1, 0.5, 1.0}) {
    const RingOperator decayed = evolve(dgen, x0, t);
    const Eigen::MatrixXcd expected = std::exp(-4.0 * t) * x0.matrix;
    CHECK((decayed.matrix - expected).norm() <= 1e-7 * expected.norm());
  }
}

TEST_CASE("evolve: halving the tolerance shrinks the error at fifth order") {
  const ModelSpec model = xxz_dephasing(1.0, 1.0, 3);
  const int sites = 4;
  RingGenerator gen(model, sites);
  const RingOperator j0 =
      place_on_ring(LocalOperator::term(PauliString::from_word(0, "XY"), 1.0), sites);

  const RingOperator tight = evolve(gen, j0, 0.5, {1e-12});
  const double err_loose =
      (evolve(gen, j0, 0.5, {1e-6}).matrix - tight.matrix).norm();
  const double err_tighter =
      (evolve(gen, j0, 0.5, {1e-8}).matrix - tight.matrix).norm();
  CHECK(err_tighter < err_loose);
  CHECK(err_loose <= 1e-4);
  CHECK(err_tighter <= 1e-6);
}

TEST_CASE("norm contraction along dissipative evolution") {
  const ModelSpec model = xxz_dephasing(1.0, 2.0, 3);
  const int sites = 6;
  RingGenerator gen(model, sites);
  RingOperator op =
      place_on_ring(LocalOperator::term(PauliString::from_word(0, "XY"), 1.0), sites);
  double previous = spectral_norm(LocalOperator::term(PauliString::from_word(0, "XY"), 1.0));
  for (int step = 0; step < 4; ++step) {
    op = evolve(gen, std::move(op), 0.1);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix);
    const double norm = svd.singularValues()(0);
    CHECK(norm <= previous + 1e-8);
    previous = norm;
  }
}

TEST_CASE("current_operator: xxz current, norm and c/delta independence") {
  for (double delta : {0.5, 1.5}) {
    for (double c : {1.0, 4.0}) {
      const CurrentInfo info = current_operator(xxz_dephasing(delta, c, 5));
      CHECK(info.j.coefficient(PauliString::from_word(0, "YX")) == Complex{0.0, 2.0});
      CHECK(info.j.coefficient(PauliString::from_word(0, "XY")) == Complex{0.0, -2.0});
      CHECK(info.j.size() == 2);
      CHECK(info.v_c.lower == doctest::Approx(4.0).epsilon(1e-12));
      CHECK(info.v_c.upper == doctest::Approx(4.0).epsilon(1e-12));
    }
  }
  const CurrentInfo none = current_operator(dephasing_only(2.0, 3));
  CHECK(none.j.is_zero());
  CHECK(none.v_c.upper == 0.0);
}

TEST_CASE("decay_profile: dephasing-only analytic profile") {
  const ModelSpec deph = dephasing_only(1.0, 2);
  const LocalOperator x0 = LocalOperator::term(PauliString::single(0, Letter::X), 1.0);
  const std::vector<double> times = {0.0, 0.2, 0.5, 0.9};
  const DecayProfile profile = decay_profile(deph, x0, times, 8, 2.0);
  REQUIRE(profile.t.size() == times.size());
  for (std::size_t i = 0; i < profile.t.size(); ++i) {
    const double expected = 4.0 * std::exp(-4.0 * profile.t[i]);
    CHECK(profile.norm[i] == doctest::Approx(expected).epsilon(1e-6));
  }

  CHECK_THROWS_AS(decay_profile(deph, x0, {10.0}, 8, 0.2), HorizonExceeded);
}

TEST_CASE("decay_profile: current has nonzero initial derivative and decays") {
  const ModelSpec model = xxz_dephasing(1.0, 2.0, 3);
  const CurrentInfo info = current_operator(model);
  const double t_valid = ring_horizon(model, 2, 8);
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(t_valid * i / 10.0);
  const DecayProfile profile = decay_profile(model, info.j, times, 8);
  CHECK(profile.norm.front() > 0.0);
  // Monotone decay in the tail for c >= 2.
  for (std::size_t i = profile.norm.size() / 2; i + 1 < profile.norm.size(); ++i) {
    CHECK(profile.norm[i + 1] <= profile.norm[i] * (1.0 + 1e-6));
  }
}

TEST_CASE("estimate_A: dephasing-only ratio is exactly one") {
  const double c = 1.25;
  const ModelSpec deph = dephasing_only(c, 2);
  const LocalOperator x0 = LocalOperator::term(PauliString::single(0, Letter::X), 1.0);
  const AEstimate a = estimate_A(deph, 1.0 / (4.0 * c), 8, 50, x0, 2.0);
  CHECK(a.A == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("estimate_A: xxz regression value and ring-size stability") {
  const ModelSpec model = xxz_dephasing(0.5, 2.0, 3);
  const double tau = 0.125;  // representative scale for this test
  const AEstimate a8 = estimate_A(model, tau, 8, 60);
  CHECK(a8.A > 0.0);
  const AEstimate a7 = estimate_A(model, tau, 7, 60);
  // Shared validity horizon: the L = 7 horizon is the shorter one.
  CHECK(std::abs(a7.A - a8.A) <= 0.1 * std::max(a7.A, a8.A));
}

TEST_CASE("lr_cone: no spreading without a Hamiltonian, bounded for xxz") {
  std::vector<double> times;
  for (int i = 1; i <= 12; ++i) times.push_back(0.1 * i);
  CHECK(lr_cone(dephasing_only(1.0, 2), 3, times, 8, std::nullopt, 2.0) == 0.0);

  const ModelSpec model = xxz_dephasing(1.0, 0.0, 3);
  const double horizon = ring_horizon(model, 1, 10);
  std::vector<double> cone_times;
  for (int i = 1; i <= 16; ++i) cone_times.push_back(horizon * i / 16.0);
  const double v = lr_cone(model, 4, cone_times, 10);
  CHECK(v > 0.0);
  CHECK(v <= (2.0 + 1.0) * 1.2);
}
