// test_hydro.cpp — solver paths against the dense eigendecomposition oracle
// and the worked analytic limits
#include <cmath>

#include "doctest.h"
#include "dqt/hydro.hpp"
#include "oracle.hpp"

using namespace dqt;

namespace {

// A Dzyaloshinskii-like chain H_x = X_x Y_{x+1} - Y_x X_{x+1} with weak
// dephasing; conserves the charge and exercises a non-xxz Hamiltonian.
ModelSpec dm_chain(double c, int truncation) {
  ModelSpec m;
  m.name = "custom";
  m.hamiltonian = {
      {1.0, PauliString::from_word(0, "XY")},
      {-1.0, PauliString::from_word(0, "YX")},
  };
  m.jumps = {{1.0, PauliString::single(0, Letter::Z)}};
  m.c = c;
  m.truncation = truncation;
  return m;
}

}  // namespace

TEST_CASE("left_null_vector: dephasing-only gives the charge functional at any n") {
  for (int n : {1, 2, 3}) {
    const LeftNull ln = left_null_vector(dephasing_only(2.0, n));
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(ln.functional.size());
    expected(2) = 1.0;  // index of Z_0 in the canonical order X, Y, Z, ...
    CHECK((ln.functional - expected).norm() == 0.0);
    CHECK(ln.residual <= 1e-12);
  }
}

TEST_CASE("left_null_vector: xxz matches the dense null-space oracle") {
  const ModelSpec model = xxz_dephasing(1.0, 2.0, 3);
  const LeftNull ln = left_null_vector(model);
  CHECK(ln.residual <= 1e-12);
  const oracle::DenseHydro ref = oracle::dense_hydro(model);
  CHECK(ref.ell.imag().cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((ln.functional - ref.ell.real()).cwiseAbs().maxCoeff() <= 1e-8);

  Engine engine(model);
  Eigen::VectorXcd charge = Eigen::VectorXcd::Zero(ln.functional.size());
  charge(static_cast<Eigen::Index>(engine.charge())) = 1.0;
  CHECK(std::abs(ln.functional.cast<Complex>().cwiseProduct(charge).sum() - 1.0) <= 1e-14);
}

TEST_CASE("left_null_vector: models without dissipation are rejected") {
  // With c = 0 the kernel is macroscopic and the single-mode reduction
  // cannot identify a charge block.
  CHECK_THROWS_AS(left_null_vector(xxz_dephasing(1.0, 0.0, 3)), DegenerateKernel);
}

TEST_CASE("drude_check: ballistic coefficient vanishes for conserved charges") {
  CHECK(std::abs(drude_check(xxz_dephasing(0.8, 2.0, 3))) <= 1e-12);
  CHECK(std::abs(drude_check(dephasing_only(1.0, 1))) == 0.0);

  // Conservation forces the first-order coefficient to zero (the current
  // never contains the charge string); the dense oracle agrees.
  const ModelSpec dm = dm_chain(0.4, 3);
  const Complex b1 = drude_check(dm);
  const oracle::DenseHydro ref = oracle::dense_hydro(dm);
  Engine engine(dm);
  const Eigen::VectorXcd y = Eigen::MatrixXcd(engine.l1())
                                 .col(static_cast<Eigen::Index>(engine.charge()));
  const Complex oracle_b1 = ref.ell.cwiseProduct(y).sum();
  CHECK(std::abs(b1) <= 1e-12);
  CHECK(std::abs(b1 - oracle_b1) <= 1e-9);

  // The DM chain is therefore diffusive too, and matches the oracle.
  const HydroSolution sol = Engine(dm).diffusivity_resolvent();
  CHECK(sol.D == doctest::Approx(ref.D).epsilon(1e-9));
}

TEST_CASE("diffusivity_resolvent: dense-oracle equality at n = 3") {
  const ModelSpec model = xxz_dephasing(1.0, 4.0, 3);
  const HydroSolution sol = diffusivity_resolvent(model);
  const oracle::DenseHydro ref = oracle::dense_hydro(model);
  CHECK(sol.D == doctest::Approx(ref.D).epsilon(1e-10));
  CHECK(sol.imag_part <= 1e-8);
  // Dressed charge: |C) - x matches the oracle's spectral sum.
  Engine engine(model);
  Eigen::VectorXcd dressed_ref = -ref.correction;
  dressed_ref(static_cast<Eigen::Index>(engine.charge())) += 1.0;
  CHECK((sol.dressed_charge - dressed_ref).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("diffusivity_resolvent: strong-decoherence asymptote at n = 5") {
  const HydroSolution sol = diffusivity_resolvent(xxz_dephasing(1.0, 32.0, 5));
  CHECK(std::abs(32.0 * sol.D - 1.0) <= 0.05);
}

TEST_CASE("diffusivity: dephasing-only is zero at any truncation") {
  for (int n : {1, 2, 3}) {
    const HydroSolution sol = diffusivity_resolvent(dephasing_only(1.5, n));
    CHECK(sol.D == 0.0);
    const HydroSolution ti = diffusivity_time_integral(dephasing_only(1.5, n));
    CHECK(ti.D == 0.0);
  }
}

TEST_CASE("diffusivity_time_integral agrees with the resolvent") {
  const ModelSpec model = xxz_dephasing(1.0, 8.0, 4);
  const HydroSolution res = diffusivity_resolvent(model);
  const HydroSolution ti = diffusivity_time_integral(model);
  CHECK(std::abs(ti.D - res.D) <= 1e-6 * std::abs(res.D));
}

TEST_CASE("dispersion_direct: conservation at k = 0 and the k^2 law") {
  const ModelSpec model = xxz_dephasing(1.0, 8.0, 4);
  Engine engine(model);

  const auto at_zero = engine.dispersion_direct({0.0});
  CHECK(std::abs(at_zero[0].omega) <= 1e-10);

  const double d_res = engine.diffusivity_resolvent().D;
  const auto pts = engine.dispersion_direct({0.1});
  const double d_est = -pts[0].omega.imag() / 0.01;
  CHECK(std::abs(d_est - d_res) <= 0.01 * d_res);
  CHECK(std::abs(pts[0].omega.real()) <= 1e-10);  // no ballistic part
  CHECK(pts[0].overlap >= 0.999);

  const HydroSolution direct = engine.diffusivity_direct(0.1);
  CHECK(std::abs(direct.D - d_res) <= 1e-3 * d_res);
}

TEST_CASE("decoherence_time: dephasing-only analytically at n = 1, 2, 3") {
  for (int n : {1, 2, 3}) {
    for (double c : {0.5, 2.0}) {
      const SpectralScan scan = decoherence_time(dephasing_only(c, n), 8);
      CHECK(scan.tau == doctest::Approx(1.0 / (4.0 * c)).epsilon(1e-9));
      for (const Complex e1 : scan.e1) {
        CHECK(e1.real() == doctest::Approx(-4.0 * c).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("decoherence_time: dense-oracle equality at n = 3") {
  const ModelSpec model = xxz_dephasing(1.0, 2.0, 3);
  Engine engine(model);
  const SpectralScan scan = engine.decoherence_time(16);
  const double tau_ref = oracle::dense_tau(model, 16);
  CHECK(scan.tau >= tau_ref - 1e-8);  // refinement can only raise the max
  // Compare every grid point that the refinement did not add.
  for (std::size_t i = 0; i < scan.k.size(); ++i) {
    const oracle::DenseModes modes = oracle::dense_modes_at(model, scan.k[i]);
    CHECK(std::abs(scan.e1[i] - modes.e1) <= 1e-8 * std::max(1.0, std::abs(modes.e1)));
    CHECK(std::abs(scan.slow_mode[i] - modes.slow) <=
          1e-8 * std::max(1.0, std::abs(modes.slow)));
  }
  CHECK(scan.tau > 0.0);
}

TEST_CASE("diffusivity_time_integral: a too-small horizon is reported") {
  CHECK_THROWS_AS(diffusivity_time_integral(xxz_dephasing(1.0, 0.5, 3), 0.01),
                  NonDecayingIntegrand);
}

TEST_CASE("microscopic_diffusivity: xxz pullback and dephasing-only zero") {
  for (double delta : {0.5, 1.5}) {
    Engine engine(xxz_dephasing(delta, 2.0, 3));
    const LocalOperator pull = engine.l2_charge_pullback();
    // L2|Z_0) = |Y_0 X_1) - |X_0 Y_1).
    CHECK(pull.coefficient(PauliString::from_word(0, "YX")) == Complex{1.0, 0.0});
    CHECK(pull.coefficient(PauliString::from_word(0, "XY")) == Complex{-1.0, 0.0});
    CHECK(pull.size() == 2);
    const Interval d0 = engine.microscopic_diffusivity();
    CHECK(d0.upper == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d0.lower <= d0.upper);
    CHECK(d0.lower >= 0.0);
  }
  Engine trivial(dephasing_only(2.0, 2));
  const Interval d0 = trivial.microscopic_diffusivity();
  CHECK(d0.lower == 0.0);
  CHECK(d0.upper == 0.0);
}

TEST_CASE("method agreement across anisotropies and decoherence strengths") {
  for (double delta : {0.5, 1.0, 1.5}) {
    for (double c : {2.0, 4.0, 8.0}) {
      Engine engine(xxz_dephasing(delta, c, 4));
      const double d_res = engine.diffusivity_resolvent().D;
      const double d_int = engine.diffusivity_time_integral().D;
      const double d_dir = engine.diffusivity_direct(0.1).D;
      CHECK(std::abs(d_int - d_res) <= 1e-6 * std::abs(d_res));
      CHECK(std::abs(d_dir - d_res) <= 1e-3 * std::abs(d_res));
    }
  }
}

TEST_CASE("diffusivity decreases with c in the strong-decoherence tail") {
  double previous = std::numeric_limits<double>::infinity();
  for (double c : {1.0, 2.0, 4.0, 8.0}) {
    const double d = diffusivity_resolvent(xxz_dephasing(1.0, c, 4)).D;
    CHECK(d < previous);
    CHECK(d > 0.0);
    previous = d;
  }
}

TEST_CASE("dressed charge matches the tracked slow eigenvector at small k") {
  const ModelSpec model = xxz_dephasing(1.0, 4.0, 4);
  Engine engine(model);
  const auto pts = engine.dispersion_direct({0.05});
  CHECK(pts[0].overlap >= 0.999);
}
