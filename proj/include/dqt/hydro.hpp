// hydro.hpp — dispersion and diffusivity of the conserved mode: reduced
// resolvent perturbation theory, time-integral form, direct small-k
// eigenvalues, the decoherence time and the microscopic diffusivity
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dqt/generator.hpp"
#include "dqt/krylov.hpp"

namespace dqt {

struct LeftNull {
  Eigen::VectorXd functional;  // ell, normalized so ell(charge) = 1
  double residual = 0.0;       // ||ell L0||_2 / scale
  double kernel_ratio = 0.0;   // sigma_min / sigma_max of the deflated block
};

struct HydroSolution {
  double D = 0.0;
  std::string method;
  KVector dressed_charge;     // |C) - x, stored at unit k
  Complex first_order{0.0, 0.0};
  double imag_part = 0.0;     // |Im| of the raw estimate, kept as a diagnostic
  double residual = 0.0;
  double loss = 0.0;          // generator max column truncation loss
};

struct DispersionPoint {
  double k = 0.0;
  Complex omega{0.0, 0.0};
  double overlap = 0.0;  // with the dressed charge
};

struct SpectralScan {
  std::vector<double> k;
  std::vector<Complex> slow_mode;
  std::vector<Complex> e1;
  double tau = 0.0;
  double argmax_k = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr double kBallisticTol = 1e-10;

// Shared state for one (model, truncation) pair: the basis, the generator,
// its Taylor terms and the deflated kernel factorization. All heavy pieces
// are built once and reused by every solver entry point. First access to a
// lazy piece is not thread-safe; the per-k scans parallelize internally
// after priming.
class Engine {
 public:
  explicit Engine(ModelSpec model, int workers = 1);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const ModelSpec& model() const { return model_; }
  const KBasis& basis() const { return basis_; }
  const PhasePolyMatrix& generator() const { return gen_; }
  std::size_t charge() const { return charge_; }
  double loss() const { return gen_.max_column_loss(); }

  const SparseD& l0() const { return l0_; }
  const SparseC& l1() const { return l1_; }
  const SparseC& l2() const { return l2_; }

  // Left null functional of L0 (throws DegenerateKernel).
  const LeftNull& left_null() const;

  // Ballistic coefficient ell(L1 |C)).
  Complex drude() const;

  // First-order eigenvector correction x with L0 x = Q L1 |C), ell(x) = 0.
  const KVector& resolvent_correction() const;

  HydroSolution diffusivity_resolvent() const;
  HydroSolution diffusivity_time_integral(double t_max = 200.0,
                                          double tolerance = 1e-9) const;
  std::vector<DispersionPoint> dispersion_direct(const std::vector<double>& ks) const;
  // Two-point Richardson fit in k^2 from k and k/2.
  HydroSolution diffusivity_direct(double k = 0.1) const;
  SpectralScan decoherence_time(int kpoints = 64, int nev = 32) const;

  // |L2 C) pulled back to a local operator at the origin.
  LocalOperator l2_charge_pullback() const;
  // Conservative interval for ||L2|C)|| / |||C)||.
  Interval microscopic_diffusivity() const;

  int workers() const { return workers_; }

 private:
  struct Reduced;  // deflated L0 block and its factorization

  Reduced& reduced() const;
  void require_diffusive() const;

  ModelSpec model_;
  int workers_;
  KBasis basis_;
  PhasePolyMatrix gen_;
  std::size_t charge_;
  SparseD l0_;
  SparseC l1_, l2_;

  mutable std::unique_ptr<Reduced> reduced_;
  mutable std::optional<LeftNull> left_null_;
  mutable std::optional<KVector> correction_;
  mutable std::optional<Complex> drude_;
};

// Spec-level entry points.
LeftNull left_null_vector(const ModelSpec& model);
Complex drude_check(const ModelSpec& model);
HydroSolution diffusivity_resolvent(const ModelSpec& model);
HydroSolution diffusivity_time_integral(const ModelSpec& model,
                                        double t_max = 200.0,
                                        double tolerance = 1e-9);
std::vector<DispersionPoint> dispersion_direct(const ModelSpec& model,
                                               const std::vector<double>& ks);
SpectralScan decoherence_time(const ModelSpec& model, int kpoints = 64);
Interval microscopic_diffusivity(const ModelSpec& model);

}  // namespace dqt
