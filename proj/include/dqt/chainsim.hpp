// chainsim.hpp — Heisenberg-picture Lindblad evolution on a finite periodic
// ring: operator decay profiles, the single-mode constant A, current norms
// and an empirical spreading-cone velocity
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dqt/model.hpp"

namespace dqt {

inline constexpr int kRingCap = 10;

struct RingOperator {
  Eigen::MatrixXcd matrix;  // 2^sites square
  int sites = 0;
  int support_min = 0;  // annotation of the initial support
  int support_max = 0;
};

// Precompiled term-wise action of the Lindblad generator on a periodic ring.
class RingGenerator {
 public:
  RingGenerator(const ModelSpec& model, int sites);  // throws RingTooLarge

  int sites() const { return sites_; }
  long dim() const { return dim_; }
  bool dissipative() const { return !jump_.empty(); }

  // dO/dt = i sum_x [H_x, O] + c sum_x (2 L_x O L_x - 2 O) for string jumps.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& o) const;

 private:
  struct Term {
    long flip = 0;
    Eigen::VectorXcd phase;  // permutation-with-phase data of the string
    double weight = 0.0;
  };
  Term compile(const PauliString& s, double weight) const;

  int sites_;
  long dim_;
  std::vector<Term> ham_;
  std::vector<Term> jump_;
};

// Dense realization on the ring; sites are taken modulo the ring size, the
// operator must fit without wrapping onto itself.
RingOperator place_on_ring(const LocalOperator& o, int sites);

// sum_x T_x[charge] over the ring.
RingOperator ring_charge_sum(const ModelSpec& model, int sites);

struct StepControl {
  double rel_tol = 1e-9;  // local error per step, relative
};

// Adaptive Dormand-Prince integration of the ring equation of motion.
RingOperator evolve(const RingGenerator& gen, RingOperator o, double t,
                    StepControl control = {});

struct DecayProfile {
  std::vector<double> t;
  std::vector<double> norm;  // ||dO/dt|| at the sample times
  double t_valid = 0.0;
};

struct CurrentInfo {
  LocalOperator j;   // pullback of L1|C) at the origin
  Interval v_c;      // ||J|| divided by the charge seminorm interval
};

CurrentInfo current_operator(const ModelSpec& model);

// Wrap-around validity horizon (floor(L/2) - extent) / v_ref.
double ring_horizon(const ModelSpec& model, int probe_extent, int sites,
                    std::optional<double> v_ref = {});

// Samples ||dO/dt|| along the evolution. Times beyond the horizon raise
// HorizonExceeded.
DecayProfile decay_profile(const ModelSpec& model, const LocalOperator& probe,
                           const std::vector<double>& times, int sites,
                           std::optional<double> v_ref = {});

// Default sampling grid: `points` log-spaced times from 0.01 * t_valid-scale
// up to t_valid.
std::vector<double> default_decay_times(double t_valid, int points = 200);

struct AEstimate {
  double A = 0.0;
  int sites = 0;
  int time_points = 0;
  double t_valid = 0.0;
  double current_norm = 0.0;
};

// Sampled maximum of ||dO/dt|| tau e^{t/tau} / ||J|| with O the current minus
// its conserved component. An explicit probe replaces the current (and its
// norm in the denominator); `conserved_coefficient` is the charge component
// ell(J), zero for any model that passes the ballistic check.
AEstimate estimate_A(const ModelSpec& model, double tau, int sites,
                     int time_points = 200,
                     std::optional<LocalOperator> probe = {},
                     std::optional<double> v_ref = {},
                     double conserved_coefficient = 0.0);

// Slope of the 1%-of-max contour of ||[probe_0(t), Z_x]|| over (x, t).
// Returns 0 when nothing spreads; throws ConeNotResolved when fewer than
// three sites are reached.
double lr_cone(const ModelSpec& model, int max_distance,
               const std::vector<double>& times, int sites,
               std::optional<LocalOperator> probe = {},
               std::optional<double> v_ref = {});

}  // namespace dqt
