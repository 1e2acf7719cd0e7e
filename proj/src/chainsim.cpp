// chainsim.cpp — dense ring evolution and its derived measurements
#include "dqt/chainsim.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dqt/hydro.hpp"

namespace dqt {

namespace {

double frob(const Eigen::MatrixXcd& m) { return m.norm(); }

double dense_spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

// Spectral-norm estimate by power iteration on M^dag M; used where full SVDs
// would dominate the runtime and a relative 1e-6 is plenty.
double spectral_norm_estimate(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.cols();
  if (n == 0) return 0.0;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{std::sin(i + 1.0), std::cos(0.5 * i)};
  v.normalize();
  double s = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double s_new = std::sqrt(nw);
    w /= nw;
    const bool settled = std::abs(s_new - s) <= 1e-7 * std::max(s_new, 1e-300);
    s = s_new;
    v = w;
    if (settled && it >= 8) break;
  }
  return s;
}

}  // namespace

RingGenerator::Term RingGenerator::compile(const PauliString& s, double weight) const {
  Term t;
  t.weight = weight;
  t.phase = Eigen::VectorXcd::Ones(dim_);
  for (const auto& [site, l] : s.letters()) {
    const int wrapped = ((site % sites_) + sites_) % sites_;
    const long bit = 1L << (sites_ - 1 - wrapped);
    if (l == Letter::X || l == Letter::Y) t.flip |= bit;
    if (l == Letter::Y || l == Letter::Z) {
      for (long idx = 0; idx < dim_; ++idx) {
        const bool set = (idx & bit) != 0;
        if (l == Letter::Z) {
          if (set) t.phase(idx) = -t.phase(idx);
        } else {
          t.phase(idx) *= set ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
        }
      }
    }
  }
  return t;
}

RingGenerator::RingGenerator(const ModelSpec& model, int sites)
    : sites_(sites), dim_(1L << sites) {
  if (sites < 2 || sites > kRingCap) {
    throw RingTooLarge("ring size " + std::to_string(sites) + " outside [2, " +
                       std::to_string(kRingCap) + "]");
  }
  model.validate();
  for (const auto& term : model.hamiltonian) {
    if (term.pattern.extent() > sites) {
      throw RingTooLarge("hamiltonian pattern does not fit on the ring");
    }
    for (int x = 0; x < sites; ++x) {
      ham_.push_back(compile(term.pattern.translated(x), term.coefficient));
    }
  }
  if (model.c > 0.0) {
    for (const auto& term : model.jumps) {
      if (term.pattern.extent() > sites) {
        throw RingTooLarge("jump pattern does not fit on the ring");
      }
      for (int x = 0; x < sites; ++x) {
        jump_.push_back(compile(term.pattern.translated(x),
                                model.c * term.coefficient * term.coefficient));
      }
    }
  }
}

Eigen::MatrixXcd RingGenerator::apply(const Eigen::MatrixXcd& o) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
  // i coef ([P, O]) with P a permutation-with-phase matrix:
  // (P O)(r, c) = phase(r^f) O(r^f, c), (O P)(r, c) = O(r, c^f) phase(c).
  for (const Term& t : ham_) {
    const Complex iw{0.0, t.weight};
    for (long c = 0; c < dim_; ++c) {
      const long cf = c ^ t.flip;
      for (long r = 0; r < dim_; ++r) {
        const long rf = r ^ t.flip;
        out(r, c) += iw * (t.phase(rf) * o(rf, c) - o(r, cf) * t.phase(c));
      }
    }
  }
  // c g^2 (2 P O P - 2 O) for string jumps (P^2 = I).
  for (const Term& t : jump_) {
    const double w = 2.0 * t.weight;
    for (long c = 0; c < dim_; ++c) {
      const long cf = c ^ t.flip;
      for (long r = 0; r < dim_; ++r) {
        const long rf = r ^ t.flip;
        out(r, c) += w * (t.phase(rf) * o(rf, cf) * t.phase(c) - o(r, c));
      }
    }
  }
  return out;
}

RingOperator place_on_ring(const LocalOperator& o, int sites) {
  if (sites < 2 || sites > kRingCap) {
    throw RingTooLarge("ring size " + std::to_string(sites) + " outside [2, " +
                       std::to_string(kRingCap) + "]");
  }
  RingOperator out;
  out.sites = sites;
  const long dim = 1L << sites;
  out.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  bool any = false;
  for (const auto& [s, coef] : o.terms()) {
    if (!s.is_identity()) {
      if (s.extent() > sites) throw RingTooLarge("operator does not fit on the ring");
      if (!any) {
        out.support_min = s.min_site();
        out.support_max = s.max_site();
        any = true;
      } else {
        out.support_min = std::min(out.support_min, s.min_site());
        out.support_max = std::max(out.support_max, s.max_site());
      }
    }
    long flip = 0;
    Eigen::VectorXcd phase = Eigen::VectorXcd::Constant(dim, coef);
    for (const auto& [site, l] : s.letters()) {
      const int wrapped = ((site % sites) + sites) % sites;
      const long bit = 1L << (sites - 1 - wrapped);
      if (l == Letter::X || l == Letter::Y) flip |= bit;
      if (l == Letter::Y || l == Letter::Z) {
        for (long idx = 0; idx < dim; ++idx) {
          const bool set = (idx & bit) != 0;
          if (l == Letter::Z) {
            if (set) phase(idx) = -phase(idx);
          } else {
            phase(idx) *= set ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
          }
        }
      }
    }
    for (long c = 0; c < dim; ++c) out.matrix(c ^ flip, c) += phase(c);
  }
  return out;
}

RingOperator ring_charge_sum(const ModelSpec& model, int sites) {
  LocalOperator sum;
  for (int x = 0; x < sites; ++x) sum.add(model.charge.translated(x), 1.0);
  RingOperator out = place_on_ring(sum, sites);
  out.support_min = 0;
  out.support_max = sites - 1;
  return out;
}

RingOperator evolve(const RingGenerator& gen, RingOperator o, double t,
                    StepControl control) {
  if (t < 0.0) throw ValidationError("evolution time must be nonnegative");
  if (t == 0.0) return o;

  // Dormand-Prince 5(4) with standard coefficients.
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695,
                      e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                      e6 = 187.0 / 2100, e7 = 1.0 / 40;

  const double initial_frob = frob(o.matrix);
  double time = 0.0;
  Eigen::MatrixXcd k1 = gen.apply(o.matrix);
  double h = 0.0;
  {
    const double rate = frob(k1) / std::max(initial_frob, 1e-300);
    h = std::min(t, 0.1 / std::max(rate, 1e-6));
  }

  while (time < t) {
    h = std::min(h, t - time);
    if (h < 1e-13 * std::max(1.0, t)) {
      throw StepSizeUnderflow("step size underflow at t = " + std::to_string(time));
    }
    const Eigen::MatrixXcd& y = o.matrix;
    const Eigen::MatrixXcd k2 = gen.apply(y + h * (a21 * k1));
    const Eigen::MatrixXcd k3 = gen.apply(y + h * (a31 * k1 + a32 * k2));
    const Eigen::MatrixXcd k4 = gen.apply(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::MatrixXcd k5 =
        gen.apply(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::MatrixXcd k6 = gen.apply(
        y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::MatrixXcd y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::MatrixXcd k7 = gen.apply(y5);
    const Eigen::MatrixXcd y4 =
        y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double scale = std::max({frob(y), frob(y5), 1e-300});
    const double err = frob(y5 - y4) / scale;
    if (err <= control.rel_tol) {
      o.matrix = y5;
      k1 = k7;  // first-same-as-last
      time += h;
    }
    const double grow = err > 0.0
                            ? 0.9 * std::pow(control.rel_tol / err, 0.2)
                            : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
  }

  // Unital Lindblad dynamics never grows the Hilbert-Schmidt norm; a visible
  // increase means the integration failed.
  if (frob(o.matrix) > initial_frob * (1.0 + 1e-6) + 1e-12) {
    throw Error("ring evolution violated norm contraction");
  }
  return o;
}

CurrentInfo current_operator(const ModelSpec& model) {
  ModelSpec small = model;
  small.truncation =
      std::min(kTruncationCap, std::max(1, model.charge.extent() + interaction_range(model)));
  Engine engine(small);
  CurrentInfo out;
  const SparseC& l1 = engine.l1();
  for (SparseC::InnerIterator it(l1, static_cast<Eigen::Index>(engine.charge())); it;
       ++it) {
    out.j.add(engine.basis().string_at(static_cast<std::size_t>(it.row())), it.value());
  }
  const Interval den = seminorm_bounds(LocalOperator::term(model.charge, 1.0));
  if (out.j.is_zero()) {
    out.v_c = {0.0, 0.0};
    return out;
  }
  const double num = spectral_norm(out.j);
  out.v_c.lower = den.upper > 0.0 ? num / den.upper : 0.0;
  out.v_c.upper = den.lower > 0.0 ? num / den.lower
                                  : std::numeric_limits<double>::infinity();
  return out;
}

double ring_horizon(const ModelSpec& model, int probe_extent, int sites,
                    std::optional<double> v_ref) {
  double v = 0.0;
  if (v_ref.has_value()) {
    v = *v_ref;
  } else if (auto builtin = builtin_lr_velocity(model)) {
    v = *builtin;
  } else {
    throw ValidationError(
        "no reference velocity: pass one explicitly for custom models");
  }
  if (v <= 0.0) throw ValidationError("reference velocity must be positive");
  return (static_cast<double>(sites / 2) - probe_extent) / v;
}

DecayProfile decay_profile(const ModelSpec& model, const LocalOperator& probe,
                           const std::vector<double>& times, int sites,
                           std::optional<double> v_ref) {
  if (probe.is_zero()) throw ValidationError("decay profile of a zero operator");
  RingOperator op = place_on_ring(probe, sites);
  const int extent = op.support_max - op.support_min + 1;
  DecayProfile out;
  out.t_valid = ring_horizon(model, extent, sites, v_ref);
  if (out.t_valid <= 0.0) {
    throw ValidationError("probe too large for the ring: empty validity window");
  }
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) throw ValidationError("duplicate sample times");
  }
  if (!sorted.empty() && sorted.front() < 0.0) {
    throw ValidationError("negative sample time");
  }
  if (!sorted.empty() && sorted.back() > out.t_valid * (1.0 + 1e-12)) {
    throw HorizonExceeded("sample time " + std::to_string(sorted.back()) +
                          " beyond the validity horizon " +
                          std::to_string(out.t_valid));
  }

  RingGenerator gen(model, sites);
  double now = 0.0;
  for (double tt : sorted) {
    op = evolve(gen, std::move(op), tt - now);
    now = tt;
    out.t.push_back(tt);
    out.norm.push_back(dense_spectral_norm(gen.apply(op.matrix)));
  }
  return out;
}

std::vector<double> default_decay_times(double t_valid, int points) {
  if (points < 2 || t_valid <= 0.0) {
    throw ValidationError("invalid decay-time grid");
  }
  const double t0 = std::min(0.01, 0.5 * t_valid);
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    out[i] = t0 * std::pow(t_valid / t0, static_cast<double>(i) / (points - 1));
  }
  return out;
}

AEstimate estimate_A(const ModelSpec& model, double tau, int sites,
                     int time_points, std::optional<LocalOperator> probe,
                     std::optional<double> v_ref, double conserved_coefficient) {
  if (!(tau > 0.0)) throw ValidationError("estimate_A requires tau > 0");
  AEstimate out;
  out.sites = sites;
  out.time_points = time_points;

  LocalOperator op;
  if (probe.has_value()) {
    op = *probe;
    out.current_norm = spectral_norm(op);
  } else {
    const CurrentInfo current = current_operator(model);
    if (current.j.is_zero()) {
      throw ValidationError(
          "current operator vanishes: pass an explicit probe operator");
    }
    op = current.j;
    if (conserved_coefficient != 0.0) {
      for (int x = 0; x < sites; ++x) {
        op.add(model.charge.translated(x), -conserved_coefficient);
      }
    }
    out.current_norm = spectral_norm(current.j);
  }
  if (out.current_norm == 0.0) throw ValidationError("probe has zero norm");

  const int extent = op.max_site() - op.min_site() + 1;
  out.t_valid = ring_horizon(model, std::min(extent, sites), sites, v_ref);
  if (out.t_valid <= 0.0) {
    throw ValidationError("probe too large for the ring: empty validity window");
  }
  const std::vector<double> times = default_decay_times(out.t_valid, time_points);
  const DecayProfile profile = decay_profile(model, op, times, sites, v_ref);
  for (std::size_t i = 0; i < profile.t.size(); ++i) {
    const double ratio =
        profile.norm[i] * tau * std::exp(profile.t[i] / tau) / out.current_norm;
    out.A = std::max(out.A, ratio);
  }
  return out;
}

double lr_cone(const ModelSpec& model, int max_distance,
               const std::vector<double>& times, int sites,
               std::optional<LocalOperator> probe, std::optional<double> v_ref) {
  if (max_distance < 1 || max_distance >= sites) {
    throw ValidationError("cone distance range outside the ring");
  }
  LocalOperator op = probe.value_or(LocalOperator::term(
      PauliString::single(0, Letter::X), 1.0));
  RingOperator ring_op = place_on_ring(op, sites);
  const int extent = ring_op.support_max - ring_op.support_min + 1;
  const double t_valid = ring_horizon(model, extent, sites, v_ref);
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.back() > t_valid * (1.0 + 1e-12)) {
    throw HorizonExceeded("cone probe time beyond the validity horizon");
  }

  RingGenerator gen(model, sites);
  const long dim = ring_op.matrix.rows();
  // Z_x phase masks for the commutator ||[O(t), Z_x]||.
  std::vector<Eigen::VectorXd> zsign(max_distance + 1, Eigen::VectorXd::Ones(dim));
  for (int x = 1; x <= max_distance; ++x) {
    const long bit = 1L << (sites - 1 - x);
    for (long idx = 0; idx < dim; ++idx) {
      if (idx & bit) zsign[x](idx) = -1.0;
    }
  }

  std::vector<std::vector<double>> norms(sorted.size(),
                                         std::vector<double>(max_distance + 1, 0.0));
  double now = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ring_op = evolve(gen, std::move(ring_op), sorted[i] - now);
    now = sorted[i];
    for (int x = 1; x <= max_distance; ++x) {
      Eigen::MatrixXcd comm(dim, dim);
      for (long c = 0; c < dim; ++c) {
        for (long r = 0; r < dim; ++r) {
          comm(r, c) = ring_op.matrix(r, c) * (zsign[x](c) - zsign[x](r));
        }
      }
      norms[i][x] = spectral_norm_estimate(comm);
    }
  }

  double cmax = 0.0;
  for (const auto& row : norms) {
    for (double v : row) cmax = std::max(cmax, v);
  }
  if (cmax <= 0.0) return 0.0;  // nothing spreads
  const double threshold = 0.01 * cmax;

  std::vector<double> xs, ts;
  for (int x = 1; x <= max_distance; ++x) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (norms[i][x] >= threshold) {
        xs.push_back(x);
        ts.push_back(sorted[i]);
        break;
      }
    }
  }
  if (xs.empty()) return 0.0;
  if (xs.size() < 3) {
    throw ConeNotResolved("arrival contour spans only " +
                          std::to_string(xs.size()) + " sites");
  }
  // Least-squares slope of x against arrival time.
  double mt = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mt += ts[i];
    mx += xs[i];
  }
  mt /= ts.size();
  mx /= xs.size();
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (ts[i] - mt) * (xs[i] - mx);
    var += (ts[i] - mt) * (ts[i] - mt);
  }
  if (var <= 0.0) {
    throw ConeNotResolved("arrival times do not resolve a slope");
  }
  return cov / var;
}

}  // namespace dqt
