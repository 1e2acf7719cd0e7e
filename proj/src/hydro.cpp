// hydro.cpp — slow-mode solvers on the k-sector generator
//
// Galerkin truncation gives the k = 0 generator a small spurious kernel on
// top of the conserved charge: long dissipation-free strings whose image
// falls entirely outside the kept basis. For hermitian Pauli-string jumps
// the left and right kernels coincide and are orthogonal to the range, so
// the whole kernel is deflated with an orthonormal basis and the dual of the
// charge is its own coordinate functional.
#include "dqt/hydro.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dqt/util.hpp"

namespace dqt {

namespace {

struct QuadRule {
  std::vector<double> node;
  std::vector<double> weight;
};

// Gauss-Legendre rule on [0, 1], nodes found by Newton iteration on the
// Legendre recurrence.
const QuadRule& gauss_legendre_01() {
  static const QuadRule rule = [] {
    constexpr int n = 15;
    QuadRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.node[i] = 0.5 * (1.0 - x);
      r.node[n - 1 - i] = 0.5 * (1.0 + x);
      r.weight[i] = 0.5 * w;
      r.weight[n - 1 - i] = 0.5 * w;
    }
    return r;
  }();
  return rule;
}

double max_column_one_norm(const SparseD& m) {
  double best = 0.0;
  for (int a = 0; a < m.outerSize(); ++a) {
    double s = 0.0;
    for (SparseD::InnerIterator it(m, a); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

double max_column_one_norm(const SparseC& m) {
  double best = 0.0;
  for (int a = 0; a < m.outerSize(); ++a) {
    double s = 0.0;
    for (SparseC::InnerIterator it(m, a); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

Eigen::VectorXcd sparse_col(const SparseC& m, std::size_t col) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m.rows());
  for (SparseC::InnerIterator it(m, static_cast<Eigen::Index>(col)); it; ++it) {
    v(it.row()) = it.value();
  }
  return v;
}

constexpr double kKernelRatio = 1e-8;  // singular-value ratio deciding kernel
                                       // membership
constexpr std::size_t kKernelCandidateCap = 4096;

}  // namespace

// Deflated representation of L0: orthonormal kernel basis and the bordered
// factorization [[L0, V],[V^T, 0]] used for reduced-resolvent solves.
struct Engine::Reduced {
  Eigen::MatrixXd kernel;  // N x m0, orthonormal, spans ker L0 = ker L0^T
  double scale = 0.0;      // largest singular value of the kernel-candidate block
  double kernel_ratio = 0.0;
  Eigen::SparseMatrix<double> bordered;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;

  // Minimum-norm solution of L0 x = (I - P0) rhs with x orthogonal to the
  // kernel.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double* residual) const {
    const Eigen::Index n = bordered.rows() - kernel.cols();
    Eigen::VectorXd projected = rhs - kernel * (kernel.transpose() * rhs);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(bordered.rows());
    full.head(n) = projected;
    const Eigen::VectorXd sol = lu.solve(full);
    const Eigen::VectorXd x = sol.head(n);
    if (residual) {
      const Eigen::VectorXd check = bordered * sol - full;
      *residual = check.norm() / std::max(1.0, projected.norm());
    }
    return x;
  }
};

Engine::Engine(ModelSpec model, int workers)
    : model_(std::move(model)),
      workers_(std::max(1, workers)),
      basis_(model_.truncation),
      gen_(build_generator(model_, basis_, workers_)),
      charge_(charge_index(model_, basis_)),
      l0_(gen_.taylor_term_real(0)),
      l1_(gen_.taylor_term(1)),
      l2_(gen_.taylor_term(2)) {}

Engine::~Engine() = default;

Engine::Reduced& Engine::reduced() const {
  if (reduced_) return *reduced_;
  auto red = std::make_unique<Reduced>();
  const Eigen::Index n = l0_.rows();

  // Kernel candidates: strings untouched by every jump translate. Any kernel
  // vector is supported there because the dissipator is a strictly negative
  // diagonal on the rest.
  if (model_.c <= 0.0 || model_.jumps.empty()) {
    throw DegenerateKernel(
        "model has no dissipation: the generator kernel is macroscopic");
  }
  std::vector<Eigen::Index> candidates;
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    const PauliString& s = basis_.string_at(a);
    bool untouched = true;
    for (const auto& jump : model_.jumps) {
      if (jump.coefficient == 0.0) continue;
      const int reach = jump.pattern.extent();
      for (int x = s.min_site() - (reach - 1); x <= s.max_site() && untouched; ++x) {
        if (!commutes(jump.pattern.translated(x), s)) untouched = false;
      }
      if (!untouched) break;
    }
    if (untouched) candidates.push_back(static_cast<Eigen::Index>(a));
  }
  if (candidates.size() > kKernelCandidateCap) {
    throw DegenerateKernel("kernel candidate space has dimension " +
                           std::to_string(candidates.size()) +
                           "; the single-mode reduction does not apply");
  }
  if (std::find(candidates.begin(), candidates.end(),
                static_cast<Eigen::Index>(charge_)) == candidates.end()) {
    throw DegenerateKernel("charge is not dissipation-free; conservation is broken");
  }

  // Null space of the candidate columns via the Gram matrix.
  Eigen::MatrixXd b(n, static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    b.col(static_cast<Eigen::Index>(j)) = Eigen::VectorXd(l0_.col(candidates[j]));
  }
  const Eigen::MatrixXd gram = b.transpose() * b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  red->scale = std::sqrt(std::max(lmax, 0.0));
  const double cut = kKernelRatio * kKernelRatio * std::max(lmax, 1e-300);
  int m0 = 0;
  double smallest_kept = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = std::max(es.eigenvalues()(i), 0.0);
    if (ev <= cut) {
      ++m0;
    } else {
      smallest_kept = std::min(smallest_kept, ev);
    }
  }
  if (m0 == 0) {
    throw DegenerateKernel("no kernel found; charge conservation is broken");
  }
  if (std::isfinite(smallest_kept) && smallest_kept <= 1e8 * cut) {
    throw DegenerateKernel("ambiguous kernel dimension: singular value ratio " +
                           format_double(std::sqrt(smallest_kept / std::max(lmax, 1e-300))));
  }
  red->kernel_ratio =
      std::isfinite(smallest_kept) ? std::sqrt(smallest_kept / lmax) : 0.0;

  red->kernel = Eigen::MatrixXd::Zero(n, m0);
  for (int j = 0; j < m0; ++j) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      red->kernel(candidates[i], j) = es.eigenvectors()(static_cast<Eigen::Index>(i), j);
    }
  }

  // The charge must lie in the kernel, and the kernel must also be the left
  // null space (automatic for hermitian Pauli jumps).
  Eigen::VectorXd e_c = Eigen::VectorXd::Zero(n);
  e_c(static_cast<Eigen::Index>(charge_)) = 1.0;
  const double charge_defect =
      (e_c - red->kernel * (red->kernel.transpose() * e_c)).norm();
  if (charge_defect > 1e-8) {
    throw DegenerateKernel("charge is not in the numerical kernel (defect " +
                           format_double(charge_defect) + ")");
  }
  const double left_defect = (l0_.transpose() * red->kernel).norm() /
                             std::max(1.0, red->scale);
  if (left_defect > 1e-10) {
    throw DegenerateKernel("left and right kernels differ (defect " +
                           format_double(left_defect) + ")");
  }
  // First-order hybridization of the charge with a spurious kernel direction
  // would invalidate the non-degenerate perturbation theory.
  const Eigen::VectorXcd l1_charge = sparse_col(l1_, charge_);
  const double mix =
      std::max((red->kernel.transpose() * l1_charge.real()).cwiseAbs().maxCoeff(),
               (red->kernel.transpose() * l1_charge.imag()).cwiseAbs().maxCoeff());
  if (mix > 1e-10 * std::max(1.0, max_column_one_norm(l1_))) {
    throw DegenerateKernel("charge couples to a kernel mode at first order");
  }

  // Bordered system [[L0, V],[V^T, 0]].
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(l0_.nonZeros() + 2 * static_cast<std::size_t>(n) * m0 / 8);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (SparseD::InnerIterator it(l0_, a); it; ++it) {
      trips.emplace_back(it.row(), a, it.value());
    }
  }
  for (int j = 0; j < m0; ++j) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double v = red->kernel(candidates[i], j);
      if (v != 0.0) {
        trips.emplace_back(candidates[i], n + j, v);
        trips.emplace_back(n + j, candidates[i], v);
      }
    }
  }
  red->bordered.resize(n + m0, n + m0);
  red->bordered.setFromTriplets(trips.begin(), trips.end());
  red->bordered.makeCompressed();
  red->lu.compute(red->bordered);
  if (red->lu.info() != Eigen::Success) {
    throw DegenerateKernel("bordered factorization failed");
  }
  reduced_ = std::move(red);
  return *reduced_;
}

const LeftNull& Engine::left_null() const {
  if (left_null_) return *left_null_;
  Reduced& red = reduced();
  LeftNull out;
  out.kernel_ratio = red.kernel_ratio;
  out.functional = Eigen::VectorXd::Zero(l0_.rows());
  out.functional(static_cast<Eigen::Index>(charge_)) = 1.0;
  out.residual =
      (l0_.transpose() * out.functional).norm() / std::max(1.0, red.scale);
  if (out.residual > 1e-12) {
    throw SolverDivergence("left null vector residual " + format_double(out.residual));
  }
  left_null_ = std::move(out);
  return *left_null_;
}

Complex Engine::drude() const {
  if (drude_) return *drude_;
  left_null();  // validates the kernel structure
  const Eigen::VectorXcd y = sparse_col(l1_, charge_);
  drude_ = y(static_cast<Eigen::Index>(charge_));
  return *drude_;
}

void Engine::require_diffusive() const {
  const Complex b1 = drude();
  if (std::abs(b1) > kBallisticTol) {
    throw BallisticTransport("ballistic coefficient |ell(L1 C)| = " +
                             format_double(std::abs(b1)));
  }
}

const KVector& Engine::resolvent_correction() const {
  if (correction_) return *correction_;
  const Eigen::Index n = l0_.rows();
  Eigen::VectorXcd y = sparse_col(l1_, charge_);
  if (y.norm() == 0.0) {
    correction_ = KVector::Zero(n);
    return *correction_;
  }
  Reduced& red = reduced();
  double res_re = 0.0, res_im = 0.0;
  const Eigen::VectorXd xre = red.solve(y.real(), &res_re);
  const Eigen::VectorXd xim = red.solve(y.imag(), &res_im);
  if (res_re + res_im > 1e-10) {
    throw SolverDivergence("reduced resolvent solve residual " +
                           format_double(res_re + res_im));
  }
  correction_ = xre + Complex{0.0, 1.0} * xim;
  return *correction_;
}

HydroSolution Engine::diffusivity_resolvent() const {
  const Eigen::Index n = l0_.rows();
  HydroSolution out;
  out.method = "resolvent";
  out.loss = gen_.max_column_loss();
  if (l1_.nonZeros() == 0 && l2_.nonZeros() == 0) {
    out.dressed_charge = KVector::Zero(n);
    out.dressed_charge(static_cast<Eigen::Index>(charge_)) = 1.0;
    return out;
  }
  require_diffusive();
  const KVector& x = resolvent_correction();
  const Eigen::Index ic = static_cast<Eigen::Index>(charge_);
  const Complex ell_l2c = l2_.coeff(ic, ic);
  const Complex ell_l1x = (l1_ * x)(ic);
  const Complex estimate = -(ell_l2c - ell_l1x);
  out.imag_part = std::abs(estimate.imag());
  if (out.imag_part > 1e-8) {
    throw SolverDivergence("diffusivity estimate has imaginary part " +
                           format_double(out.imag_part));
  }
  out.D = estimate.real();
  out.first_order = drude();
  out.dressed_charge = -x;
  out.dressed_charge(ic) += 1.0;
  return out;
}

HydroSolution Engine::diffusivity_time_integral(double t_max, double tolerance) const {
  const Eigen::Index n = l0_.rows();
  HydroSolution out;
  out.method = "integral";
  out.loss = gen_.max_column_loss();
  if (l1_.nonZeros() == 0 && l2_.nonZeros() == 0) {
    out.dressed_charge = KVector::Zero(n);
    out.dressed_charge(static_cast<Eigen::Index>(charge_)) = 1.0;
    return out;
  }
  require_diffusive();
  Reduced& red = reduced();
  const Eigen::Index ic = static_cast<Eigen::Index>(charge_);
  const Complex ell_l2c = l2_.coeff(ic, ic);

  Eigen::VectorXcd w = sparse_col(l1_, charge_);
  Complex integral{0.0, 0.0};
  if (w.norm() > 0.0) {
    // Project onto the decaying complement of the kernel.
    w -= red.kernel * (red.kernel.transpose() * w.real()).eval() +
         Complex{0.0, 1.0} * (red.kernel * (red.kernel.transpose() * w.imag()).eval());
    // Row ic of L1 as a linear functional, no conjugation.
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index col = 0; col < n; ++col) {
      for (SparseC::InnerIterator it(l1_, col); it; ++it) {
        if (it.row() == ic) g(col) = it.value();
      }
    }
    auto f_of = [&](const Eigen::VectorXcd& v) { return g.cwiseProduct(v).sum(); };

    const MatVec apply_l0 = [this](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
      const Eigen::VectorXd re = l0_ * v.real();
      const Eigen::VectorXd im = l0_ * v.imag();
      return re + Complex{0.0, 1.0} * im;
    };
    const double anorm = max_column_one_norm(l0_);
    const int dim = std::min<int>(40, static_cast<int>(n));
    KrylovPropagator prop(apply_l0, dim, 0.1 * tolerance);

    const QuadRule& quad = gauss_legendre_01();
    double t = 0.0;
    double h = 0.5 * dim / std::max(anorm, 1e-6);
    double peak = std::abs(f_of(w));
    int quiet = 0;
    bool decayed = false;
    while (t < t_max) {
      double h_next = h;
      const KrylovStep step = prop.step(w, std::min(h, t_max - t), &h_next);
      for (std::size_t q = 0; q < quad.node.size(); ++q) {
        const Complex fq = f_of(step.at(step.h * quad.node[q]));
        peak = std::max(peak, std::abs(fq));
        integral += step.h * quad.weight[q] * fq;
      }
      w = step.at(step.h);
      t += step.h;
      h = h_next;
      out.residual += step.error;
      const double fend = std::abs(f_of(w));
      peak = std::max(peak, fend);
      quiet = fend <= tolerance * std::max(peak, 1e-300) ? quiet + 1 : 0;
      if (quiet >= 3) {
        decayed = true;
        break;
      }
    }
    if (!decayed) {
      throw NonDecayingIntegrand("integrand above tolerance at t_max = " +
                                 format_double(t_max));
    }
  }

  const Complex estimate = -(ell_l2c + integral);
  out.imag_part = std::abs(estimate.imag());
  if (out.imag_part > 1e-8) {
    throw SolverDivergence("diffusivity estimate has imaginary part " +
                           format_double(out.imag_part));
  }
  out.D = estimate.real();
  out.first_order = drude();
  const KVector& x = resolvent_correction();
  out.dressed_charge = -x;
  out.dressed_charge(ic) += 1.0;
  return out;
}

std::vector<DispersionPoint> Engine::dispersion_direct(const std::vector<double>& ks) const {
  const KVector& x = resolvent_correction();
  std::vector<DispersionPoint> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    if (k == 0.0) {
      // Conservation pins the mode exactly; the generator build already
      // verified that the charge column vanishes at k = 0.
      out[i] = {0.0, Complex{0.0, 0.0}, 1.0};
      continue;
    }
    const SparseC mk = gen_.eval_at(k);
    EigsOptions opts;
    opts.nev = std::max(8, static_cast<int>(reduced().kernel.cols()) + 4);
    opts.tol = 1e-10;
    const std::vector<EigPair> pairs = eigs_shift_invert(mk, opts);
    KVector dressed = -k * x;
    dressed(static_cast<Eigen::Index>(charge_)) += 1.0;
    dressed.normalize();
    double best = -1.0;
    Complex lambda{0.0, 0.0};
    for (const auto& p : pairs) {
      const double ov = std::abs(p.vector.dot(dressed));
      if (ov > best) {
        best = ov;
        lambda = p.value;
      }
    }
    if (best < 0.5) {
      throw ModeTrackingLost("slow-mode overlap " + format_double(best) +
                             " at k = " + format_double(k));
    }
    out[i] = {k, Complex{0.0, 1.0} * lambda, best};
  }
  return out;
}

HydroSolution Engine::diffusivity_direct(double k) const {
  require_diffusive();
  const std::vector<DispersionPoint> pts = dispersion_direct({k, 0.5 * k});
  const double d_k = -pts[0].omega.imag() / (k * k);
  const double d_half = -pts[1].omega.imag() / (0.25 * k * k);
  HydroSolution out;
  out.method = "direct";
  out.loss = gen_.max_column_loss();
  out.D = (4.0 * d_half - d_k) / 3.0;
  out.residual = std::abs(d_half - d_k);
  out.first_order = drude();
  const KVector& x = resolvent_correction();
  out.dressed_charge = -x;
  out.dressed_charge(static_cast<Eigen::Index>(charge_)) += 1.0;
  return out;
}

SpectralScan Engine::decoherence_time(int kpoints, int nev) const {
  if (kpoints < 1) throw ValidationError("tau scan needs at least one k point");
  const Eigen::Index n = l0_.rows();
  const KVector& x = resolvent_correction();  // primes the kernel reduction too
  const int m0 = static_cast<int>(reduced().kernel.cols());

  struct Point {
    double k = 0.0;
    Complex slow{0.0, 0.0};
    Complex e1{0.0, 0.0};
    std::string warning;
  };

  auto scan_point = [&](double k) -> Point {
    Point pt;
    pt.k = k;
    const SparseC mk = gen_.eval_at(k);
    const double ztol = 1e-8 * std::max(1.0, max_column_one_norm(mk));
    EigsOptions opts;
    opts.nev = std::min<int>(std::max(nev, m0 + 8), static_cast<int>(n));
    opts.tol = 1e-9;
    const std::vector<EigPair> pairs = eigs_shift_invert(mk, opts);
    if (pairs.size() < 2) {
      throw SolverDivergence("fewer than two converged modes at k = " +
                             format_double(k));
    }
    if (static_cast<int>(pairs.size()) < opts.nev) {
      pt.warning = "only " + std::to_string(pairs.size()) + " of " +
                   std::to_string(opts.nev) + " modes converged at k = " +
                   format_double(k);
    }
    KVector dressed = -k * x;
    dressed(static_cast<Eigen::Index>(charge_)) += 1.0;
    dressed.normalize();
    std::size_t slow_index = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double ov = std::abs(pairs[i].vector.dot(dressed));
      if (ov > best) {
        best = ov;
        slow_index = i;
      }
    }
    pt.slow = pairs[slow_index].value;
    // Exact zero modes of the truncated generator (dead strings) are
    // truncation artifacts, not relaxation rates.
    bool found = false;
    double e1_rate = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i == slow_index) continue;
      if (std::abs(pairs[i].value) <= ztol) continue;
      const double rate = -pairs[i].value.real();
      if (!found || rate < e1_rate) {
        found = true;
        e1_rate = rate;
        pt.e1 = pairs[i].value;
      }
    }
    if (!found || -pt.e1.real() <= 10.0 * ztol) {
      throw GapClosure("no decaying mode above the slow mode at k = " +
                       format_double(k));
    }
    if (std::abs(pt.slow) > ztol &&
        std::abs(pt.slow.real() - pt.e1.real()) < 1e-6 * std::abs(pt.e1.real())) {
      throw GapClosure("slow mode and first excited mode indistinguishable at k = " +
                       format_double(k));
    }
    return pt;
  };

  std::vector<double> ks(kpoints);
  for (int j = 0; j < kpoints; ++j) {
    ks[j] = M_PI * static_cast<double>(j + 1) / kpoints;
  }
  std::vector<Point> points(ks.size());
  std::vector<std::exception_ptr> errors(ks.size());
  parallel_for(ks.size(), workers_, [&](std::size_t j) {
    try {
      points[j] = scan_point(ks[j]);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // One bisection refinement pass around the arg-max of 1/(-Re E1).
  std::size_t jmax = 0;
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (-points[j].e1.real() < -points[jmax].e1.real()) jmax = j;
  }
  std::vector<double> refine;
  const double dk = M_PI / kpoints;
  if (points[jmax].k - 0.5 * dk > 0.0) refine.push_back(points[jmax].k - 0.5 * dk);
  if (points[jmax].k + 0.5 * dk <= M_PI) refine.push_back(points[jmax].k + 0.5 * dk);
  for (double k : refine) points.push_back(scan_point(k));
  std::sort(points.begin(), points.end(),
            [](const Point& a, const Point& b) { return a.k < b.k; });

  SpectralScan scan;
  for (const Point& p : points) {
    scan.k.push_back(p.k);
    scan.slow_mode.push_back(p.slow);
    scan.e1.push_back(p.e1);
    if (!p.warning.empty()) scan.warnings.push_back(p.warning);
    const double rate = -p.e1.real();
    if (1.0 / rate > scan.tau) {
      scan.tau = 1.0 / rate;
      scan.argmax_k = p.k;
    }
  }
  return scan;
}

LocalOperator Engine::l2_charge_pullback() const {
  const Eigen::VectorXcd v = sparse_col(l2_, charge_);
  LocalOperator out;
  for (Eigen::Index b = 0; b < v.size(); ++b) {
    if (v(b) != Complex{0.0, 0.0}) {
      out.add(basis_.string_at(static_cast<std::size_t>(b)), v(b));
    }
  }
  return out;
}

Interval Engine::microscopic_diffusivity() const {
  const LocalOperator pullback = l2_charge_pullback();
  const Interval den = seminorm_bounds(LocalOperator::term(model_.charge, 1.0));
  if (pullback.is_zero()) return {0.0, 0.0};
  const Interval num = seminorm_bounds(pullback);
  Interval out;
  out.lower = den.upper > 0.0 ? num.lower / den.upper : 0.0;
  out.upper = den.lower > 0.0 ? num.upper / den.lower
                              : std::numeric_limits<double>::infinity();
  return out;
}

LeftNull left_null_vector(const ModelSpec& model) {
  return Engine(model).left_null();
}

Complex drude_check(const ModelSpec& model) { return Engine(model).drude(); }

HydroSolution diffusivity_resolvent(const ModelSpec& model) {
  return Engine(model).diffusivity_resolvent();
}

HydroSolution diffusivity_time_integral(const ModelSpec& model, double t_max,
                                        double tolerance) {
  return Engine(model).diffusivity_time_integral(t_max, tolerance);
}

std::vector<DispersionPoint> dispersion_direct(const ModelSpec& model,
                                               const std::vector<double>& ks) {
  return Engine(model).dispersion_direct(ks);
}

SpectralScan decoherence_time(const ModelSpec& model, int kpoints) {
  return Engine(model).decoherence_time(kpoints);
}

Interval microscopic_diffusivity(const ModelSpec& model) {
  return Engine(model).microscopic_diffusivity();
}

}  // namespace dqt
