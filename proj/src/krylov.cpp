// krylov.cpp — Arnoldi propagation and shift-invert eigensolver
#include "dqt/krylov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "dqt/errors.hpp"

namespace dqt {

namespace {

// Arnoldi with one re-orthogonalization pass (DGKS).
struct ArnoldiResult {
  Eigen::MatrixXcd V;  // N x (m+1)
  Eigen::MatrixXcd H;  // (m+1) x m
  int m = 0;           // achieved dimension
  bool breakdown = false;
};

ArnoldiResult arnoldi(const MatVec& op, const Eigen::VectorXcd& v0, int m) {
  const Eigen::Index n = v0.size();
  ArnoldiResult r;
  r.V.resize(n, m + 1);
  r.H = Eigen::MatrixXcd::Zero(m + 1, m);
  r.V.col(0) = v0 / v0.norm();
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = op(r.V.col(j));
    const double w0 = w.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const Complex hij = r.V.col(i).dot(w);
        r.H(i, j) += hij;
        w -= hij * r.V.col(i);
      }
    }
    const double wn = w.norm();
    r.H(j + 1, j) = wn;
    if (wn <= 1e-14 * std::max(1.0, w0)) {
      r.m = j + 1;
      r.breakdown = true;
      return r;
    }
    r.V.col(j + 1) = w / wn;
  }
  r.m = m;
  return r;
}

}  // namespace

Eigen::VectorXcd KrylovStep::at(double s) const {
  const int m = static_cast<int>(hessenberg.rows());
  Eigen::MatrixXcd e = (s * hessenberg).exp();
  Eigen::VectorXcd coeffs = beta * e.col(0).head(m);
  return basis * coeffs;
}

KrylovStep KrylovPropagator::step(const Eigen::VectorXcd& w, double h_try,
                                  double* h_next) const {
  KrylovStep out;
  out.beta = w.norm();
  if (out.beta == 0.0) {
    throw Error("krylov step from a zero vector");
  }
  ArnoldiResult ar = arnoldi(op_, w, m_);
  const int m = ar.m;
  out.basis = ar.V.leftCols(m);
  out.hessenberg = ar.H.topLeftCorner(m, m);

  if (ar.breakdown) {
    out.h = h_try;
    out.error = 0.0;
    if (h_next) *h_next = h_try;
    return out;
  }

  const double hnorm = ar.H(m, m - 1).real();
  // ||A v_m|| for the second-order error term of the EXPOKIT estimate.
  const double avnorm = op_(ar.V.col(m)).norm();

  double h = h_try;
  for (int attempt = 0; attempt < 40; ++attempt) {
    // Augmented Hessenberg: propagating it also yields the phi-terms that
    // estimate the local truncation error.
    Eigen::MatrixXcd haug = Eigen::MatrixXcd::Zero(m + 2, m + 2);
    haug.topLeftCorner(m, m) = out.hessenberg;
    haug(m, m - 1) = hnorm;
    haug(m + 1, m) = 1.0;
    Eigen::MatrixXcd f = (h * haug).exp();
    const double phi1 = std::abs(out.beta * f(m, 0));
    const double phi2 = std::abs(out.beta * f(m + 1, 0)) * avnorm;
    double err;
    if (phi1 > 10.0 * phi2) {
      err = phi2;
    } else if (phi2 > phi1) {
      err = phi1;
    } else {
      err = phi1 * phi2 / (phi1 - phi2);
    }
    const double budget = tol_ * std::max(out.beta, 1e-300);
    if (err <= budget || h <= 1e-14 * h_try) {
      out.h = h;
      out.error = err;
      if (h_next) {
        const double grow =
            err > 0.0 ? 0.9 * std::pow(budget / err, 1.0 / (0.5 * m)) : 2.0;
        *h_next = h * std::clamp(grow, 0.2, 2.0);
      }
      return out;
    }
    h *= std::clamp(0.9 * std::pow(budget / err, 1.0 / (0.5 * m)), 0.2, 0.9);
  }
  throw SolverDivergence("krylov propagation step size collapsed");
}

std::vector<EigPair> eigs_shift_invert(const Eigen::SparseMatrix<Complex>& M,
                                       const EigsOptions& options) {
  const Eigen::Index n = M.rows();
  if (n == 0) return {};
  const int nev = std::min<int>(options.nev, static_cast<int>(n));

  double scale = 0.0;
  for (int a = 0; a < M.outerSize(); ++a) {
    double s = 0.0;
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(M, a); it; ++it) {
      s += std::abs(it.value());
    }
    scale = std::max(scale, s);
  }
  if (scale == 0.0) {
    throw SolverDivergence("shift-invert on a zero matrix");
  }

  // The target shift is kept off the spectrum by a small complex nudge; the
  // truncated generator always carries exact zero modes, so sigma itself can
  // sit on an eigenvalue. Eigenvalues are recovered against M directly.
  const Complex sigma = options.sigma + 1e-3 * scale * Complex{0.8, 0.6};
  Eigen::SparseMatrix<Complex> shifted = M;
  {
    Eigen::SparseMatrix<Complex> id(n, n);
    id.setIdentity();
    shifted = M - sigma * id;
  }
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) {
    throw SolverDivergence("shift-invert factorization failed");
  }

  const MatVec inv_op = [&lu](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return lu.solve(v);
  };

  Eigen::VectorXcd v0 = Eigen::VectorXcd::Ones(n);
  v0.normalize();

  int ncv = options.ncv > 0
                ? std::min<int>(options.ncv, static_cast<int>(n))
                : std::min<int>(static_cast<int>(n), std::max(2 * nev + 16, 48));
  const int ncv_cap = std::min<int>(static_cast<int>(n), 768);

  std::vector<EigPair> accepted;
  for (;;) {
    accepted.clear();
    ArnoldiResult ar = arnoldi(inv_op, v0, ncv);
    const int m = ar.m;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ar.H.topLeftCorner(m, m));
    if (es.info() != Eigen::Success) {
      throw SolverDivergence("hessenberg eigendecomposition failed");
    }
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    for (int idx : order) {
      if (static_cast<int>(accepted.size()) >= nev) break;
      const Complex theta = es.eigenvalues()(idx);
      if (std::abs(theta) < 1e-300) continue;
      Eigen::VectorXcd u = ar.V.leftCols(m) * es.eigenvectors().col(idx);
      u.normalize();
      Complex lambda = sigma + 1.0 / theta;
      double resid =
          (M * u - lambda * u).norm() / std::max(1.0, std::abs(lambda));
      // One inverse-iteration polish pass for marginal Ritz pairs.
      for (int polish = 0; polish < 2 && resid > options.tol; ++polish) {
        u = lu.solve(u);
        u.normalize();
        lambda = u.dot(M * u);
        resid = (M * u - lambda * u).norm() / std::max(1.0, std::abs(lambda));
      }
      if (resid <= options.tol) {
        accepted.push_back({lambda, std::move(u), resid});
      }
    }
    if (static_cast<int>(accepted.size()) >= nev || ar.breakdown || ncv >= ncv_cap ||
        ncv >= static_cast<int>(n)) {
      break;
    }
    ncv = std::min({2 * ncv, ncv_cap, static_cast<int>(n)});
  }

  // Polished pairs can drift onto the same eigenvalue; keep one per value.
  std::sort(accepted.begin(), accepted.end(), [&](const EigPair& a, const EigPair& b) {
    return std::abs(a.value - options.sigma) < std::abs(b.value - options.sigma);
  });
  std::vector<EigPair> unique;
  for (auto& pair : accepted) {
    bool duplicate = false;
    for (const auto& kept : unique) {
      if (std::abs(pair.value - kept.value) <= 1e-10 * std::max(1.0, scale) &&
          std::abs(kept.vector.dot(pair.vector)) > 0.999) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) unique.push_back(std::move(pair));
  }
  return unique;
}

}  // namespace dqt
