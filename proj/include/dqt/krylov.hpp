// krylov.hpp — Krylov-subspace tools: exp(At)v stepping and a shift-invert
// Arnoldi eigensolver for eigenvalues near a target
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "dqt/pauli.hpp"

namespace dqt {

using MatVec = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

// One accepted Arnoldi propagation step from w(t): the decomposition allows
// cheap evaluation of w(t+s) for any 0 <= s <= h.
struct KrylovStep {
  Eigen::MatrixXcd basis;       // N x m orthonormal
  Eigen::MatrixXcd hessenberg;  // m x m
  double beta = 0.0;            // norm of the step's start vector
  double h = 0.0;               // accepted step size
  double error = 0.0;           // local error estimate
  Eigen::VectorXcd at(double s) const;
};

class KrylovPropagator {
 public:
  KrylovPropagator(MatVec op, int krylov_dim, double tol)
      : op_(std::move(op)), m_(krylov_dim), tol_(tol) {}

  // Builds a step from w, shrinking the proposed size until the local error
  // estimate passes. Returns the accepted step; `h_next` is a suggestion for
  // the following call.
  KrylovStep step(const Eigen::VectorXcd& w, double h_try, double* h_next) const;

 private:
  MatVec op_;
  int m_;
  double tol_;
};

struct EigPair {
  Complex value;
  Eigen::VectorXcd vector;  // normalized
  double residual = 0.0;    // ||M v - lambda v|| / max(1, |lambda|)
};

struct EigsOptions {
  int nev = 32;
  int ncv = 0;          // 0: automatic, grown on non-convergence
  double tol = 1e-9;
  Complex sigma{0.0, 0.0};
};

// Eigenpairs of M closest to sigma via Arnoldi on (M - sigma I)^{-1} with a
// sparse LU factorization. Pairs are returned sorted by |value - sigma| and
// verified against M itself; only pairs passing the residual tolerance are
// included.
std::vector<EigPair> eigs_shift_invert(const Eigen::SparseMatrix<Complex>& M,
                                       const EigsOptions& options);

}  // namespace dqt
