// oracle.hpp — independent brute-force reference implementations used only
// by the tests: a sparse ring construction of the k-sector generator and a
// dense full-eigendecomposition transport solver
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dqt/generator.hpp"

namespace dqt::oracle {

// Sparse matrix of a Pauli string on an L-site ring, built from explicit 2x2
// blocks by Kronecker products (site indices wrap modulo L).
Eigen::SparseMatrix<Complex> ring_pauli(const PauliString& s, int sites);

// The k-sector generator at commensurate k = 2 pi k_index / sites, obtained
// by evolving the full translation sum on the ring with sparse matrix
// products and reading coefficients back off with traces.
Eigen::MatrixXcd ring_k_matrix(const ModelSpec& model, const KBasis& basis,
                               int sites, int k_index);

struct DenseHydro {
  double D = 0.0;
  Eigen::VectorXcd ell;        // left functional, ell(charge) = 1
  Eigen::VectorXcd correction; // first-order eigenvector correction x
};

// Transport coefficients from a complete dense eigendecomposition of L0 and
// the explicit second-order spectral sum.
DenseHydro dense_hydro(const ModelSpec& model);

struct DenseModes {
  Complex slow;
  Complex e1;
};

// Slow mode and first excited eigenvalue at one k from a dense
// eigendecomposition, tracking the slow mode by overlap with the dressed
// charge.
DenseModes dense_modes_at(const ModelSpec& model, double k);

// max over the same grid decoherence_time uses (without refinement).
double dense_tau(const ModelSpec& model, int kpoints);

}  // namespace dqt::oracle
