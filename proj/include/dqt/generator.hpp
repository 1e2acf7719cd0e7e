// generator.hpp — the k-sector time-evolution superoperator as a sparse
// matrix of phase polynomials, with its small-k Taylor superoperators
#pragma once

#include <Eigen/Sparse>

#include "dqt/ksector.hpp"
#include "dqt/model.hpp"

namespace dqt {

using SparseC = Eigen::SparseMatrix<Complex>;
using SparseD = Eigen::SparseMatrix<double>;

// Square sparse matrix over a KBasis whose entries are finite Laurent
// polynomials in e^{ik}; column a holds the embedding of the time derivative
// of basis string a.
class PhasePolyMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    PhasePoly poly;
  };

  explicit PhasePolyMatrix(std::size_t dimension)
      : columns_(dimension), column_loss_(dimension, 0.0) {}

  std::size_t dimension() const { return columns_.size(); }
  std::vector<Entry>& column(std::size_t a) { return columns_[a]; }
  const std::vector<Entry>& column(std::size_t a) const { return columns_[a]; }
  double& column_loss(std::size_t a) { return column_loss_[a]; }
  const std::vector<double>& column_losses() const { return column_loss_; }
  double max_column_loss() const;
  std::size_t nonzeros() const;

  // Entry-wise Laurent evaluation at a fixed wavevector.
  SparseC eval_at(double k) const;

  // Exact Taylor superoperators: order 0, 1, 2 of the expansion at k = 0.
  SparseC taylor_term(int order) const;
  // Real-part view for orders 0 and 2 (entries are real in the hermitian
  // string basis); validates that imaginary parts are at rounding level.
  SparseD taylor_term_real(int order) const;

 private:
  std::vector<std::vector<Entry>> columns_;  // each sorted by row
  std::vector<double> column_loss_;
};

// Assembles the generator over the given basis by differentiating each basis
// string through every overlapping Hamiltonian translate and jump translate,
// then embedding. Throws ChargeNotConserved when the k = 0 matrix does not
// annihilate the charge column.
PhasePolyMatrix build_generator(const ModelSpec& model, const KBasis& basis,
                                int workers = 1);

// Time derivative of a local operator under the model, exact.
LocalOperator heisenberg_derivative(const ModelSpec& model, const LocalOperator& o);

// Basis index of the model's (single-string) charge.
std::size_t charge_index(const ModelSpec& model, const KBasis& basis);

}  // namespace dqt
