// generator.cpp — assembly and evaluation of the k-sector generator
#include "dqt/generator.hpp"

#include <cmath>

#include "dqt/util.hpp"

namespace dqt {

double PhasePolyMatrix::max_column_loss() const {
  double loss = 0.0;
  for (double l : column_loss_) loss = std::max(loss, l);
  return loss;
}

std::size_t PhasePolyMatrix::nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& col : columns_) nnz += col.size();
  return nnz;
}

SparseC PhasePolyMatrix::eval_at(double k) const {
  const Eigen::Index n = static_cast<Eigen::Index>(dimension());
  SparseC m(n, n);
  Eigen::VectorXi counts(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    counts(a) = static_cast<int>(columns_[a].size());
  }
  m.reserve(counts);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (const Entry& e : columns_[a]) {
      m.insert(e.row, a) = e.poly.eval(k);
    }
  }
  m.makeCompressed();
  return m;
}

SparseC PhasePolyMatrix::taylor_term(int order) const {
  const Eigen::Index n = static_cast<Eigen::Index>(dimension());
  SparseC m(n, n);
  Eigen::VectorXi counts(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    counts(a) = static_cast<int>(columns_[a].size());
  }
  m.reserve(counts);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (const Entry& e : columns_[a]) {
      const Complex v = e.poly.taylor(order);
      if (v != Complex{0.0, 0.0}) m.insert(e.row, a) = v;
    }
  }
  m.makeCompressed();
  return m;
}

SparseD PhasePolyMatrix::taylor_term_real(int order) const {
  if (order != 0 && order != 2) {
    throw Error("taylor_term_real only applies to the real orders 0 and 2");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dimension());
  SparseD m(n, n);
  Eigen::VectorXi counts(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    counts(a) = static_cast<int>(columns_[a].size());
  }
  m.reserve(counts);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (const Entry& e : columns_[a]) {
      const Complex v = e.poly.taylor(order);
      if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
        throw Error("unexpected imaginary part in an even Taylor term");
      }
      if (v.real() != 0.0) m.insert(e.row, a) = v.real();
    }
  }
  m.makeCompressed();
  return m;
}

LocalOperator heisenberg_derivative(const ModelSpec& model, const LocalOperator& o) {
  LocalOperator out;
  if (o.is_zero()) return out;
  bool pure_identity = true;
  for (const auto& [s, c] : o.terms()) {
    if (!s.is_identity()) pure_identity = false;
  }
  if (pure_identity) return out;
  const int lo = o.min_site();
  const int hi = o.max_site();

  for (const auto& term : model.hamiltonian) {
    const int r = term.pattern.extent();
    for (int x = lo - (r - 1); x <= hi; ++x) {
      const PauliString hx = term.pattern.translated(x);
      for (const auto& [s, cs] : o.terms()) {
        if (commutes(hx, s)) continue;
        const PauliProduct prod = multiply(hx, s);
        // i * coef * [hx, s] = i * coef * 2 * hx s
        out.add(prod.string, Complex{0.0, 2.0} * term.coefficient * cs * prod.phase);
      }
    }
  }

  if (model.c > 0.0) {
    for (const auto& jump : model.jumps) {
      const int r = jump.pattern.extent();
      const double weight = -4.0 * model.c * jump.coefficient * jump.coefficient;
      for (int x = lo - (r - 1); x <= hi; ++x) {
        const PauliString jx = jump.pattern.translated(x);
        for (const auto& [s, cs] : o.terms()) {
          // For a Pauli-string jump J with J^2 = I the dissipator acts
          // diagonally: c (2 J s J - 2 s) = -4c s when J and s anticommute.
          if (!commutes(jx, s)) out.add(s, weight * cs);
        }
      }
    }
  }
  return out;
}

std::size_t charge_index(const ModelSpec& model, const KBasis& basis) {
  const Canonicalized c = canonicalize(model.charge);
  const std::ptrdiff_t index = basis.index_of(c.string);
  if (index < 0) throw ValidationError("charge does not fit in the basis");
  return static_cast<std::size_t>(index);
}

PhasePolyMatrix build_generator(const ModelSpec& model, const KBasis& basis,
                                int workers) {
  model.validate();
  PhasePolyMatrix gen(basis.size());
  parallel_for(basis.size(), workers, [&](std::size_t a) {
    const LocalOperator oa = LocalOperator::term(basis.string_at(a), 1.0);
    EmbedResult er = embed(heisenberg_derivative(model, oa), basis);
    gen.column_loss(a) = er.loss;
    auto& col = gen.column(a);
    col.reserve(er.vector.entries().size());
    for (const auto& [index, poly] : er.vector.entries()) {
      col.push_back({static_cast<std::uint32_t>(index), poly});
    }
  });

  const std::size_t ic = charge_index(model, basis);
  double residual = 0.0;
  for (const auto& e : gen.column(ic)) {
    residual += std::norm(e.poly.eval(0.0));
  }
  residual = std::sqrt(residual);
  if (residual > 1e-12) {
    throw ChargeNotConserved("k = 0 generator does not annihilate the charge (residual " +
                             format_double(residual) + ")");
  }
  return gen;
}

}  // namespace dqt
