#include "kqm/cpm.hpp"

#include "kqm/builders.hpp"

namespace kqm {

Diagram doubled(const Diagram& d, const std::optional<WireType>& ancilla) {
  Diagram out = par(apply_variant(d, Variant::conjugate), d);
  if (!ancilla || ancilla->is_unit()) return out;
  const WireType& e = *ancilla;
  const WireType& cod = d.cod();
  if (e.size() > cod.size() || cod.slice(cod.size() - e.size(), e.size()) != e) {
    throw TypeError("ancilla " + e.str() + " is not a trailing part of " + cod.str());
  }
  const WireType kept = cod.slice(0, cod.size() - e.size());
  const WireType rest = kept.dual() & kept & e;
  out = seq(out, Diagram::swap(e.dual(), rest));
  return seq(out, pad_left(kept.dual() & kept, cup_pair(e)));
}

std::optional<PhaseWitness> global_phase_witness(const Diagram& f, const Diagram& g, const Model& m, double tol) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) {
    throw TypeError("phase witness needs equal types: " + f.dom().str() + " -> " + f.cod().str() + " vs " +
                    g.dom().str() + " -> " + g.cod().str());
  }
  if (max_abs_diff(eval(doubled(f), m), eval(doubled(g), m)) > tol) return std::nullopt;
  const Matrix fm = eval(f, m);
  const Matrix gm = eval(g, m);
  if (fm.cwiseAbs().maxCoeff() <= tol && gm.cwiseAbs().maxCoeff() <= tol) return PhaseWitness{1.0, 1.0};
  PhaseWitness w{hs_inner(f, f, m), hs_inner(g, f, m)};
  const double scale = std::max(1.0, std::abs(w.s));
  if (std::abs(std::abs(w.s) - std::abs(w.t)) > tol * scale) return std::nullopt;
  if (max_abs_diff(Matrix(w.s * fm), Matrix(w.t * gm)) > tol * scale) return std::nullopt;
  return w;
}

Matrix choi_matrix(const Matrix& superop, const std::vector<std::size_t>& in_dims,
                   const std::vector<std::size_t>& out_dims) {
  const auto din = static_cast<Eigen::Index>(product(in_dims));
  const auto dout = static_cast<Eigen::Index>(product(out_dims));
  if (superop.rows() != dout * dout || superop.cols() != din * din) {
    throw TypeError("superoperator is " + std::to_string(superop.rows()) + "x" + std::to_string(superop.cols()) +
                    ", expected " + std::to_string(dout * dout) + "x" + std::to_string(din * din));
  }
  const auto rin = reversal_map(in_dims);
  const auto rout = reversal_map(out_dims);
  Matrix j(din * dout, din * dout);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index jj = 0; jj < din; ++jj)
        for (Eigen::Index b = 0; b < dout; ++b)
          j(i * dout + a, jj * dout + b) = superop(rout[b] * dout + a, rin[jj] * din + i);
  return j;
}

bool is_completely_positive(const Matrix& superop, const std::vector<std::size_t>& in_dims,
                            const std::vector<std::size_t>& out_dims, double tol) {
  return is_positive_semidefinite(choi_matrix(superop, in_dims, out_dims), tol);
}

Matrix transposition_superoperator(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return swap_matrix(n, n);
}

}  // namespace kqm
