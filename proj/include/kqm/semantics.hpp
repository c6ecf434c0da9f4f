#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kqm/diagram.hpp"
#include "kqm/linalg.hpp"

namespace kqm {

/// Interpretation environment: a dimension per base type and a matrix per
/// generator (the plain variant). Missing entries are reported by eval, not
/// at construction.
class Model {
 public:
  Model& set_dim(const std::string& base, std::size_t d);
  Model& set_gen(const std::string& name, Matrix m);

  std::size_t dim(const std::string& base) const;
  std::vector<std::size_t> dims(const WireType& t) const;
  std::size_t dim(const WireType& t) const { return product(dims(t)); }

  bool has_gen(const std::string& name) const { return gens_.count(name) != 0; }
  const Matrix& gen(const std::string& name) const;

  const std::map<std::string, std::size_t>& all_dims() const { return dims_; }
  const std::map<std::string, Matrix>& all_gens() const { return gens_; }

 private:
  std::map<std::string, std::size_t> dims_;
  std::map<std::string, Matrix> gens_;
};

/// Matrix of a variant given the plain matrix and the plain signature.
/// Dual types use the same basis in reversed wire order, so compound
/// boundaries pick up a reversal permutation under transpose/conjugate.
Matrix variant_matrix(const Matrix& plain, Variant v, const WireType& dom, const WireType& cod, const Model& m);

/// Compositional evaluation into the finite-dimensional Hilbert-space model.
Matrix eval(const Diagram& d, const Model& m);

enum class EqMode : std::uint8_t { exact, up_to_scalar, up_to_phase };

struct Verdict {
  enum class Kind : std::uint8_t { equal, equal_with_witness, unequal };
  Kind kind = Kind::unequal;
  /// c with lhs = c * rhs (modes other than exact).
  Complex witness{1.0, 0.0};
  /// Residual entrywise difference after applying the witness.
  double max_abs_diff = 0.0;

  bool equal() const { return kind != Kind::unequal; }
};

Verdict compare_matrices(const Matrix& lhs, const Matrix& rhs, EqMode mode, double tol = 1e-9);
Verdict check_eq(const Diagram& lhs, const Diagram& rhs, const Model& m, EqMode mode, double tol = 1e-9);

/// Hilbert-Schmidt inner product <f, g> = Tr(f^dagger . g), evaluated from
/// the loop diagram.
Complex hs_inner(const Diagram& f, const Diagram& g, const Model& m);

struct BornReport {
  Complex trace_form;   // Tr(rho_phi . P)
  Complex inner_form;   // <phi | P . phi>
  bool equal = false;
};

BornReport born_check(const Diagram& phi, const Diagram& projector, const Model& m, double tol = 1e-9);

/// `rows cols` on the first line, then one line per row of `re im` pairs.
std::string matrix_to_text(const Matrix& m);
Matrix matrix_from_text(std::string_view text);

/// Shortest round-tripping decimal form of a double.
std::string format_double(double x);

}  // namespace kqm
