#pragma once

#include <optional>
#include <vector>

#include "kqm/diagram.hpp"
#include "kqm/semantics.hpp"

namespace kqm {

/// conj(d) & d, the conjugate copy on the slow index. With an ancilla E
/// (trailing wires of cod(d)) the two E legs are joined by cups, so a
/// Kraus-style f : A -> B & E doubles to A* & A -> B* & B, the matrix of
/// rho |-> Tr_E(f rho f^dagger) on names of rho. Throws TypeError if the
/// ancilla is not a suffix of cod(d).
Diagram doubled(const Diagram& d, const std::optional<WireType>& ancilla = std::nullopt);

struct PhaseWitness {
  Complex s;
  Complex t;
};

/// When double(f) and double(g) agree, s = <f, f> and t = <g, f> satisfy
/// s F = t G with |s| = |t|. Both zero gives (1, 1).
std::optional<PhaseWitness> global_phase_witness(const Diagram& f, const Diagram& g, const Model& m,
                                                 double tol = 1e-9);

/// Choi matrix of a superoperator in the doubled-index convention:
/// J[(i,a),(j,b)] = S[(b',a),(j',i)], where ' undoes the reversed wire
/// order of the conjugate copy. Dims are the wire dimensions of the plain
/// input and output types.
Matrix choi_matrix(const Matrix& superop, const std::vector<std::size_t>& in_dims,
                   const std::vector<std::size_t>& out_dims);
bool is_completely_positive(const Matrix& superop, const std::vector<std::size_t>& in_dims,
                            const std::vector<std::size_t>& out_dims, double tol = 1e-9);

/// rho |-> rho^T on a d-dimensional system.
Matrix transposition_superoperator(std::size_t d);

}  // namespace kqm
