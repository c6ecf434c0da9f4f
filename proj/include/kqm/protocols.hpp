#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kqm/diagram.hpp"
#include "kqm/semantics.hpp"

namespace kqm {

/// Qubit constants. Generators live on the base type `Q`.
namespace qubit {

inline const WireType kQ = WireType::base("Q");

Matrix identity();
Matrix sigma_x();
Matrix sigma_z();
Matrix hadamard();
Matrix cnot();
/// sigma_x^x . sigma_z^z
Matrix branch_unitary(int x, int z);
/// |0x> + (-1)^z |1(1-x)>, unnormalized.
Vector bell_vector(int x, int z);

Diagram sx();
Diagram sz();
Diagram h();
Diagram cnot_gen();

/// dim Q = 2 with sx, sz, H and CNOT assigned.
Model model();

}  // namespace qubit

/// Diagram of sigma_x^x . sigma_z^z (sz runs first); Id(Q) for (0, 0).
Diagram branch_unitary_diagram(int x, int z);

/// coname of the branch unitary, Q & Q* -> I. Evaluates to the conjugate
/// transpose of bell_vector(x, z).
Diagram bell_costate(int x, int z);

struct ProtocolOptions {
  bool corrected = true;
  /// Adds 1/sqrt(2) diamonds for each cap and for the measured costate.
  bool normalized = false;
};

/// Q -> Q: input and Alice's half of a shared cap measured in branch
/// (x, z), then the dagger of the branch unitary on Bob's wire.
Diagram teleport_branch(int x, int z, ProtocolOptions opts = {});

/// Teleportation through the shared state name(f); the correction
/// f . U^dagger . f^dagger makes every branch equal to f. With f an
/// identity this is teleport_branch.
Diagram gate_teleport_branch(const Diagram& f, int x, int z, ProtocolOptions opts = {});

/// I -> Q* & Q: two caps with a Bell costate on the inner pair. The
/// uncorrected outer pair ends in bell_vector(x, z); the corrected one in
/// bell_vector(0, 0).
Diagram entanglement_swap_branch(int x, int z, ProtocolOptions opts = {});

struct Branch {
  std::string label;
  Diagram diagram;
  Matrix expected;
};

struct BranchReport {
  std::string label;
  Matrix evaluated;
  Matrix expected;
  Verdict verdict;
  /// |c|^2 for the up-to-scalar witness c.
  double weight = 0.0;
  /// Non-empty when the branch failed to type-check or evaluate.
  std::string error;

  bool ok() const { return error.empty() && verdict.equal(); }
};

std::vector<BranchReport> verify_protocol(const std::vector<Branch>& branches, const Model& m, double tol = 1e-9);
bool weights_sum_to_one(const std::vector<BranchReport>& reports, double tol = 1e-12);

/// Branch lists for the three named protocols, normalized, in (x, z)
/// lexicographic order.
std::vector<Branch> teleport_branches(ProtocolOptions opts = {true, true});
std::vector<Branch> gate_teleport_branches(const Diagram& f, const Matrix& f_matrix, ProtocolOptions opts = {true, true});
std::vector<Branch> entanglement_swap_branches(ProtocolOptions opts = {true, true});

/// `branch xz: verdict scalar=<re>,<im> weight=<p>`, 12 significant digits.
std::string format_report(const BranchReport& r);

}  // namespace kqm
