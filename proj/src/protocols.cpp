#include "kqm/protocols.hpp"

#include <cmath>
#include <cstdio>

#include "kqm/builders.hpp"

namespace kqm {

namespace qubit {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

Matrix branch_unitary(int x, int z) {
  Matrix u = identity();
  if (x) u = sigma_x() * u;
  if (z) u = u * sigma_z();
  return u;
}

Vector bell_vector(int x, int z) {
  Vector v = Vector::Zero(4);
  v(x) = 1;
  v(2 + (1 - x)) = z ? -1 : 1;
  return v;
}

Diagram sx() { return Diagram::gen("sx", kQ, kQ); }
Diagram sz() { return Diagram::gen("sz", kQ, kQ); }
Diagram h() { return Diagram::gen("H", kQ, kQ); }
Diagram cnot_gen() { return Diagram::gen("CNOT", kQ & kQ, kQ & kQ); }

Model model() {
  Model m;
  m.set_dim("Q", 2).set_gen("sx", sigma_x()).set_gen("sz", sigma_z()).set_gen("H", hadamard()).set_gen("CNOT", cnot());
  return m;
}

}  // namespace qubit

namespace {

Diagram with_scalars(const Diagram& d, int count) {
  Diagram out = d;
  for (int i = 0; i < count; ++i) out = par(Diagram::scalar(Complex{1.0 / std::sqrt(2.0), 0.0}), out);
  return out;
}

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string bits(int x, int z) { return std::to_string(x) + std::to_string(z); }

}  // namespace

Diagram branch_unitary_diagram(int x, int z) {
  if (x && z) return seq(qubit::sz(), qubit::sx());
  if (x) return qubit::sx();
  if (z) return qubit::sz();
  return Diagram::id(qubit::kQ);
}

Diagram bell_costate(int x, int z) { return coname(branch_unitary_diagram(x, z)); }

namespace {

Diagram through_shared_state(const Diagram& shared, int x, int z) {
  const WireType q = qubit::kQ;
  return seq(par(Diagram::id(q), shared), par(bell_costate(x, z), Diagram::id(q)));
}

}  // namespace

Diagram teleport_branch(int x, int z, ProtocolOptions opts) {
  Diagram d = through_shared_state(Diagram::cap(qubit::kQ[0]), x, z);
  if (opts.corrected && (x || z)) d = seq(d, apply_variant(branch_unitary_diagram(x, z), Variant::dagger));
  return opts.normalized ? with_scalars(d, 2) : d;
}

Diagram gate_teleport_branch(const Diagram& f, int x, int z, ProtocolOptions opts) {
  if (f.kind() == Kind::id) return teleport_branch(x, z, opts);
  Diagram d = through_shared_state(name(f), x, z);
  if (opts.corrected && (x || z)) {
    const Diagram u_dagger = apply_variant(branch_unitary_diagram(x, z), Variant::dagger);
    d = seq(d, seq_all({apply_variant(f, Variant::dagger), u_dagger, f}));
  }
  return opts.normalized ? with_scalars(d, 2) : d;
}

Diagram entanglement_swap_branch(int x, int z, ProtocolOptions opts) {
  const Wire q = qubit::kQ[0];
  const Diagram caps = par(Diagram::cap(q), Diagram::cap(q));
  const Diagram measure = par(Diagram::id(WireType{q.dualized()}), par(bell_costate(x, z), Diagram::id(qubit::kQ)));
  Diagram d = seq(caps, measure);
  if (opts.corrected && (x || z)) {
    d = seq(d, par(Diagram::id(WireType{q.dualized()}), apply_variant(branch_unitary_diagram(x, z), Variant::dagger)));
  }
  return opts.normalized ? with_scalars(d, 3) : d;
}

std::vector<BranchReport> verify_protocol(const std::vector<Branch>& branches, const Model& m, double tol) {
  std::vector<BranchReport> out;
  out.reserve(branches.size());
  for (const auto& b : branches) {
    BranchReport r;
    r.label = b.label;
    r.expected = b.expected;
    try {
      r.evaluated = eval(b.diagram, m);
      r.verdict = compare_matrices(r.evaluated, b.expected, EqMode::up_to_scalar, tol);
      r.weight = std::norm(r.verdict.witness);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool weights_sum_to_one(const std::vector<BranchReport>& reports, double tol) {
  double sum = 0.0;
  for (const auto& r : reports) sum += r.weight;
  return std::abs(sum - 1.0) <= tol;
}

std::vector<Branch> teleport_branches(ProtocolOptions opts) {
  std::vector<Branch> out;
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) out.push_back({bits(x, z), teleport_branch(x, z, opts), qubit::identity()});
  return out;
}

std::vector<Branch> gate_teleport_branches(const Diagram& f, const Matrix& f_matrix, ProtocolOptions opts) {
  std::vector<Branch> out;
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) out.push_back({bits(x, z), gate_teleport_branch(f, x, z, opts), f_matrix});
  return out;
}

std::vector<Branch> entanglement_swap_branches(ProtocolOptions opts) {
  std::vector<Branch> out;
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      Matrix expected = opts.corrected ? qubit::bell_vector(0, 0) : qubit::bell_vector(x, z);
      out.push_back({bits(x, z), entanglement_swap_branch(x, z, opts), expected / std::sqrt(2.0)});
    }
  }
  return out;
}

std::string format_report(const BranchReport& r) {
  std::string verdict = r.error.empty() ? (r.verdict.equal() ? "equal" : "unequal") : "error";
  std::string line = "branch " + r.label + ": " + verdict;
  if (!r.error.empty()) return line + " (" + r.error + ")";
  return line + " scalar=" + short_double(r.verdict.witness.real()) + "," + short_double(r.verdict.witness.imag()) +
         " weight=" + short_double(r.weight);
}

}  // namespace kqm
