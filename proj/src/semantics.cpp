#include "kqm/semantics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "kqm/builders.hpp"

namespace kqm {

Model& Model::set_dim(const std::string& base, std::size_t d) {
  if (d == 0) throw EvalError("dimension of " + base + " must be at least 1");
  dims_[base] = d;
  return *this;
}

Model& Model::set_gen(const std::string& name, Matrix m) {
  gens_[name] = std::move(m);
  return *this;
}

std::size_t Model::dim(const std::string& base) const {
  auto it = dims_.find(base);
  if (it == dims_.end()) throw EvalError("no dimension assigned to base type " + base);
  return it->second;
}

std::vector<std::size_t> Model::dims(const WireType& t) const {
  std::vector<std::size_t> out;
  out.reserve(t.size());
  for (const auto& w : t.wires()) out.push_back(dim(w.base));
  return out;
}

const Matrix& Model::gen(const std::string& name) const {
  auto it = gens_.find(name);
  if (it == gens_.end()) throw EvalError("generator " + name + " has no matrix in the model");
  return it->second;
}

Matrix variant_matrix(const Matrix& plain, Variant v, const WireType& dom, const WireType& cod, const Model& m) {
  if (v == Variant::plain) return plain;
  if (v == Variant::dagger) return plain.adjoint();
  const auto rev_dom = reversal_map(m.dims(dom));
  const auto rev_cod = reversal_map(m.dims(cod));
  if (v == Variant::conjugate) {
    Matrix out(plain.rows(), plain.cols());
    for (Eigen::Index r = 0; r < plain.rows(); ++r)
      for (Eigen::Index c = 0; c < plain.cols(); ++c) out(rev_cod[r], rev_dom[c]) = std::conj(plain(r, c));
    return out;
  }
  Matrix out(plain.cols(), plain.rows());
  for (Eigen::Index r = 0; r < plain.rows(); ++r)
    for (Eigen::Index c = 0; c < plain.cols(); ++c) out(rev_dom[c], rev_cod[r]) = plain(r, c);
  return out;
}

Matrix eval(const Diagram& d, const Model& m) {
  switch (d.kind()) {
    case Kind::gen: {
      const GeneratorSig& sig = d.sig();
      const Matrix& plain = m.gen(sig.name);
      const auto rows = static_cast<Eigen::Index>(m.dim(sig.cod_plain));
      const auto cols = static_cast<Eigen::Index>(m.dim(sig.dom_plain));
      if (plain.rows() != rows || plain.cols() != cols) {
        throw EvalError("generator " + sig.name + " : " + sig.dom_plain.str() + " -> " + sig.cod_plain.str() +
                        " needs a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                        std::to_string(plain.rows()) + "x" + std::to_string(plain.cols()));
      }
      return variant_matrix(plain, sig.variant, sig.dom_plain, sig.cod_plain, m);
    }
    case Kind::id: {
      const auto n = static_cast<Eigen::Index>(m.dim(d.type()));
      return Matrix::Identity(n, n);
    }
    case Kind::swap:
      return swap_matrix(static_cast<Eigen::Index>(m.dim(d.left())), static_cast<Eigen::Index>(m.dim(d.right())));
    case Kind::cap: return cap_vector(static_cast<Eigen::Index>(m.dim(d.wire().base)));
    case Kind::cup: return cap_vector(static_cast<Eigen::Index>(m.dim(d.wire().base))).adjoint();
    case Kind::scalar: {
      Matrix out(1, 1);
      out(0, 0) = d.value();
      return out;
    }
    case Kind::seq: return eval(d.second(), m) * eval(d.first(), m);
    case Kind::par: return kron(eval(d.first(), m), eval(d.second(), m));
    case Kind::variant: {
      const Diagram& body = d.body();
      return variant_matrix(eval(body, m), d.variant(), body.dom(), body.cod(), m);
    }
  }
  throw std::logic_error("eval: unknown node");
}

Verdict compare_matrices(const Matrix& lhs, const Matrix& rhs, EqMode mode, double tol) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw TypeError("shape mismatch: " + std::to_string(lhs.rows()) + "x" + std::to_string(lhs.cols()) + " vs " +
                    std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
  }
  Verdict v;
  if (mode == EqMode::exact) {
    v.max_abs_diff = max_abs_diff(lhs, rhs);
    v.kind = v.max_abs_diff <= tol ? Verdict::Kind::equal : Verdict::Kind::unequal;
    return v;
  }
  // Witness from the largest-magnitude entry of the right-hand side.
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  const double peak = rhs.size() ? rhs.cwiseAbs().maxCoeff(&r, &c) : 0.0;
  Complex witness{1.0, 0.0};
  if (peak > 0.0) witness = lhs(r, c) / rhs(r, c);
  const Matrix scaled = witness * rhs;
  v.witness = witness;
  v.max_abs_diff = max_abs_diff(lhs, scaled);
  bool ok = v.max_abs_diff <= tol * (1.0 + std::abs(witness));
  if (mode == EqMode::up_to_phase) ok = ok && std::abs(std::abs(witness) - 1.0) <= tol;
  v.kind = ok ? Verdict::Kind::equal_with_witness : Verdict::Kind::unequal;
  return v;
}

Verdict check_eq(const Diagram& lhs, const Diagram& rhs, const Model& m, EqMode mode, double tol) {
  return compare_matrices(eval(lhs, m), eval(rhs, m), mode, tol);
}

Complex hs_inner(const Diagram& f, const Diagram& g, const Model& m) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) {
    throw TypeError("hs_inner needs equal types: " + f.dom().str() + " -> " + f.cod().str() + " vs " +
                    g.dom().str() + " -> " + g.cod().str());
  }
  const Diagram loop = trace_shape(seq(g, apply_variant(f, Variant::dagger)), TraceMode::full);
  return eval(loop, m)(0, 0);
}

BornReport born_check(const Diagram& phi, const Diagram& projector, const Model& m, double tol) {
  if (!phi.dom().is_unit()) throw TypeError("born_check needs a state, got domain " + phi.dom().str());
  if (projector.dom() != phi.cod() || projector.cod() != phi.cod()) {
    throw TypeError("born_check: projector " + projector.dom().str() + " -> " + projector.cod().str() +
                    " does not act on " + phi.cod().str());
  }
  const Diagram phi_dagger = apply_variant(phi, Variant::dagger);
  const Diagram rho = seq(phi_dagger, phi);
  BornReport report;
  report.trace_form = eval(trace_shape(seq(projector, rho), TraceMode::full), m)(0, 0);
  report.inner_form = eval(seq(seq(phi, projector), phi_dagger), m)(0, 0);
  report.equal = std::abs(report.trace_form - report.inner_form) <= tol;
  return report;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string matrix_to_text(const Matrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(m(r, c).real()) << ' ' << format_double(m(r, c).imag());
    }
    out << '\n';
  }
  return out.str();
}

Matrix matrix_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) throw EvalError("matrix text: bad header");
  Matrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re = 0;
      double im = 0;
      if (!(in >> re >> im)) throw EvalError("matrix text: expected " + std::to_string(rows * cols) + " entries");
      out(r, c) = Complex(re, im);
    }
  }
  return out;
}

}  // namespace kqm
