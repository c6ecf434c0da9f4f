#include <gtest/gtest.h>

#include "kqm/builders.hpp"
#include "kqm/protocols.hpp"
#include "kqm/semantics.hpp"
#include "random_diagrams.hpp"

using namespace kqm;

namespace {

const WireType Q = WireType::base("Q");

Model qubits() { return qubit::model(); }

}  // namespace

TEST(Name, IdentityIsCap) {
  EXPECT_EQ(name(Diagram::id(Q)), Diagram::cap(Q[0]));
  EXPECT_EQ(coname(Diagram::id(Q)).kind(), Kind::cup);
}

TEST(Name, SigmaXState) {
  const Matrix v = eval(name(qubit::sx()), qubits());
  Matrix expected(4, 1);
  expected << 0, 1, 1, 0;
  EXPECT_EQ(v, expected);
  EXPECT_EQ(name(qubit::sx()).cod(), Q.dual() & Q);
}

TEST(Name, MultiWireIsTypeError) {
  EXPECT_THROW((void)name(qubit::cnot_gen()), TypeError);
}

TEST(Name, UnnameRoundTrip) {
  fixtures::DiagramGenerator gen(3);
  gen.model.set_dim("A", 2).set_dim("B", 3);
  const WireType a = WireType::base("A");
  const WireType b = WireType::base("B");
  for (int i = 0; i < 20; ++i) {
    const Diagram f = gen.fresh_gen(a, b);
    const Diagram back = unname(name(f));
    EXPECT_EQ(back.dom(), a);
    EXPECT_EQ(back.cod(), b);
    EXPECT_LE(max_abs_diff(eval(back, gen.model), eval(f, gen.model)), 1e-12);
  }
}

TEST(Projector, IdentityIsBellProjector) {
  const Matrix p = eval(projector_of(Diagram::id(Q), true), qubits());
  Matrix phi(4, 1);
  phi << 1, 0, 0, 1;
  EXPECT_EQ(p, phi * phi.adjoint());
}

TEST(Projector, SquareIsTwiceItself) {
  const Diagram p = projector_of(qubit::h(), true);
  const Matrix pm = eval(p, qubits());
  EXPECT_LE(max_abs_diff(Matrix(eval(seq(p, p), qubits())), Matrix(2.0 * pm)), 1e-12);
}

TEST(Projector, UncorrectedShape) {
  const Diagram p = projector_of(qubit::sx(), false);
  EXPECT_EQ(p.dom(), Q & Q.dual());
  EXPECT_EQ(p.cod(), Q.dual() & Q);
}

TEST(Projector, NormalizationOfUnitaryName) {
  fixtures::DiagramGenerator gen(5);
  for (std::size_t d = 1; d <= 4; ++d) {
    gen.model.set_dim("A", d);
    const WireType a = WireType::base("A");
    Diagram f = Diagram::gen("u", a, a);
    gen.model.set_gen("u", fixtures::random_unitary(gen.rng(), static_cast<Eigen::Index>(d)));
    const Complex norm = eval(seq(name(f), apply_variant(name(f), Variant::dagger)), gen.model)(0, 0);
    EXPECT_NEAR(norm.real(), static_cast<double>(d), 1e-12);
    const Matrix p = eval(projector_of(f, true), gen.model) / static_cast<double>(d);
    EXPECT_LE(max_abs_diff(Matrix(p * p), p), 1e-12);
  }
}

TEST(Trace, FullTraces) {
  EXPECT_EQ(eval(trace_shape(Diagram::id(Q), TraceMode::full), qubits())(0, 0), Complex(2.0));
  EXPECT_EQ(eval(trace_shape(qubit::sz(), TraceMode::full), qubits())(0, 0), Complex(0.0));
}

TEST(Trace, PartialOverTensor) {
  fixtures::DiagramGenerator gen(9);
  gen.model.set_dim("A", 2).set_dim("B", 2);
  const WireType a = WireType::base("A");
  for (int i = 0; i < 20; ++i) {
    const Diagram f = gen.fresh_gen(a, a);
    const Diagram g = gen.fresh_gen(a, a);
    const Matrix lhs = eval(trace_shape(par(f, g), TraceMode::partial, 1), gen.model);
    const Matrix rhs = eval(f, gen.model) * eval(g, gen.model).trace();
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-9);
  }
}

TEST(Trace, MismatchedSelectionIsTypeError) {
  const Diagram f = Diagram::gen("f", Q, Q.dual());
  EXPECT_THROW((void)trace_shape(f, TraceMode::partial, 1), TypeError);
  EXPECT_THROW((void)trace_shape(f, TraceMode::full), TypeError);
}

// Costate form: coname(f) across name(g) is g . f.
// State form: coname(g) across name(f) is (g . f)^T : C* -> A*.
TEST(Compositionality, LemmasAgainstContraction) {
  fixtures::DiagramGenerator gen(13);
  for (int i = 0; i < 20; ++i) {
    gen.model.set_dim("A", 2 + i % 2).set_dim("B", 3 - i % 2).set_dim("C", 2);
    const Diagram f = gen.fresh_gen(WireType::base("A"), WireType::base("B"));
    const Diagram g = gen.fresh_gen(WireType::base("B"), WireType::base("C"));
    const Matrix fm = eval(f, gen.model);
    const Matrix gm = eval(g, gen.model);
    Matrix composite = Matrix::Zero(gm.rows(), fm.cols());
    for (Eigen::Index c = 0; c < gm.rows(); ++c)
      for (Eigen::Index a = 0; a < fm.cols(); ++a)
        for (Eigen::Index b = 0; b < fm.rows(); ++b) composite(c, a) += gm(c, b) * fm(b, a);
    EXPECT_LE(max_abs_diff(eval(compositional_costate(f, g), gen.model), composite), 1e-9);
    const Matrix transposed = composite.transpose();
    EXPECT_LE(max_abs_diff(eval(compositional_state(f, g), gen.model), transposed), 1e-9);
  }
}

TEST(Sliding, BoxMovesAcrossCap) {
  fixtures::DiagramGenerator gen(17);
  gen.model.set_dim("A", 2).set_dim("B", 3);
  const WireType a = WireType::base("A");
  const WireType b = WireType::base("B");
  const Diagram f = gen.fresh_gen(a, b);
  const Diagram lhs = seq(Diagram::cap(a[0]), par(Diagram::id(a.dual()), f));
  const Diagram rhs = seq(Diagram::cap(b[0]), par(apply_variant(f, Variant::transpose), Diagram::id(b)));
  EXPECT_LE(max_abs_diff(eval(lhs, gen.model), eval(rhs, gen.model)), 1e-12);
}
