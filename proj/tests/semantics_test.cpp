#include <gtest/gtest.h>

#include "kqm/builders.hpp"
#include "kqm/protocols.hpp"
#include "kqm/semantics.hpp"
#include "random_diagrams.hpp"

using namespace kqm;

namespace {

const WireType Q = WireType::base("Q");

Model dims(std::size_t d) {
  Model m;
  m.set_dim("Q", d);
  return m;
}

}  // namespace

TEST(Eval, CapIsBellColumn) {
  Matrix expected(4, 1);
  expected << 1, 0, 0, 1;
  EXPECT_EQ(eval(Diagram::cap(Q[0]), dims(2)), expected);
  EXPECT_EQ(eval(Diagram::cup(Q[0]), dims(2)), expected.adjoint());
}

TEST(Eval, YankIsExactIdentity) {
  for (std::size_t d : {1, 2, 3, 5}) {
    const Wire w = Q[0];
    const Diagram z1 = seq(par(Diagram::id(Q), Diagram::cap(w)), par(Diagram::cup(w.dualized()), Diagram::id(Q)));
    const Diagram z2 = seq(par(Diagram::cap(w.dualized()), Diagram::id(Q)), par(Diagram::id(Q), Diagram::cup(w)));
    const auto n = static_cast<Eigen::Index>(d);
    EXPECT_EQ(eval(z1, dims(d)), Matrix::Identity(n, n));
    EXPECT_EQ(eval(z2, dims(d)), Matrix::Identity(n, n));
  }
}

TEST(Eval, SeqMultipliesInDiagramOrder) {
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(eval(seq(qubit::sx(), qubit::sz()), qubit::model()), expected);
}

TEST(Eval, SwapIsPerfectShuffle) {
  Model m;
  m.set_dim("A", 2).set_dim("B", 3);
  const Matrix s = eval(Diagram::swap(WireType::base("A"), WireType::base("B")), m);
  Vector in = Vector::Zero(6);
  in(1 * 3 + 2) = 1;  // e_1 (x) e_2
  const Vector out = s * in;
  EXPECT_EQ(out(2 * 2 + 1), Complex(1.0));
}

TEST(Eval, UnassignedGeneratorNamed) {
  try {
    (void)eval(Diagram::gen("mystery", Q, Q), dims(2));
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_NE(std::string(e.what()).find("mystery"), std::string::npos);
  }
}

TEST(Eval, WrongShapeReportsBothShapes) {
  Model m = dims(2);
  m.set_gen("f", Matrix::Identity(3, 3));
  try {
    (void)eval(Diagram::gen("f", Q, Q), m);
    FAIL();
  } catch (const EvalError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('3'), std::string::npos);
    EXPECT_NE(msg.find('2'), std::string::npos);
  }
}

TEST(Eval, Functoriality) {
  fixtures::DiagramGenerator gen(21);
  for (int i = 0; i < 50; ++i) {
    const Diagram a = gen.diagram(6);
    const Diagram b = gen.build(a.cod(), 3);
    const Diagram c = gen.build(WireType::base("A"), 2);
    EXPECT_LE(max_abs_diff(eval(seq(a, b), gen.model), Matrix(eval(b, gen.model) * eval(a, gen.model))), 1e-9);
    EXPECT_LE(max_abs_diff(eval(par(a, c), gen.model), Matrix(kron(eval(a, gen.model), eval(c, gen.model)))), 1e-9);
  }
}

TEST(Eval, ScalarMobility) {
  fixtures::DiagramGenerator gen(23);
  for (int i = 0; i < 30; ++i) {
    const Diagram d = gen.diagram(8);
    const Diagram s = Diagram::scalar(Complex{0.3, -1.2});
    const Matrix m = eval(d, gen.model) * Complex{0.3, -1.2};
    EXPECT_LE(max_abs_diff(eval(par(s, d), gen.model), m), 1e-12);
    EXPECT_LE(max_abs_diff(eval(par(d, s), gen.model), m), 1e-12);
    EXPECT_LE(max_abs_diff(eval(seq(d, pad_left(d.cod(), s)), gen.model), m), 1e-12);
  }
}

TEST(CheckEq, Modes) {
  Matrix f(2, 2);
  f << 1, Complex(0, 2), 3, 4;
  const Verdict phase = compare_matrices(Complex(0, 1) * f, f, EqMode::up_to_phase);
  ASSERT_TRUE(phase.equal());
  EXPECT_NEAR(std::abs(phase.witness - Complex(0, 1)), 0.0, 1e-12);
  EXPECT_FALSE(compare_matrices(Matrix(2.0 * f), f, EqMode::up_to_phase).equal());
  const Verdict scalar = compare_matrices(Matrix(2.0 * f), f, EqMode::up_to_scalar);
  ASSERT_TRUE(scalar.equal());
  EXPECT_NEAR(scalar.witness.real(), 2.0, 1e-12);
  EXPECT_FALSE(compare_matrices(Matrix(2.0 * f), f, EqMode::exact).equal());
  EXPECT_THROW((void)compare_matrices(f, Matrix::Identity(3, 3), EqMode::exact), TypeError);
}

TEST(HsInner, Examples) {
  const Model m = qubit::model();
  EXPECT_NEAR(std::abs(hs_inner(Diagram::id(Q), Diagram::id(Q), m) - Complex(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hs_inner(qubit::sx(), qubit::sz(), m)), 0.0, 1e-12);
}

TEST(HsInner, MatchesEntrywiseSumAndStateInnerProduct) {
  fixtures::DiagramGenerator gen(29);
  gen.model.set_dim("A", 3).set_dim("B", 2);
  const WireType a = WireType::base("A");
  const WireType b = WireType::base("B");
  for (int i = 0; i < 20; ++i) {
    const Diagram f = gen.fresh_gen(a & b, b);
    const Diagram g = gen.fresh_gen(a & b, b);
    const Matrix fm = eval(f, gen.model);
    const Matrix gm = eval(g, gen.model);
    EXPECT_NEAR(std::abs(hs_inner(f, g, gen.model) - (fm.conjugate().cwiseProduct(gm)).sum()), 0.0, 1e-9);
    const Diagram psi = gen.fresh_gen(WireType::unit(), a);
    const Diagram phi = gen.fresh_gen(WireType::unit(), a);
    const Complex ordinary = (eval(psi, gen.model).adjoint() * eval(phi, gen.model))(0, 0);
    EXPECT_NEAR(std::abs(hs_inner(psi, phi, gen.model) - ordinary), 0.0, 1e-9);
  }
}

TEST(Born, BasisExamples) {
  Model m = dims(2);
  Matrix e0(2, 1), e1(2, 1);
  e0 << 1, 0;
  e1 << 0, 1;
  m.set_gen("e0", e0).set_gen("e1", e1);
  const Diagram phi = Diagram::gen("e0", WireType::unit(), Q);
  const Diagram p0 = seq(apply_variant(phi, Variant::dagger), phi);
  const Diagram psi = Diagram::gen("e1", WireType::unit(), Q);
  const Diagram p1 = seq(apply_variant(psi, Variant::dagger), psi);
  const BornReport r0 = born_check(phi, p0, m);
  EXPECT_TRUE(r0.equal);
  EXPECT_NEAR(std::abs(r0.trace_form - Complex(1.0)), 0.0, 1e-12);
  const BornReport r1 = born_check(phi, p1, m);
  EXPECT_TRUE(r1.equal);
  EXPECT_NEAR(std::abs(r1.inner_form), 0.0, 1e-12);
}

TEST(Properties, AdjointnessUnitarityPositivityCyclicity) {
  fixtures::DiagramGenerator gen(31);
  gen.model.set_dim("A", 3);
  const WireType a = WireType::base("A");
  for (int i = 0; i < 20; ++i) {
    const Diagram f = gen.fresh_gen(a, a);
    const Diagram g = gen.fresh_gen(a, a);
    const Diagram phi = gen.fresh_gen(WireType::unit(), a);
    const Diagram psi = gen.fresh_gen(WireType::unit(), a);
    const Diagram f_dag = apply_variant(f, Variant::dagger);
    EXPECT_NEAR(std::abs(hs_inner(seq(phi, f), psi, gen.model) - hs_inner(phi, seq(psi, f_dag), gen.model)), 0.0,
                1e-9);
    EXPECT_TRUE(is_positive_semidefinite(eval(seq(f_dag, f), gen.model), 1e-9));
    const Complex tr_gf = eval(trace_shape(seq(f, g), TraceMode::full), gen.model)(0, 0);
    const Complex tr_fg = eval(trace_shape(seq(g, f), TraceMode::full), gen.model)(0, 0);
    EXPECT_NEAR(std::abs(tr_gf - tr_fg), 0.0, 1e-9);
    gen.model.set_gen("u", fixtures::random_unitary(gen.rng(), 3));
    const Diagram u = Diagram::gen("u", a, a);
    EXPECT_NEAR(std::abs(hs_inner(seq(phi, u), seq(psi, u), gen.model) - hs_inner(phi, psi, gen.model)), 0.0, 1e-9);
  }
}

TEST(MatrixText, RoundTrip) {
  std::mt19937 rng(1);
  const Matrix m = fixtures::random_matrix(rng, 3, 2);
  EXPECT_EQ(matrix_from_text(matrix_to_text(m)), m);
  EXPECT_EQ(matrix_to_text(Matrix::Identity(1, 1)), "1 1\n1 0\n");
}
