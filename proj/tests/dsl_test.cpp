#include <gtest/gtest.h>

#include "kqm/builders.hpp"
#include "kqm/dsl.hpp"
#include "kqm/protocols.hpp"
#include "kqm/rewrite.hpp"
#include "random_diagrams.hpp"

namespace kqm {
namespace {

const char* kHeader = R"(
dim Q = 2;
gen f : Q -> Q;
matrix f = [[1, 0.5i], [-i, 1-2i]];
)";

Program parse(const std::string& body) { return parse_program(std::string(kHeader) + body, "t.qdc"); }

SourceSpan error_span(const std::string& text) {
  try {
    parse_program(text, "bad.qdc");
  } catch (const DslError& e) {
    return e.span();
  }
  ADD_FAILURE() << "no DslError for:\n" << text;
  return {};
}

TEST(Dsl, ParsesIdentity) {
  const Program p = parse("let x = id[Q];");
  ASSERT_EQ(p.lets.size(), 1u);
  EXPECT_EQ(p.lookup("x"), Diagram::id(WireType::base("Q")));
}

TEST(Dsl, ParsesZigzagAndEvaluatesToIdentity) {
  const Program p = parse("let z = (id[Q] * cap[Q]) ; (cup[Q*] * id[Q]);");
  const Diagram z = p.lookup("z");
  EXPECT_EQ(z.dom(), WireType::base("Q"));
  EXPECT_EQ(z.cod(), WireType::base("Q"));
  EXPECT_TRUE(eval(z, p.model).isApprox(Matrix::Identity(2, 2)));
}

TEST(Dsl, NameMatchesBuilder) {
  const Program p = parse("let s = name(f);");
  EXPECT_EQ(p.lookup("s"), name(p.lookup("f")));
}

TEST(Dsl, MatrixLiteralEntries) {
  const Program p = parse("");
  const Matrix& m = p.model.gen("f");
  EXPECT_EQ(m(0, 0), Complex(1, 0));
  EXPECT_EQ(m(0, 1), Complex(0, 0.5));
  EXPECT_EQ(m(1, 0), Complex(0, -1));
  EXPECT_EQ(m(1, 1), Complex(1, -2));
}

TEST(Dsl, ComplexScalarLiterals) {
  const Program p = parse("let a = scalar[2.5-3i]; let b = scalar[-i]; let c = scalar[1e-3];");
  EXPECT_EQ(p.lookup("a").value(), Complex(2.5, -3));
  EXPECT_EQ(p.lookup("b").value(), Complex(0, -1));
  EXPECT_EQ(p.lookup("c").value(), Complex(1e-3, 0));
}

TEST(Dsl, TensorTypesAndSwap) {
  const Program p = parse("dim R = 3; let s = swap[Q* & R, Q];");
  const Diagram s = p.lookup("s");
  EXPECT_EQ(s.dom().str(), "Q* & R & Q");
  EXPECT_EQ(s.cod().str(), "Q & Q* & R");
}

TEST(Dsl, ChecksRecordMode) {
  const Program p = parse("check f == f exact; check f == f scalar; check f == f phase; check f == f;");
  ASSERT_EQ(p.checks.size(), 4u);
  EXPECT_EQ(p.checks[0].mode, EqMode::exact);
  EXPECT_EQ(p.checks[1].mode, EqMode::up_to_scalar);
  EXPECT_EQ(p.checks[2].mode, EqMode::up_to_phase);
  EXPECT_EQ(p.checks[3].mode, EqMode::exact);
}

TEST(Dsl, UndeclaredGeneratorSpan) {
  const SourceSpan s = error_span("dim Q = 2;\nlet x = id[Q] ; h;\n");
  EXPECT_EQ(s.file, "bad.qdc");
  EXPECT_EQ(s.line, 2);
  EXPECT_EQ(s.col_begin, 17);
  EXPECT_EQ(s.str(), "bad.qdc:2:17");
}

TEST(Dsl, RedeclarationSpan) {
  const SourceSpan s = error_span("dim Q = 2;\ngen f : Q -> Q;\ngen f : Q -> Q;\n");
  EXPECT_EQ(s.line, 3);
  EXPECT_EQ(s.col_begin, 5);
}

TEST(Dsl, LexicalErrorSpan) {
  const SourceSpan s = error_span("dim Q = 2;\nlet x = id[Q] $ id[Q];\n");
  EXPECT_EQ(s.line, 2);
  EXPECT_EQ(s.col_begin, 15);
}

TEST(Dsl, TypeErrorInCompositionHasSpan) {
  try {
    parse_program("dim Q = 2;\ndim R = 3;\nlet x = id[Q] ; id[R];\n", "bad.qdc");
    FAIL() << "expected DslError";
  } catch (const DslError& e) {
    EXPECT_EQ(e.span().line, 3);
    EXPECT_NE(e.message().find("type error"), std::string::npos);
  }
}

TEST(Dsl, CheckTypeMismatchIsError) {
  EXPECT_THROW(parse_program("dim Q = 2;\nlet a = cap[Q];\ncheck a == id[Q];\n"), DslError);
}

TEST(Dsl, UndeclaredTypeAndMissingMatrixTarget) {
  EXPECT_THROW(parse_program("let x = id[Z];"), DslError);
  EXPECT_THROW(parse_program("dim Q = 2; matrix f = [[1]];"), DslError);
  EXPECT_THROW(parse_program("dim Q = 2; let dim = id[Q];"), DslError);
}

TEST(Dsl, ParseExprAgainstEnvironment) {
  const Program p = parse("let z = (id[Q] * cap[Q]) ; (cup[Q*] * id[Q]);");
  const Diagram d = parse_expr("z ; dagger(f)", p);
  EXPECT_EQ(d, seq(p.lookup("z"), apply_variant(p.lookup("f"), Variant::dagger)));
}

TEST(Dsl, PrettyOfLeaves) {
  const Program p = parse("");
  EXPECT_EQ(pretty(apply_variant(p.lookup("f"), Variant::conjugate)), "conj(f)");
  EXPECT_EQ(pretty(Diagram::cap(Wire{"Q", true})), "cap[Q*]");
  EXPECT_EQ(format_complex(Complex(1, -2)), "1-2i");
  EXPECT_EQ(format_complex(Complex(0.5, 0)), "0.5+0i");
}

TEST(Dsl, PrettyParseRoundTripOnRandomTerms) {
  fixtures::DiagramGenerator g(4242);
  for (int i = 0; i < 150; ++i) {
    const Diagram d = g.diagram();
    const Program env = fixtures::env_for(g.model, d);
    const std::string text = pretty(d);
    const Diagram back = parse_expr(text, env);
    ASSERT_EQ(back, d) << text;
    EXPECT_EQ(pretty(back), text);
  }
}

TEST(Dsl, NormalizedTeleportBranchHasNoCapsOrCups) {
  const Normalized n = normalize(teleport_branch(1, 1, {true, true}));
  const std::string text = pretty(n.result);
  EXPECT_EQ(text.find("cap["), std::string::npos) << text;
  EXPECT_EQ(text.find("cup["), std::string::npos) << text;
}

}  // namespace
}  // namespace kqm
