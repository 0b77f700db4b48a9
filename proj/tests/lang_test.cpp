#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qhl/lang/parser.hpp"
#include "qhl/lang/printer.hpp"
#include "qhl/lang/validate.hpp"
#include "support/programs.hpp"

namespace qhl::lang {
namespace {

using M = Matrix<Cyclotomic>;

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(QHL_CORPUS_DIR) + "/" + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ParserTest, MinimalProgram) {
  const Program p = parse_program("program t vars q:qubit; pre P; post P; body skip;");
  EXPECT_EQ(p.name, "t");
  ASSERT_EQ(p.vars.size(), 1u);
  EXPECT_EQ(p.vars[0].dim, 2u);
  EXPECT_EQ(p.pre, "P");
  EXPECT_TRUE(p.body.as<Skip>());
}

TEST(ParserTest, IntVariableAndStatements) {
  const Program p = parse_program(
      "program t vars a:qubit; b:qubit; r:int[3]; pre P; post Q; body\n"
      "  a := |0>; a, b := CNOT[a, b];\n"
      "  measure M[r] { 1 -> { skip } 0 -> { a := H[a] } 2 -> { skip } };\n"
      "  while_n 4 G_0, G_1 [a] { b := X[b] }");
  EXPECT_EQ(p.vars[2].kind, VarKind::Int);
  EXPECT_EQ(p.vars[2].dim, 3u);
  const Seq* s = p.body.as<Seq>();
  ASSERT_TRUE(s);
  ASSERT_EQ(s->stmts.size(), 4u);
  const Unitary* u = s->stmts[1].as<Unitary>();
  ASSERT_TRUE(u);
  EXPECT_EQ(u->op, "CNOT");
  EXPECT_EQ(u->vars, (std::vector<std::string>{"a", "b"}));
  const Measure* m = s->stmts[2].as<Measure>();
  ASSERT_TRUE(m);
  ASSERT_EQ(m->branches.size(), 3u);
  EXPECT_TRUE(m->branches[0].as<Unitary>());  // sorted by label
  const WhileN* w = s->stmts[3].as<WhileN>();
  ASSERT_TRUE(w);
  EXPECT_EQ(w->bound, 4u);
  EXPECT_EQ(w->m1, "G_1");
}

TEST(ParserTest, GroverSource) {
  const Program p = parse_program(slurp("grover_n4/program.qhl"));
  ASSERT_EQ(p.vars.size(), 4u);
  EXPECT_EQ(p.vars[3].dim, 2u);
  const Seq* s = p.body.as<Seq>();
  ASSERT_TRUE(s);
  ASSERT_EQ(s->stmts.size(), 10u);
  for (int k = 0; k < 4; ++k) EXPECT_TRUE(s->stmts[k].as<Init>());
  EXPECT_EQ(s->stmts[4].as<Unitary>()->op, "X");
  const While* w = s->stmts[8].as<While>();
  ASSERT_TRUE(w);
  EXPECT_EQ(w->invariant, "Q");
  EXPECT_EQ(w->vars, std::vector<std::string>{"r"});
  const Measure* m = s->stmts[9].as<Measure>();
  ASSERT_TRUE(m);
  EXPECT_EQ(m->branches.size(), 4u);
}

void expect_parse_error(const std::string& src, std::size_t line, std::size_t col) {
  try {
    parse_program(src);
    FAIL() << "accepted: " << src;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), col) << e.what();
  }
}

TEST(ParserTest, SyntaxErrors) {
  // unclosed bracket: reported at end of input
  expect_parse_error("program t vars q:qubit; pre P; post P; body q := U[q", 1, 53);
  expect_parse_error("program t vars q:qubit; pre P; post P; body\n  q := U[q;", 2, 11);
  expect_parse_error("program t vars q:qubit; q:qubit; pre P; post P; body skip", 1, 25);
  expect_parse_error("program t vars q:qubit; pre P; post P; body p := |0>", 1, 45);
  expect_parse_error("program t vars q:qubit; pre P; post P; body q := U[p]", 1, 52);
  expect_parse_error("program t vars q:int[1]; pre P; post P; body skip", 1, 22);
  expect_parse_error("program t vars q:qubit; pre P; post P; body measure M[q] { 0 -> {skip} 0 -> {skip} }", 1, 72);
  expect_parse_error("program t vars q:qubit; pre P; post P; body q := $", 1, 50);
}

TEST(ParserTest, RegisterListsMustAgree) {
  EXPECT_THROW(parse_program("program t vars a:qubit; b:qubit; pre P; post P; body a, b := U[b, a]"), ParseError);
  EXPECT_THROW(parse_program("program t vars a:qubit; pre P; post P; body a, a := U[a, a]"), ParseError);
}

TEST(PrinterTest, RoundTripOnRandomPrograms) {
  testing::Rng rng(7);
  testing::ProgramOptions opt;
  opt.bounded_loops = true;
  opt.annotated_loops = true;
  for (int k = 0; k < 300; ++k) {
    const Program p = testing::random_case(rng, opt).program;
    const std::string src = to_source(p);
    const Program back = parse_program(src);
    ASSERT_EQ(back, p) << src;
    EXPECT_EQ(to_source(back), src);
  }
}

TEST(PrinterTest, RoundTripOnCorpus) {
  for (const char* f : {"grover_n4/program.qhl", "qpe_n2/program.qhl", "rules/while.qhl", "rules/while_n.qhl"}) {
    const Program p = parse_program(slurp(f));
    EXPECT_EQ(parse_program(to_source(p)), p) << f;
  }
}

TEST(MatrixFileTest, Examples) {
  const SymbolTable t = parse_matrix_file(
      "H = [[1/sqrt2, 1/sqrt2],[1/sqrt2, -1/sqrt2]]\n"
      "I2 = [[1,0],[0,1]]\n"
      "T = [[1,0],[0,omega]]\n"
      "E = [[(1 + i)/2, -3/4 * sqrt2], [2 - -1, +i*i]]\n"
      "F = [[0.5, 0], [0, 1]]\n");
  const Cyclotomic z = Cyclotomic::zeta();
  const Cyclotomic half_sqrt2 = Cyclotomic(Rational(1, 2)) * (z - z * z * z);
  const M h = *t.find("H")->exact();
  EXPECT_EQ(h(0, 0), half_sqrt2);
  EXPECT_EQ(h(1, 1), -half_sqrt2);
  EXPECT_EQ(*t.find("I2")->exact(), M::identity(2));
  EXPECT_EQ((*t.find("T")->exact())(1, 1), Cyclotomic::zeta());
  const M e = *t.find("E")->exact();
  EXPECT_EQ(e(0, 0), Cyclotomic(Rational(1, 2)) * (Cyclotomic(1) + Cyclotomic::imag_unit()));
  EXPECT_EQ(e(1, 0), Cyclotomic(3));
  EXPECT_EQ(e(1, 1), Cyclotomic(-1));
  EXPECT_EQ(t.find("F")->backend(), Backend::Float);
  EXPECT_FALSE(t.all_exact());
}

TEST(MatrixFileTest, Errors) {
  EXPECT_THROW(parse_matrix_file("A = [[1, 0], [0]]"), ParseError);
  EXPECT_THROW(parse_matrix_file("A = [[1, 0]]"), ParseError);
  EXPECT_THROW(parse_matrix_file("A = [[1]]\nA = [[2]]"), ParseError);
  EXPECT_THROW(parse_matrix_file("A = [[1/0]]"), ParseError);
  EXPECT_THROW(parse_matrix_file("A = [[pi]]"), ParseError);
  try {
    parse_matrix_file("A = [[1]]\nB = [[1, 2],\n [3]]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

SymbolTable qubit_table(const std::string& extra) {
  return parse_matrix_file(
      "H = [[1/sqrt2, 1/sqrt2],[1/sqrt2, -1/sqrt2]]\n"
      "P = [[1, 0], [0, 0]]\n"
      "M_0 = [[1, 0], [0, 0]]\nM_1 = [[0, 0], [0, 1]]\n" +
      extra);
}

ValidationErrorKind validation_kind(const std::string& src, const SymbolTable& t) {
  try {
    validate<Cyclotomic>(parse_program(src), t);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "validated: " << src;
  return ValidationErrorKind::MissingSymbol;
}

TEST(ValidateTest, AcceptsCaseStudies) {
  EXPECT_NO_THROW(validate<Cyclotomic>(parse_program(slurp("grover_n4/program.qhl")),
                                       parse_matrix_file(slurp("grover_n4/matrices.txt"))));
  for (const char* phi : {"00", "01", "10", "11"})
    EXPECT_NO_THROW(validate<Cyclotomic>(parse_program(slurp("qpe_n2/program.qhl")),
                                         parse_matrix_file(slurp(std::string("qpe_n2/phi_") + phi + ".txt"))));
}

TEST(ValidateTest, NamedFailures) {
  const std::string head = "program t vars q:qubit; pre P; post P; body ";
  EXPECT_EQ(validation_kind(head + "q := U[q]", qubit_table("U = [[1, 1], [0, 1]]")),
            ValidationErrorKind::NotUnitary);
  EXPECT_EQ(validation_kind(head + "measure K[q] { 0 -> {skip} 1 -> {skip} }",
                            qubit_table("K_0 = [[1,0],[0,1]]\nK_1 = [[1,0],[0,1]]")),
            ValidationErrorKind::IncompleteMeasurement);
  EXPECT_EQ(validation_kind(head + "while K_0, K_1 [q] invariant P { skip }",
                            qubit_table("K_0 = [[1,0],[0,0]]\nK_1 = [[1,0],[0,0]]")),
            ValidationErrorKind::IncompleteLoopMeasurement);
  EXPECT_EQ(validation_kind("program t vars q:qubit; pre B; post P; body skip", qubit_table("B = [[2,0],[0,0]]")),
            ValidationErrorKind::NotPredicate);
  EXPECT_EQ(validation_kind(head + "q := W[q]", qubit_table("")), ValidationErrorKind::MissingSymbol);
  EXPECT_EQ(validation_kind(head + "q := U[q]", qubit_table("U = [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]")),
            ValidationErrorKind::DimensionMismatch);
  EXPECT_EQ(validation_kind(head + "q := U[q]", qubit_table("U = [[1.0, 0], [0, 1]]")),
            ValidationErrorKind::BackendMismatch);
  EXPECT_EQ(validation_kind(head + "while M_0, M_1 [q] invariant B { skip }", qubit_table("B = [[1,1],[1,1]]")),
            ValidationErrorKind::NotPredicate);
}

TEST(ValidateTest, FloatBackendAcceptsFloatSymbols) {
  const auto m = validate<ComplexFloat>(parse_program("program t vars q:qubit; pre P; post P; body q := U[q]"),
                                        qubit_table("U = [[0.6, 0.8], [0.8, -0.6]]"));
  EXPECT_EQ(m.ctx.total_dim(), 2u);
}

}  // namespace
}  // namespace qhl::lang
