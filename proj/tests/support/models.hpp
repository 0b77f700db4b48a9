// Loading corpus files and building validated models in tests.
#ifndef QHL_TESTS_MODELS_HPP
#define QHL_TESTS_MODELS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "qhl/lang/parser.hpp"
#include "qhl/lang/validate.hpp"

namespace qhl::testing {

inline std::string corpus_file(const std::string& rel) {
  const std::string path = std::string(QHL_CORPUS_DIR) + "/" + rel;
  std::ifstream in(path);
  if (!in) throw Error("missing corpus file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <Scalar S = Cyclotomic>
lang::ValidatedModel<S> model_from(const std::string& program, const std::string& matrices) {
  return lang::validate<S>(lang::parse_program(program), lang::parse_matrix_file(matrices));
}

template <Scalar S = Cyclotomic>
lang::ValidatedModel<S> corpus_model(const std::string& program, const std::string& matrices) {
  return model_from<S>(corpus_file(program), corpus_file(matrices));
}

inline const char* kOneQubitMatrices =
    "H = [[1/sqrt2, 1/sqrt2],[1/sqrt2, -1/sqrt2]]\n"
    "X = [[0, 1], [1, 0]]\n"
    "P0 = [[1, 0], [0, 0]]\nP1 = [[0, 0], [0, 1]]\nI2 = [[1, 0], [0, 1]]\nZ2 = [[0, 0], [0, 0]]\n"
    "M_0 = [[1, 0], [0, 0]]\nM_1 = [[0, 0], [0, 1]]\n";

inline std::string one_qubit(const std::string& body, const std::string& pre = "I2", const std::string& post = "P0") {
  return "program t vars q : qubit; pre " + pre + "; post " + post + "; body " + body;
}

}  // namespace qhl::testing

#endif  // QHL_TESTS_MODELS_HPP
