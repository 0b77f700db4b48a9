#ifndef QHL_LANG_PRINTER_HPP
#define QHL_LANG_PRINTER_HPP

#include <sstream>
#include <string>
#include <vector>

#include "qhl/lang/ast.hpp"

namespace qhl::lang {

namespace detail {

inline std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + xs[k];
  return out;
}

inline void print_stmt(std::ostringstream& os, const Stmt& s, int indent);

inline void print_block(std::ostringstream& os, const Stmt& s, int indent) {
  os << "{\n";
  print_stmt(os, s, indent + 2);
  os << "\n" << std::string(indent, ' ') << "}";
}

inline void print_stmt(std::ostringstream& os, const Stmt& s, int indent) {
  const std::string pad(indent, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Skip>) {
          os << pad << "skip";
        } else if constexpr (std::is_same_v<T, Init>) {
          os << pad << n.var << " := |0>";
        } else if constexpr (std::is_same_v<T, Unitary>) {
          os << pad << join(n.vars) << " := " << n.op << "[" << join(n.vars) << "]";
        } else if constexpr (std::is_same_v<T, Seq>) {
          for (std::size_t k = 0; k < n.stmts.size(); ++k) {
            if (k) os << ";\n";
            print_stmt(os, n.stmts[k], indent);
          }
        } else if constexpr (std::is_same_v<T, Measure>) {
          os << pad << "measure " << n.family << "[" << join(n.vars) << "] {\n";
          for (std::size_t k = 0; k < n.branches.size(); ++k) {
            os << pad << "  " << k << " -> ";
            print_block(os, n.branches[k], indent + 2);
            os << "\n";
          }
          os << pad << "}";
        } else if constexpr (std::is_same_v<T, While>) {
          os << pad << "while " << n.m0 << ", " << n.m1 << "[" << join(n.vars) << "] invariant " << n.invariant << " ";
          print_block(os, *n.body, indent);
        } else if constexpr (std::is_same_v<T, WhileN>) {
          os << pad << "while_n " << n.bound << " " << n.m0 << ", " << n.m1 << "[" << join(n.vars) << "] ";
          print_block(os, *n.body, indent);
        }
      },
      s.node);
}

}  // namespace detail

/// Source text that parses back to an equal AST.
///
/// A Seq nested directly inside another Seq is flattened by the parser, so
/// such trees print to a flattened (semantically equal) form.
inline std::string to_source(const Stmt& s, int indent = 0) {
  std::ostringstream os;
  detail::print_stmt(os, s, indent);
  return os.str();
}

inline std::string to_source(const Program& p) {
  std::ostringstream os;
  os << "program " << p.name << "\nvars\n";
  for (const auto& v : p.vars) {
    os << "  " << v.name << " : ";
    if (v.kind == VarKind::Qubit)
      os << "qubit";
    else
      os << "int[" << v.dim << "]";
    os << ";\n";
  }
  os << "pre " << p.pre << ";\npost " << p.post << ";\nbody\n" << to_source(p.body, 2) << "\n";
  return os.str();
}

}  // namespace qhl::lang

#endif  // QHL_LANG_PRINTER_HPP
