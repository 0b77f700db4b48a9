#ifndef QHL_LANG_AST_HPP
#define QHL_LANG_AST_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace qhl::lang {

struct SourcePos {
  std::size_t line = 0;
  std::size_t col = 0;
};

/// Owning, deep-copying pointer for recursive AST nodes.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& o) : ptr_(std::make_unique<T>(*o.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) ptr_ = std::make_unique<T>(*o.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

enum class VarKind { Qubit, Int };

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Qubit;
  std::size_t dim = 2;  // 2 for qubits, d for int[d]
  SourcePos pos;

  friend bool operator==(const VarDecl& a, const VarDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.dim == b.dim;
  }
};

struct Stmt;

struct Skip {
  friend bool operator==(const Skip&, const Skip&) = default;
};

/// q := |0>
struct Init {
  std::string var;
  friend bool operator==(const Init&, const Init&) = default;
};

/// q1, ..., qk := U[q1, ..., qk]
struct Unitary {
  std::string op;
  std::vector<std::string> vars;
  friend bool operator==(const Unitary&, const Unitary&) = default;
};

struct Seq {
  std::vector<Stmt> stmts;
  friend bool operator==(const Seq&, const Seq&);
};

/// measure M[q...] { 0 -> {S_0} 1 -> {S_1} ... }; branch k uses symbol M_k.
struct Measure {
  std::string family;
  std::vector<std::string> vars;
  std::vector<Stmt> branches;
  friend bool operator==(const Measure&, const Measure&);
};

/// while M0, M1[q...] invariant Inv { body }; M1 continues, M0 exits.
struct While {
  std::string m0;
  std::string m1;
  std::vector<std::string> vars;
  std::string invariant;
  Box<Stmt> body;
  friend bool operator==(const While&, const While&);
};

/// while_n n M0, M1[q...] { body }: the loop unrolled n guard tests deep.
struct WhileN {
  std::size_t bound = 0;
  std::string m0;
  std::string m1;
  std::vector<std::string> vars;
  Box<Stmt> body;
  friend bool operator==(const WhileN&, const WhileN&);
};

using StmtNode = std::variant<Skip, Init, Unitary, Seq, Measure, While, WhileN>;

struct Stmt {
  StmtNode node;
  SourcePos pos;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }

  // Positions are ignored: two statements are equal when their trees are.
  friend bool operator==(const Stmt& a, const Stmt& b) { return a.node == b.node; }
};

inline bool operator==(const Seq& a, const Seq& b) { return a.stmts == b.stmts; }
inline bool operator==(const Measure& a, const Measure& b) {
  return a.family == b.family && a.vars == b.vars && a.branches == b.branches;
}
inline bool operator==(const While& a, const While& b) {
  return a.m0 == b.m0 && a.m1 == b.m1 && a.vars == b.vars && a.invariant == b.invariant && a.body == b.body;
}
inline bool operator==(const WhileN& a, const WhileN& b) {
  return a.bound == b.bound && a.m0 == b.m0 && a.m1 == b.m1 && a.vars == b.vars && a.body == b.body;
}

inline Stmt make_stmt(StmtNode node, SourcePos pos = {}) { return Stmt{std::move(node), pos}; }

/// Name of the symbol used by branch k of a measurement family.
inline std::string branch_symbol(const std::string& family, std::size_t k) {
  return family + "_" + std::to_string(k);
}

struct Program {
  std::string name;
  std::vector<VarDecl> vars;
  std::string pre;
  std::string post;
  Stmt body;

  friend bool operator==(const Program& a, const Program& b) {
    return a.name == b.name && a.vars == b.vars && a.pre == b.pre && a.post == b.post && a.body == b.body;
  }
};

/// True when an invariant-annotated While occurs anywhere in the statement.
inline bool has_annotated_loop(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, While>) {
          return true;
        } else if constexpr (std::is_same_v<T, WhileN>) {
          return has_annotated_loop(*n.body);
        } else if constexpr (std::is_same_v<T, Seq>) {
          for (const auto& c : n.stmts)
            if (has_annotated_loop(c)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, Measure>) {
          for (const auto& c : n.branches)
            if (has_annotated_loop(c)) return true;
          return false;
        } else {
          return false;
        }
      },
      s.node);
}

}  // namespace qhl::lang

#endif  // QHL_LANG_AST_HPP
