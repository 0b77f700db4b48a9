#ifndef QHL_CONTEXT_HPP
#define QHL_CONTEXT_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qhl/error.hpp"
#include "qhl/lang/ast.hpp"
#include "qhl/matrix.hpp"

namespace qhl {

/// Variable layout of the global state space. Declaration order is tensor
/// order: the first variable owns the most significant digit of a basis
/// index, and index = sum_v digit_v * stride_v.
class VarContext {
 public:
  VarContext() = default;

  explicit VarContext(const std::vector<lang::VarDecl>& decls) {
    for (const auto& d : decls) add(d.name, d.dim);
  }

  void add(const std::string& name, std::size_t dim) {
    if (dim == 0) throw DimensionMismatch("variable '" + name + "' has dimension 0");
    if (std::find(names_.begin(), names_.end(), name) != names_.end())
      throw Error("duplicate variable '" + name + "'");
    names_.push_back(name);
    dims_.push_back(dim);
    recompute();
  }

  std::size_t size() const { return names_.size(); }
  std::size_t total_dim() const { return total_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  std::size_t stride(std::size_t v) const { return strides_[v]; }

  std::size_t index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::vector<std::size_t> indices_of(const std::vector<std::string>& names) const {
    std::vector<std::size_t> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(index_of(n));
    return out;
  }

  /// Product of the dimensions of the listed variables.
  std::size_t register_dim(const std::vector<std::size_t>& vars) const {
    std::size_t d = 1;
    for (auto v : vars) d *= dims_[v];
    return d;
  }

  std::size_t digit(std::size_t index, std::size_t v) const { return (index / strides_[v]) % dims_[v]; }

 private:
  void recompute() {
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (std::size_t v = dims_.size(); v-- > 0;) {
      strides_[v] = total_;
      total_ *= dims_[v];
    }
  }

  std::vector<std::string> names_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Embeds op, acting on the listed variables in list order, into the global
/// space with identity on every other variable. Equivalent to
/// pi^dagger (op (x) I_rest) pi for the basis permutation pi that brings the
/// listed variables to the front.
template <Scalar S>
Matrix<S> lift(const Matrix<S>& op, const std::vector<std::size_t>& vars, const VarContext& ctx) {
  for (std::size_t a = 0; a < vars.size(); ++a) {
    if (vars[a] >= ctx.size()) throw Error("variable index out of range");
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      if (vars[a] == vars[b]) throw Error("repeated variable '" + ctx.names()[vars[a]] + "' in register");
  }
  const std::size_t local_dim = ctx.register_dim(vars);
  if (op.dim() != local_dim)
    throw DimensionMismatch("operator of dimension " + std::to_string(op.dim()) + " applied to register of dimension " +
                            std::to_string(local_dim));
  const std::size_t total = ctx.total_dim();
  // local[g]: index of g in the register; rest[g]: g with the register digits cleared.
  std::vector<std::size_t> local(total), rest(total);
  for (std::size_t g = 0; g < total; ++g) {
    std::size_t l = 0, r = g;
    for (auto v : vars) {
      const std::size_t d = ctx.digit(g, v);
      l = l * ctx.dim(v) + d;
      r -= d * ctx.stride(v);
    }
    local[g] = l;
    rest[g] = r;
  }
  Matrix<S> out(total);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      if (rest[r] == rest[c]) out(r, c) = op(local[r], local[c]);
  return out;
}

template <Scalar S>
Matrix<S> lift(const Matrix<S>& op, const std::vector<std::string>& vars, const VarContext& ctx) {
  return lift(op, ctx.indices_of(vars), ctx);
}

}  // namespace qhl

#endif  // QHL_CONTEXT_HPP
