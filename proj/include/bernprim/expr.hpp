#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bernprim/real_function.hpp"

namespace bernprim::expr {

/// Syntax error. The message has the stable form
/// `parse error at byte <k>: expected <set>, found <tok>`, with k counted
/// from 1.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t byte, const std::string& detail);
  std::size_t byte() const noexcept { return byte_; }

 private:
  std::size_t byte_;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Builtin { Sin, Cos, Exp, Log, Sqrt, Abs, Min, Max };

int arity(Builtin fn);
std::string_view name(Builtin fn);
std::optional<Builtin> builtin_from_name(std::string_view ident);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant {
  double value;
};
struct Variable {};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Builtin fn;
  std::vector<NodePtr> args;
};

struct Node {
  std::variant<Constant, Variable, Negate, Binary, Call> kind;
};

/// Immutable parse tree. Copies share nodes; evaluation is reentrant.
class ExprAst {
 public:
  explicit ExprAst(NodePtr root);

  const Node& root() const noexcept { return *root_; }

  /// Evaluates at x in [0,1]. Throws EvalError naming the offending
  /// subexpression when any node produces a non-finite value.
  double operator()(double x) const;

  /// Minimal-parenthesis rendering that parses back to the same tree.
  std::string to_string() const;

  friend bool operator==(const ExprAst& a, const ExprAst& b);

 private:
  NodePtr root_;
};

/// Recursive-descent parser:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' unary)?          right associative
///   base   := number | 'x' | '(' expr ')' | ident '(' expr (',' expr)? ')'
ExprAst parse(std::string_view text);

double eval_ast(const ExprAst& ast, double x);

RealFunction to_real_function(const ExprAst& ast, std::optional<double> lipschitz = std::nullopt,
                              std::optional<double> sup_bound = std::nullopt,
                              int probe_points = kDefaultProbePoints);

}  // namespace bernprim::expr
