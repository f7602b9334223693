#include "bernprim/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "numfmt.hpp"

namespace bernprim::expr {

namespace {

constexpr int kMaxNesting = 256;

constexpr std::array<std::pair<Builtin, std::string_view>, 8> kBuiltins{{
    {Builtin::Sin, "sin"},
    {Builtin::Cos, "cos"},
    {Builtin::Exp, "exp"},
    {Builtin::Log, "log"},
    {Builtin::Sqrt, "sqrt"},
    {Builtin::Abs, "abs"},
    {Builtin::Min, "min"},
    {Builtin::Max, "max"},
}};

constexpr std::string_view kOperand = "number, 'x', function, '(' or '-'";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

NodePtr make(auto kind) { return std::make_shared<const Node>(Node{std::move(kind)}); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprAst run() {
    NodePtr root = expr();
    skip_space();
    if (pos_ < text_.size()) fail("operator or end of input");
    return ExprAst(std::move(root));
  }

 private:
  NodePtr expr() {
    Guard g(*this);
    NodePtr lhs = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      NodePtr rhs = term();
      lhs = make(Binary{c == '+' ? BinaryOp::Add : BinaryOp::Sub, std::move(lhs), std::move(rhs)});
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      NodePtr rhs = unary();
      lhs = make(Binary{c == '*' ? BinaryOp::Mul : BinaryOp::Div, std::move(lhs), std::move(rhs)});
    }
  }

  NodePtr unary() {
    Guard g(*this);
    if (peek() == '-') {
      ++pos_;
      return make(Negate{unary()});
    }
    return factor();
  }

  NodePtr factor() {
    NodePtr b = base();
    if (peek() == '^') {
      ++pos_;
      NodePtr exponent = unary();
      return make(Binary{BinaryOp::Pow, std::move(b), std::move(exponent)});
    }
    return b;
  }

  NodePtr base() {
    const char c = peek();
    if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) return number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')', "operator or ')'");
      return inner;
    }
    if (is_ident_start(c)) return identifier();
    fail(kOperand);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && is_digit(text_[p])) {
        while (p < text_.size() && is_digit(text_[p])) ++p;
        pos_ = p;
      }
    }
    const std::string_view lexeme = text_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    if (res.ec != std::errc() || res.ptr != lexeme.data() + lexeme.size() || !std::isfinite(value))
      throw ParseError(start + 1, "expected finite number, found number '" + std::string(lexeme) + "'");
    return make(Constant{value});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view ident = text_.substr(start, pos_ - start);
    if (ident == "x") return make(Variable{});
    const auto fn = builtin_from_name(ident);
    if (!fn) throw ParseError(start + 1, "unknown identifier '" + std::string(ident) + "'");
    expect('(', "'('");
    std::vector<NodePtr> args;
    args.push_back(expr());
    if (arity(*fn) == 2) {
      expect(',', "operator or ','");
      args.push_back(expr());
    }
    expect(')', "operator or ')'");
    return make(Call{*fn, std::move(args)});
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c, std::string_view what) {
    if (peek() != c) fail(what);
    ++pos_;
  }

  std::string describe_current() const {
    if (pos_ >= text_.size()) return "end of input";
    const char c = text_[pos_];
    if (is_digit(c) || c == '.') {
      std::size_t end = pos_;
      while (end < text_.size() && (is_digit(text_[end]) || text_[end] == '.')) ++end;
      return "number '" + std::string(text_.substr(pos_, end - pos_)) + "'";
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && is_ident_char(text_[end])) ++end;
      return "identifier '" + std::string(text_.substr(pos_, end - pos_)) + "'";
    }
    const auto byte = static_cast<unsigned char>(c);
    if (byte < 0x20 || byte >= 0x7f) {
      static constexpr char kHex[] = "0123456789abcdef";
      return std::string("byte 0x") + kHex[byte >> 4] + kHex[byte & 0xf];
    }
    return std::string("'") + c + "'";
  }

  [[noreturn]] void fail(std::string_view expected) {
    skip_space();
    throw ParseError(pos_ + 1, "expected " + std::string(expected) + ", found " + describe_current());
  }

  struct Guard {
    explicit Guard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) {
        parser.skip_space();
        throw ParseError(parser.pos_ + 1, "expression nested too deeply");
      }
    }
    ~Guard() { --parser.depth_; }
    Parser& parser;
  };

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// Binding strength used by the printer.
int level(const Node& n) {
  return std::visit(Overloaded{
                        [](const Binary& b) {
                          switch (b.op) {
                            case BinaryOp::Add:
                            case BinaryOp::Sub:
                              return 1;
                            case BinaryOp::Mul:
                            case BinaryOp::Div:
                              return 2;
                            case BinaryOp::Pow:
                              return 4;
                          }
                          return 0;
                        },
                        [](const Negate&) { return 3; },
                        [](const auto&) { return 5; },
                    },
                    n.kind);
}

void print(const Node& n, std::string& out);

void print_child(const Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  std::visit(Overloaded{
                 [&](const Constant& c) { out += detail::format_double(c.value); },
                 [&](const Variable&) { out += 'x'; },
                 [&](const Negate& u) {
                   out += '-';
                   print_child(*u.operand, level(*u.operand) < 3, out);
                 },
                 [&](const Binary& b) {
                   const int p = level(n);
                   if (b.op == BinaryOp::Pow) {
                     print_child(*b.lhs, level(*b.lhs) <= p, out);
                     out += '^';
                     print_child(*b.rhs, level(*b.rhs) < 3, out);
                     return;
                   }
                   print_child(*b.lhs, level(*b.lhs) < p, out);
                   switch (b.op) {
                     case BinaryOp::Add:
                       out += " + ";
                       break;
                     case BinaryOp::Sub:
                       out += " - ";
                       break;
                     case BinaryOp::Mul:
                       out += '*';
                       break;
                     default:
                       out += '/';
                       break;
                   }
                   print_child(*b.rhs, level(*b.rhs) <= p, out);
                 },
                 [&](const Call& c) {
                   out += name(c.fn);
                   out += '(';
                   for (std::size_t i = 0; i < c.args.size(); ++i) {
                     if (i) out += ", ";
                     print(*c.args[i], out);
                   }
                   out += ')';
                 },
             },
             n.kind);
}

std::string render(const Node& n) {
  std::string s;
  print(n, s);
  return s;
}

[[noreturn]] void eval_fail(const Node& n, std::string_view reason, double x) {
  throw EvalError("evaluation error: " + std::string(reason) + " in '" + render(n) + "' at x=" +
                      detail::format_double(x),
                  x);
}

double eval(const Node& n, double x) {
  const double v = std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [x](const Variable&) { return x; },
          [x](const Negate& u) { return -eval(*u.operand, x); },
          [&](const Binary& b) {
            const double l = eval(*b.lhs, x);
            const double r = eval(*b.rhs, x);
            switch (b.op) {
              case BinaryOp::Add:
                return l + r;
              case BinaryOp::Sub:
                return l - r;
              case BinaryOp::Mul:
                return l * r;
              case BinaryOp::Div:
                if (r == 0.0) eval_fail(n, "division by zero", x);
                return l / r;
              case BinaryOp::Pow:
                return std::pow(l, r);
            }
            return 0.0;
          },
          [&](const Call& c) {
            const double a = eval(*c.args[0], x);
            switch (c.fn) {
              case Builtin::Sin:
                return std::sin(a);
              case Builtin::Cos:
                return std::cos(a);
              case Builtin::Exp:
                return std::exp(a);
              case Builtin::Log:
                if (!(a > 0.0)) eval_fail(n, "log of nonpositive argument", x);
                return std::log(a);
              case Builtin::Sqrt:
                if (a < 0.0) eval_fail(n, "sqrt of negative argument", x);
                return std::sqrt(a);
              case Builtin::Abs:
                return std::abs(a);
              case Builtin::Min:
                return std::min(a, eval(*c.args[1], x));
              case Builtin::Max:
                return std::max(a, eval(*c.args[1], x));
            }
            return 0.0;
          },
      },
      n.kind);
  if (!std::isfinite(v)) eval_fail(n, "non-finite result", x);
  return v;
}

bool same(const Node& a, const Node& b) {
  if (a.kind.index() != b.kind.index()) return false;
  return std::visit(Overloaded{
                        [&](const Constant& c) { return c.value == std::get<Constant>(b.kind).value; },
                        [](const Variable&) { return true; },
                        [&](const Negate& u) { return same(*u.operand, *std::get<Negate>(b.kind).operand); },
                        [&](const Binary& l) {
                          const auto& r = std::get<Binary>(b.kind);
                          return l.op == r.op && same(*l.lhs, *r.lhs) && same(*l.rhs, *r.rhs);
                        },
                        [&](const Call& l) {
                          const auto& r = std::get<Call>(b.kind);
                          if (l.fn != r.fn || l.args.size() != r.args.size()) return false;
                          for (std::size_t i = 0; i < l.args.size(); ++i)
                            if (!same(*l.args[i], *r.args[i])) return false;
                          return true;
                        },
                    },
                    a.kind);
}

void validate(const Node& n) {
  std::visit(Overloaded{
                 [](const Constant& c) {
                   if (!std::isfinite(c.value)) throw std::invalid_argument("ExprAst: non-finite constant");
                 },
                 [](const Variable&) {},
                 [](const Negate& u) {
                   if (!u.operand) throw std::invalid_argument("ExprAst: missing operand");
                   validate(*u.operand);
                 },
                 [](const Binary& b) {
                   if (!b.lhs || !b.rhs) throw std::invalid_argument("ExprAst: missing operand");
                   validate(*b.lhs);
                   validate(*b.rhs);
                 },
                 [](const Call& c) {
                   if (static_cast<int>(c.args.size()) != arity(c.fn))
                     throw std::invalid_argument("ExprAst: wrong argument count for " + std::string(name(c.fn)));
                   for (const auto& a : c.args) {
                     if (!a) throw std::invalid_argument("ExprAst: missing argument");
                     validate(*a);
                   }
                 },
             },
             n.kind);
}

}  // namespace

ParseError::ParseError(std::size_t byte, const std::string& detail)
    : std::runtime_error("parse error at byte " + std::to_string(byte) + ": " + detail), byte_(byte) {}

int arity(Builtin fn) { return fn == Builtin::Min || fn == Builtin::Max ? 2 : 1; }

std::string_view name(Builtin fn) {
  for (const auto& [b, n] : kBuiltins)
    if (b == fn) return n;
  return "?";
}

std::optional<Builtin> builtin_from_name(std::string_view ident) {
  for (const auto& [b, n] : kBuiltins)
    if (n == ident) return b;
  return std::nullopt;
}

ExprAst::ExprAst(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("ExprAst: null root");
  validate(*root_);
}

double ExprAst::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("eval_ast: x=" + detail::format_double(x) + " outside [0,1]");
  return eval(*root_, x);
}

std::string ExprAst::to_string() const { return render(*root_); }

bool operator==(const ExprAst& a, const ExprAst& b) { return same(*a.root_, *b.root_); }

ExprAst parse(std::string_view text) { return Parser(text).run(); }

double eval_ast(const ExprAst& ast, double x) { return ast(x); }

RealFunction to_real_function(const ExprAst& ast, std::optional<double> lipschitz,
                              std::optional<double> sup_bound, int probe_points) {
  return RealFunction([ast](double x) { return ast(x); }, sup_bound, lipschitz, probe_points);
}

}  // namespace bernprim::expr
