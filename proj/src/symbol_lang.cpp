// Copyright 2026 The dwq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "dwq/symbol_lang.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace dwq {

namespace {

bool same(const ExprPtr& a, const ExprPtr& b) { return *a == *b; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

ExprPtr make(auto node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ < src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Binary{BinaryOp::kAdd, lhs, term()});
      } else if (accept('-')) {
        lhs = make(Binary{BinaryOp::kSub, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Binary{BinaryOp::kMul, lhs, factor()});
      } else if (accept('/')) {
        lhs = make(Binary{BinaryOp::kDiv, lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    if (accept('-')) return make(Negate{factor()});
    ExprPtr base = atom();
    if (accept('^')) return make(Binary{BinaryOp::kPow, base, factor()});
    return base;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (is_digit(c) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (is_alpha(c)) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && is_digit(src_[look])) {
        pos_ = look;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{} || end != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make(Literal{value});
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "p") return make(VariableRef{Variable::kP});
    if (name == "q") return make(VariableRef{Variable::kQ});
    if (name == "n") return make(VariableRef{Variable::kN});
    if (name == "pi") return make(PiConstant{});

    static constexpr std::array<std::pair<std::string_view, Function>, 4> kFunctions{{
        {"sin", Function::kSin}, {"cos", Function::kCos}, {"exp", Function::kExp}, {"abs", Function::kAbs}}};
    for (const auto& [fname, fn] : kFunctions) {
      if (name != fname) continue;
      if (!accept('(')) fail("expected '(' after " + std::string(name));
      ExprPtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make(Call{fn, arg});
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kPow: return "^";
  }
  return "?";
}

const char* fn_text(Function fn) {
  switch (fn) {
    case Function::kSin: return "sin";
    case Function::kCos: return "cos";
    case Function::kExp: return "exp";
    case Function::kAbs: return "abs";
  }
  return "?";
}

void print_to(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          std::array<char, 64> buf{};
          const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), node.value);
          out.append(buf.data(), res.ptr);
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          out += node.var == Variable::kP ? "p" : node.var == Variable::kQ ? "q" : "n";
        } else if constexpr (std::is_same_v<T, PiConstant>) {
          out += "pi";
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "(-";
          print_to(*node.operand, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += "(";
          print_to(*node.lhs, out);
          out += op_text(node.op);
          print_to(*node.rhs, out);
          out += ")";
        } else {
          out += fn_text(node.fn);
          out += "(";
          print_to(*node.arg, out);
          out += ")";
        }
      },
      e.node);
}

struct Evaluator {
  double p, q, n;
  long long ip, iq;

  [[noreturn]] void fail(const std::string& msg) const { throw EvalError(ip, iq, msg); }

  double checked(double v, const char* what) const {
    if (!std::isfinite(v)) fail(std::string(what) + " is not finite");
    return v;
  }

  double operator()(const Expr& e) const {
    return std::visit(
        [&](const auto& node) -> double {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Literal>) {
            return node.value;
          } else if constexpr (std::is_same_v<T, VariableRef>) {
            return node.var == Variable::kP ? p : node.var == Variable::kQ ? q : n;
          } else if constexpr (std::is_same_v<T, PiConstant>) {
            return kTwoPi / 2.0;
          } else if constexpr (std::is_same_v<T, Negate>) {
            return -(*this)(*node.operand);
          } else if constexpr (std::is_same_v<T, Binary>) {
            const double a = (*this)(*node.lhs);
            const double b = (*this)(*node.rhs);
            switch (node.op) {
              case BinaryOp::kAdd: return checked(a + b, "sum");
              case BinaryOp::kSub: return checked(a - b, "difference");
              case BinaryOp::kMul: return checked(a * b, "product");
              case BinaryOp::kDiv:
                if (b == 0.0) fail("division by zero");
                return checked(a / b, "quotient");
              case BinaryOp::kPow:
                if (a == 0.0 && b < 0.0) fail("zero raised to a negative power");
                return checked(std::pow(a, b), "power");
            }
            return 0.0;
          } else {
            const double x = (*this)(*node.arg);
            switch (node.fn) {
              case Function::kSin: return std::sin(x);
              case Function::kCos: return std::cos(x);
              case Function::kExp: return checked(std::exp(x), "exp");
              case Function::kAbs: return std::abs(x);
            }
            return 0.0;
          }
        },
        e.node);
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Literal>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          return lhs.var == rhs.var;
        } else if constexpr (std::is_same_v<T, PiConstant>) {
          return true;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return same(lhs.operand, rhs.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return lhs.op == rhs.op && same(lhs.lhs, rhs.lhs) && same(lhs.rhs, rhs.rhs);
        } else {
          return lhs.fn == rhs.fn && same(lhs.arg, rhs.arg);
        }
      },
      a.node);
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("parse error at offset " + std::to_string(position) + ": " + message),
      position_(position),
      message_(message) {}

namespace {
std::string eval_message(long long p, long long q, const std::string& message) {
  std::ostringstream os;
  os << "evaluation error at (p=" << p << ", q=" << q << "): " << message;
  return os.str();
}
}  // namespace

EvalError::EvalError(long long p, long long q, const std::string& message)
    : Error(eval_message(p, q, message)), p_(p), q_(q) {}

ExprPtr parse_expr(std::string_view src) { return Parser(src).parse(); }

std::string print_expr(const Expr& e) {
  std::string out;
  print_to(e, out);
  return out;
}

double eval_expr(const Expr& e, long long p, long long q, long long n) {
  if (n < 1) throw Error("eval_expr: n must be >= 1");
  if (p < 0 || p >= n || q < 0 || q >= n) throw EvalError(p, q, "lattice point outside [0, n)");
  const Evaluator ev{static_cast<double>(p), static_cast<double>(q), static_cast<double>(n), p, q};
  return ev.checked(ev(e), "result");
}

Symbol symbol_from_expr(const Expr& e, std::size_t n) {
  const auto nn = static_cast<long long>(n);
  return Symbol::generate(n, [&](std::size_t p, std::size_t q) {
    return Complex{eval_expr(e, static_cast<long long>(p), static_cast<long long>(q), nn), 0.0};
  });
}

}  // namespace dwq
