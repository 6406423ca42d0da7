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


#ifndef DWQ_SYMBOL_LANG_HPP
#define DWQ_SYMBOL_LANG_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "dwq/linalg.hpp"
#include "dwq/quantization.hpp"

namespace dwq {

// Real-valued expressions H(p, q) over the lattice variables p, q and the
// dimension n.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'p' | 'q' | 'n' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func   := 'sin' | 'cos' | 'exp' | 'abs'
//
// '^' is right-associative and binds tighter than unary minus: "-p^2" is
// -(p^2) while "2^-1" is 2^(-1).

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Variable { kP, kQ, kN };
enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };
enum class Function { kSin, kCos, kExp, kAbs };

struct Literal {
  double value;
};
struct VariableRef {
  Variable var;
};
struct PiConstant {};
struct Negate {
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Call {
  Function fn;
  ExprPtr arg;
};

struct Expr {
  std::variant<Literal, VariableRef, PiConstant, Negate, Binary, Call> node;
};

/// Structural equality of two trees.
bool operator==(const Expr& a, const Expr& b);

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  /// Character offset into the source, at most its length.
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

class EvalError : public Error {
 public:
  EvalError(long long p, long long q, const std::string& message);
  long long p() const noexcept { return p_; }
  long long q() const noexcept { return q_; }

 private:
  long long p_;
  long long q_;
};

/// Throws ParseError.
ExprPtr parse_expr(std::string_view src);

/// Fully parenthesized form that parses back to an identical tree.
std::string print_expr(const Expr& e);

/// Throws EvalError on division by zero, 0 to a negative power, or any
/// non-finite intermediate.
double eval_expr(const Expr& e, long long p, long long q, long long n);

/// Real symbol with value eval_expr(e, p, q, n) at every lattice point.
Symbol symbol_from_expr(const Expr& e, std::size_t n);

}  // namespace dwq

#endif  // DWQ_SYMBOL_LANG_HPP
