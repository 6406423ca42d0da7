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

#include <random>

#include <gtest/gtest.h>

using namespace dwq;

namespace {

constexpr double kPi = kTwoPi / 2;

double eval(const char* src, long long p, long long q, long long n) { return eval_expr(*parse_expr(src), p, q, n); }

std::size_t error_offset(const char* src) {
  try {
    parse_expr(src);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no parse error for '" << src << "'";
  return 0;
}

// Random trees for the print/parse property.
ExprPtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 5);
  auto node = [](auto v) { return std::make_shared<const Expr>(Expr{std::move(v)}); };
  switch (pick(rng)) {
    case 0: {
      std::uniform_real_distribution<double> mag(-6.0, 6.0);
      return node(Literal{std::pow(10.0, mag(rng)) * std::uniform_real_distribution<double>(0.0, 1.0)(rng)});
    }
    case 1: return node(VariableRef{static_cast<Variable>(std::uniform_int_distribution<int>(0, 2)(rng))});
    case 2: return node(PiConstant{});
    case 3: return node(Negate{random_tree(rng, depth - 1)});
    case 4: {
      const auto op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 4)(rng));
      return node(Binary{op, random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    }
    default: {
      const auto fn = static_cast<Function>(std::uniform_int_distribution<int>(0, 3)(rng));
      return node(Call{fn, random_tree(rng, depth - 1)});
    }
  }
}

}  // namespace

TEST(ParseExpr, Examples) {
  EXPECT_DOUBLE_EQ(eval("p^2 + q^2", 1, 2, 4), 5.0);
  EXPECT_NEAR(eval("2*pi/n * p * q", 1, 1, 4), kPi / 2, 1e-15);
  EXPECT_EQ(error_offset("p +"), 3u);
}

TEST(ParseExpr, ErrorOffsets) {
  EXPECT_EQ(error_offset("p + foo"), 4u);
  EXPECT_EQ(error_offset("(p + q"), 6u);
  EXPECT_EQ(error_offset("p q"), 2u);
  EXPECT_EQ(error_offset("p)"), 1u);
  EXPECT_EQ(error_offset("sin p"), 4u);
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("2 * # 3"), 4u);
}

TEST(ParseExpr, ErrorPositionWithinInput) {
  for (const char* src : {"", "(", "((p", "p^", "cos(", "1e", "-"}) {
    try {
      parse_expr(src);
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), std::string(src).size() + 1) << src;
      continue;
    }
    // "1e" is the literal 1 followed by a trailing identifier.
    ADD_FAILURE() << src;
  }
}

TEST(ParseExpr, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(eval("-p^2", 2, 0, 5), -4.0);
  EXPECT_DOUBLE_EQ(eval("(-p)^2", 2, 0, 5), 4.0);
  EXPECT_DOUBLE_EQ(eval("2^3^2", 0, 0, 1), 512.0);
  EXPECT_DOUBLE_EQ(eval("2^-1", 0, 0, 1), 0.5);
  EXPECT_DOUBLE_EQ(eval("8/2/2", 0, 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(eval("1-2-3", 0, 0, 1), -4.0);
  EXPECT_DOUBLE_EQ(eval("1+2*3", 0, 0, 1), 7.0);
  EXPECT_DOUBLE_EQ(eval("--q", 0, 3, 4), 3.0);
  EXPECT_DOUBLE_EQ(eval(" 1.5e1 +\t.5 ", 0, 0, 1), 15.5);
}

TEST(ParseExpr, Functions) {
  EXPECT_DOUBLE_EQ(eval("cos(2*pi*q/n)", 0, 0, 7), 1.0);
  EXPECT_DOUBLE_EQ(eval("abs(p - q)", 1, 3, 4), 2.0);
  EXPECT_DOUBLE_EQ(eval("exp(0)", 0, 0, 1), 1.0);
  EXPECT_NEAR(eval("sin(pi/2)", 0, 0, 1), 1.0, 1e-16);
}

TEST(EvalExpr, Errors) {
  try {
    eval("q/(p-1)", 1, 3, 4);
    FAIL() << "expected EvalError";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.p(), 1);
    EXPECT_EQ(e.q(), 3);
    EXPECT_NE(std::string(e.what()).find("(p=1, q=3)"), std::string::npos);
  }
  EXPECT_THROW(eval("0^-1", 0, 0, 1), EvalError);
  EXPECT_THROW(eval("(0-2)^0.5", 0, 0, 1), EvalError);
  EXPECT_THROW(eval("exp(1000)", 0, 0, 1), EvalError);
  EXPECT_THROW(eval("p", 4, 0, 4), EvalError);
  EXPECT_THROW(eval("p", 0, 0, 0), Error);
}

TEST(PrintExpr, CanonicalForm) {
  EXPECT_EQ(print_expr(*parse_expr("-p^2 + 2*q")), "((-(p^2))+(2*q))");
  EXPECT_EQ(print_expr(*parse_expr("cos(2*pi*q/n)")), "cos((((2*pi)*q)/n))");
}

TEST(PrintExpr, ParsePrintParseIsIdempotent) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 500; ++trial) {
    const ExprPtr tree = random_tree(rng, 5);
    const std::string printed = print_expr(*tree);
    const ExprPtr reparsed = parse_expr(printed);
    ASSERT_TRUE(*reparsed == *tree) << printed;
    EXPECT_EQ(print_expr(*reparsed), printed);
  }
}

TEST(SymbolFromExpr, PointwiseEvaluationExactly) {
  const ExprPtr e = parse_expr("p^2/3 - sin(q) * n");
  for (std::size_t n : {1u, 4u, 7u}) {
    const Symbol s = symbol_from_expr(*e, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const auto lp = static_cast<long long>(p);
        const auto lq = static_cast<long long>(q);
        EXPECT_EQ(s(p, q), Complex(eval_expr(*e, lp, lq, static_cast<long long>(n)), 0.0));
      }
  }
}
