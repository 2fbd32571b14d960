#pragma once

// Scalar expressions in the curve parameter t: parse, evaluate, and
// differentiate symbolically. Nodes are immutable after parse, so trees
// can be shared and evaluated from many threads at once.

#include <memory>
#include <string>
#include <string_view>

#include "envcf/errors.hpp"

namespace envcf {

enum class ExprKind : unsigned char { number, var, neg, add, sub, mul, div, pow, fun };
enum class FunKind : unsigned char { sin, cos, exp, log, sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    double number = 0.0;    // ExprKind::number
    int exponent = 0;       // ExprKind::pow
    FunKind fun = FunKind::sin;
    ExprPtr a;              // unary child / left operand / pow base
    ExprPtr b;              // right operand
};

// Grammar (whitespace-insensitive, +,-,*,/ left-associative, ^ binds
// tighter and takes integer exponents only):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 't' | ident '(' expr ')' | '(' expr ')' | '-' base
//   ident  := sin | cos | exp | log | sqrt
// Throws Error(errc::parse) carrying the byte offset of the fault.
ExprPtr parse_expr(std::string_view src);

// Exact symbolic derivative d/dt. Total on valid trees; sqrt/log derivatives
// may be singular at runtime, which evaluation reports, not differentiation.
ExprPtr diff_expr(const ExprPtr& e);

// Evaluation outcome: a value, or the subexpression that violated its
// domain (log of non-positive, sqrt of negative, division by zero).
struct EvalResult {
    double value = 0.0;
    const Expr* fault = nullptr;  // points into the evaluated tree
    double t = 0.0;
    bool ok() const { return fault == nullptr; }
};

EvalResult eval_expr(const Expr& e, double t);
// Convenience wrapper that throws Error(errc::domain) on a fault.
double eval_or_throw(const Expr& e, double t);

// Printer whose output reparses to a structurally identical tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& lhs, const Expr& rhs);

// Total number of tree vertices (every Number/Var leaf counts).
int node_count(const Expr& e);

// Smart constructors with constant folding (literal arithmetic and the
// 0/1 identities). No other simplification is performed.
ExprPtr make_number(double v);
ExprPtr make_var();
ExprPtr make_neg(ExprPtr a);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_div(ExprPtr a, ExprPtr b);
ExprPtr make_pow(ExprPtr base, int exponent);
ExprPtr make_fun(FunKind f, ExprPtr a);

}  // namespace envcf
