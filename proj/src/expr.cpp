#include "envcf/expr.hpp"

#include <charconv>
#include <cmath>
#include <cctype>
#include <string>
#include <system_error>

namespace envcf {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_number(const ExprPtr& e, double v) {
    return e->kind == ExprKind::number && e->number == v;
}

}  // namespace

ExprPtr make_number(double v) {
    Expr e;
    e.kind = ExprKind::number;
    e.number = v;
    return node(std::move(e));
}

ExprPtr make_var() {
    Expr e;
    e.kind = ExprKind::var;
    return node(std::move(e));
}

ExprPtr make_neg(ExprPtr a) {
    if (a->kind == ExprKind::number) return make_number(-a->number);
    if (a->kind == ExprKind::neg) return a->a;
    Expr e;
    e.kind = ExprKind::neg;
    e.a = std::move(a);
    return node(std::move(e));
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::number && b->kind == ExprKind::number)
        return make_number(a->number + b->number);
    if (is_number(a, 0.0)) return b;
    if (is_number(b, 0.0)) return a;
    Expr e;
    e.kind = ExprKind::add;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::number && b->kind == ExprKind::number)
        return make_number(a->number - b->number);
    if (is_number(b, 0.0)) return a;
    if (is_number(a, 0.0)) return make_neg(std::move(b));
    Expr e;
    e.kind = ExprKind::sub;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::number && b->kind == ExprKind::number)
        return make_number(a->number * b->number);
    if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
    if (is_number(a, 1.0)) return b;
    if (is_number(b, 1.0)) return a;
    Expr e;
    e.kind = ExprKind::mul;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_div(ExprPtr a, ExprPtr b) {
    if (a->kind == ExprKind::number && b->kind == ExprKind::number && b->number != 0.0)
        return make_number(a->number / b->number);
    if (is_number(b, 1.0)) return a;
    Expr e;
    e.kind = ExprKind::div;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_pow(ExprPtr base, int exponent) {
    if (exponent == 1) return base;
    if (base->kind == ExprKind::number && !(base->number == 0.0 && exponent <= 0))
        return make_number(std::pow(base->number, exponent));
    Expr e;
    e.kind = ExprKind::pow;
    e.exponent = exponent;
    e.a = std::move(base);
    return node(std::move(e));
}

ExprPtr make_fun(FunKind f, ExprPtr a) {
    Expr e;
    e.kind = ExprKind::fun;
    e.fun = f;
    e.a = std::move(a);
    return node(std::move(e));
}

// --------------------------------------------------------------------------
// Parser: recursive descent over the fixed grammar, byte offsets in errors.

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(errc::parse, "syntax error at offset " + std::to_string(pos_) + ": " + what,
                    pos_);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make_add(std::move(lhs), term());
            else if (accept('-'))
                lhs = make_sub(std::move(lhs), term());
            else
                return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = make_mul(std::move(lhs), factor());
            else if (accept('/'))
                lhs = make_div(std::move(lhs), factor());
            else
                return lhs;
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (accept('^')) return make_pow(std::move(b), integer());
        return b;
    }

    ExprPtr base() {
        const char c = peek();
        if (c == '\0') fail("incomplete input");
        if (c == '-') {
            ++pos_;
            return make_neg(base());
        }
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // the 'e' was not an exponent
            }
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return make_number(v);
    }

    ExprPtr identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return make_var();
        FunKind f;
        if (name == "sin")
            f = FunKind::sin;
        else if (name == "cos")
            f = FunKind::cos;
        else if (name == "exp")
            f = FunKind::exp;
        else if (name == "log")
            f = FunKind::log;
        else if (name == "sqrt")
            f = FunKind::sqrt;
        else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!accept('(')) fail("expected '(' after function name");
        ExprPtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return make_fun(f, std::move(arg));
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == digits) fail("expected integer exponent");
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
            pos_ = start;
            fail("non-integer exponent");
        }
        int v = 0;
        const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc()) {
            pos_ = start;
            fail("exponent out of range");
        }
        (void)ptr;
        return v;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view src) {
    if (src.empty()) throw Error(errc::parse, "empty expression", 0);
    return Parser(src).run();
}

// --------------------------------------------------------------------------

ExprPtr diff_expr(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::number:
            return make_number(0.0);
        case ExprKind::var:
            return make_number(1.0);
        case ExprKind::neg:
            return make_neg(diff_expr(e->a));
        case ExprKind::add:
            return make_add(diff_expr(e->a), diff_expr(e->b));
        case ExprKind::sub:
            return make_sub(diff_expr(e->a), diff_expr(e->b));
        case ExprKind::mul:
            return make_add(make_mul(diff_expr(e->a), e->b), make_mul(e->a, diff_expr(e->b)));
        case ExprKind::div:
            // (u/v)' = (u'v - uv') / v^2
            return make_div(
                make_sub(make_mul(diff_expr(e->a), e->b), make_mul(e->a, diff_expr(e->b))),
                make_pow(e->b, 2));
        case ExprKind::pow:
            if (e->exponent == 0) return make_number(0.0);
            return make_mul(make_mul(make_number(e->exponent), make_pow(e->a, e->exponent - 1)),
                            diff_expr(e->a));
        case ExprKind::fun: {
            const ExprPtr da = diff_expr(e->a);
            switch (e->fun) {
                case FunKind::sin:
                    return make_mul(make_fun(FunKind::cos, e->a), da);
                case FunKind::cos:
                    return make_neg(make_mul(make_fun(FunKind::sin, e->a), da));
                case FunKind::exp:
                    return make_mul(make_fun(FunKind::exp, e->a), da);
                case FunKind::log:
                    return make_div(da, e->a);
                case FunKind::sqrt:
                    return make_div(da, make_mul(make_number(2.0), make_fun(FunKind::sqrt, e->a)));
            }
        }
    }
    throw Error(errc::invalid_arg, "corrupt expression node");
}

// --------------------------------------------------------------------------

namespace {

struct EvalFault {
    const Expr* node;
};

double eval_rec(const Expr& e, double t) {
    switch (e.kind) {
        case ExprKind::number:
            return e.number;
        case ExprKind::var:
            return t;
        case ExprKind::neg:
            return -eval_rec(*e.a, t);
        case ExprKind::add:
            return eval_rec(*e.a, t) + eval_rec(*e.b, t);
        case ExprKind::sub:
            return eval_rec(*e.a, t) - eval_rec(*e.b, t);
        case ExprKind::mul:
            return eval_rec(*e.a, t) * eval_rec(*e.b, t);
        case ExprKind::div: {
            const double num = eval_rec(*e.a, t);
            const double den = eval_rec(*e.b, t);
            if (den == 0.0) throw EvalFault{&e};
            return num / den;
        }
        case ExprKind::pow: {
            const double base = eval_rec(*e.a, t);
            if (base == 0.0 && e.exponent < 0) throw EvalFault{&e};
            double r = std::pow(base, e.exponent);
            if (std::isnan(r)) throw EvalFault{&e};
            return r;
        }
        case ExprKind::fun: {
            const double a = eval_rec(*e.a, t);
            switch (e.fun) {
                case FunKind::sin:
                    return std::sin(a);
                case FunKind::cos:
                    return std::cos(a);
                case FunKind::exp:
                    return std::exp(a);
                case FunKind::log:
                    if (a <= 0.0) throw EvalFault{&e};
                    return std::log(a);
                case FunKind::sqrt:
                    if (a < 0.0) throw EvalFault{&e};
                    return std::sqrt(a);
            }
        }
    }
    throw EvalFault{&e};
}

}  // namespace

EvalResult eval_expr(const Expr& e, double t) {
    EvalResult r;
    r.t = t;
    try {
        r.value = eval_rec(e, t);
        if (std::isnan(r.value)) r.fault = &e;
    } catch (const EvalFault& f) {
        r.fault = f.node;
    }
    return r;
}

double eval_or_throw(const Expr& e, double t) {
    const EvalResult r = eval_expr(e, t);
    if (!r.ok())
        throw Error(errc::domain,
                    "domain error in '" + to_string(*r.fault) + "' at t = " + std::to_string(t));
    return r.value;
}

// --------------------------------------------------------------------------
// Printer. Parenthesization follows the grammar so output reparses to a
// structurally identical tree.

namespace {

std::string format_literal(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// Grammar level required around a child: 0 expr, 1 term, 2 factor, 3 base.
int level_of(const Expr& e) {
    switch (e.kind) {
        case ExprKind::add:
        case ExprKind::sub:
            return 0;
        case ExprKind::mul:
        case ExprKind::div:
            return 1;
        case ExprKind::pow:
            return 2;
        case ExprKind::neg:
            return 3;  // '-' base is itself a base production
        case ExprKind::number:
            return e.number < 0 ? 3 : 4;
        case ExprKind::var:
        case ExprKind::fun:
            return 4;
    }
    return 4;
}

void print_rec(const Expr& e, int need, std::string& out) {
    const bool parens = level_of(e) < need;
    if (parens) out += '(';
    switch (e.kind) {
        case ExprKind::number:
            out += format_literal(e.number);
            break;
        case ExprKind::var:
            out += 't';
            break;
        case ExprKind::neg:
            out += '-';
            print_rec(*e.a, 4, out);  // '-' binds a bare base only
            break;
        case ExprKind::add:
            print_rec(*e.a, 0, out);
            out += " + ";
            print_rec(*e.b, 1, out);
            break;
        case ExprKind::sub:
            print_rec(*e.a, 0, out);
            out += " - ";
            print_rec(*e.b, 1, out);
            break;
        case ExprKind::mul:
            print_rec(*e.a, 1, out);
            out += " * ";
            print_rec(*e.b, 2, out);
            break;
        case ExprKind::div:
            print_rec(*e.a, 1, out);
            out += " / ";
            print_rec(*e.b, 2, out);
            break;
        case ExprKind::pow:
            print_rec(*e.a, 4, out);
            out += '^';
            out += std::to_string(e.exponent);
            break;
        case ExprKind::fun: {
            static const char* names[] = {"sin", "cos", "exp", "log", "sqrt"};
            out += names[static_cast<int>(e.fun)];
            out += '(';
            print_rec(*e.a, 0, out);
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
    if (lhs.kind != rhs.kind) return false;
    switch (lhs.kind) {
        case ExprKind::number:
            return lhs.number == rhs.number;
        case ExprKind::var:
            return true;
        case ExprKind::neg:
            return structurally_equal(*lhs.a, *rhs.a);
        case ExprKind::pow:
            return lhs.exponent == rhs.exponent && structurally_equal(*lhs.a, *rhs.a);
        case ExprKind::fun:
            return lhs.fun == rhs.fun && structurally_equal(*lhs.a, *rhs.a);
        default:
            return structurally_equal(*lhs.a, *rhs.a) && structurally_equal(*lhs.b, *rhs.b);
    }
}

int node_count(const Expr& e) {
    int n = 1;
    if (e.a) n += node_count(*e.a);
    if (e.b) n += node_count(*e.b);
    return n;
}

}  // namespace envcf
