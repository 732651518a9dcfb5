#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "meshplot/errors.hpp"
#include "meshplot/numformat.hpp"

namespace meshplot {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokenKind {
    Number, Ident, Op, Question, Colon, If, Then, Else, LParen, RParen, End,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset = 0;    // character position in the source
    double value = 0.0;        // meaningful for Number tokens only
};

namespace detail {

inline bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace detail

// Maximal-munch lexer. Keywords if/then/else/nan are case-insensitive;
// "nan" lexes as a Number token carrying NaN. The stream always ends
// with an End token.
inline std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < source.size()) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { ++i; continue; }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < source.size() &&
             std::isdigit(static_cast<unsigned char>(source[i + 1])))) {
            double value = 0.0;
            auto res = std::from_chars(source.data() + i, source.data() + source.size(), value);
            std::size_t len = static_cast<std::size_t>(res.ptr - (source.data() + i));
            std::string text(source.substr(i, len));
            if (res.ec == std::errc::result_out_of_range)
                value = std::strtod(text.c_str(), nullptr);  // saturates to inf/0
            tokens.push_back({TokenKind::Number, text, i, value});
            i += len;
            continue;
        }

        if (detail::ident_start(c)) {
            std::size_t start = i;
            while (i < source.size() && detail::ident_char(source[i])) ++i;
            std::string text(source.substr(start, i - start));
            std::string lower = detail::lowercase(text);
            if (lower == "if")        tokens.push_back({TokenKind::If, text, start, 0.0});
            else if (lower == "then") tokens.push_back({TokenKind::Then, text, start, 0.0});
            else if (lower == "else") tokens.push_back({TokenKind::Else, text, start, 0.0});
            else if (lower == "nan")
                tokens.push_back({TokenKind::Number, text, start,
                                  std::numeric_limits<double>::quiet_NaN()});
            else tokens.push_back({TokenKind::Ident, text, start, 0.0});
            continue;
        }

        auto two = source.substr(i, 2);
        if (two == "<=" || two == ">=" || two == "==" || two == "!=") {
            tokens.push_back({TokenKind::Op, std::string(two), i, 0.0});
            i += 2;
            continue;
        }
        switch (c) {
            case '<': case '>': case '+': case '-': case '*': case '/':
                tokens.push_back({TokenKind::Op, std::string(1, c), i, 0.0});
                break;
            case '?': tokens.push_back({TokenKind::Question, "?", i, 0.0}); break;
            case ':': tokens.push_back({TokenKind::Colon, ":", i, 0.0}); break;
            case '(': tokens.push_back({TokenKind::LParen, "(", i, 0.0}); break;
            case ')': tokens.push_back({TokenKind::RParen, ")", i, 0.0}); break;
            default:
                throw Error(errc::bad_char, "offset " + std::to_string(i) +
                                                ": unexpected character '" + c + "'");
        }
        ++i;
    }
    tokens.push_back({TokenKind::End, "", source.size(), 0.0});
    return tokens;
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

enum class BinaryOp { Add, Sub, Mul, Div, Lt, Gt, Le, Ge, Eq, Ne };

inline bool is_comparison(BinaryOp op) { return op >= BinaryOp::Lt; }

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Literal { double value; };
struct Var { std::string name; std::size_t offset; };
struct Binary { BinaryOp op; ExprPtr lhs, rhs; };
// Produced by both surface forms: `c ? a : b` and `if c then a else b`.
struct Conditional { ExprPtr cond, then_branch, else_branch; };

struct Expr {
    std::variant<Literal, Var, Binary, Conditional> node;
};

using Env = std::map<std::string, double>;

namespace detail {

template <typename T>
ExprPtr make_expr(T node) {
    return std::make_shared<const Expr>(Expr{std::move(node)});
}

inline BinaryOp op_from_text(std::string_view text) {
    if (text == "+") return BinaryOp::Add;
    if (text == "-") return BinaryOp::Sub;
    if (text == "*") return BinaryOp::Mul;
    if (text == "/") return BinaryOp::Div;
    if (text == "<") return BinaryOp::Lt;
    if (text == ">") return BinaryOp::Gt;
    if (text == "<=") return BinaryOp::Le;
    if (text == ">=") return BinaryOp::Ge;
    if (text == "==") return BinaryOp::Eq;
    return BinaryOp::Ne;
}

inline std::string_view op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Lt:  return "<";
        case BinaryOp::Gt:  return ">";
        case BinaryOp::Le:  return "<=";
        case BinaryOp::Ge:  return ">=";
        case BinaryOp::Eq:  return "==";
        case BinaryOp::Ne:  return "!=";
    }
    return "?";
}

// Recursive-descent parser. Precedence, lowest to highest:
//   conditional  `c ? a : b` (right-assoc) | `if c then a else b`
//   comparison   < > <= >= == !=   (non-associative; chaining rejected)
//   additive     + -               (left)
//   multiplicative * /             (left)
//   unary minus                    (parsed as 0 - operand)
//   primary      number | identifier | ( expression )
class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    ExprPtr parse() {
        ExprPtr expr = conditional();
        expect(TokenKind::End, "end of expression");
        return expr;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    bool match(TokenKind kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    void expect(TokenKind kind, std::string_view what) {
        if (!match(kind))
            throw Error(errc::parse_error, "offset " + std::to_string(peek().offset) +
                                               ": expected " + std::string(what));
    }

    bool peek_comparison() const {
        return peek().kind == TokenKind::Op && is_comparison(op_from_text(peek().text));
    }

    ExprPtr conditional() {
        if (match(TokenKind::If)) {
            ExprPtr cond = conditional();
            expect(TokenKind::Then, "'then'");
            ExprPtr then_branch = conditional();
            expect(TokenKind::Else, "'else'");
            ExprPtr else_branch = conditional();
            return make_expr(Conditional{cond, then_branch, else_branch});
        }
        ExprPtr cond = comparison();
        if (match(TokenKind::Question)) {
            ExprPtr then_branch = conditional();
            expect(TokenKind::Colon, "':'");
            ExprPtr else_branch = conditional();
            return make_expr(Conditional{cond, then_branch, else_branch});
        }
        return cond;
    }

    ExprPtr comparison() {
        ExprPtr lhs = additive();
        if (!peek_comparison()) return lhs;
        BinaryOp op = op_from_text(advance().text);
        ExprPtr rhs = additive();
        if (peek_comparison())
            throw Error(errc::chained_comparison,
                        "offset " + std::to_string(peek().offset) +
                            ": comparisons cannot be chained");
        return make_expr(Binary{op, lhs, rhs});
    }

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        while (peek().kind == TokenKind::Op &&
               (peek().text == "+" || peek().text == "-")) {
            BinaryOp op = op_from_text(advance().text);
            lhs = make_expr(Binary{op, lhs, multiplicative()});
        }
        return lhs;
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = unary();
        while (peek().kind == TokenKind::Op &&
               (peek().text == "*" || peek().text == "/")) {
            BinaryOp op = op_from_text(advance().text);
            lhs = make_expr(Binary{op, lhs, unary()});
        }
        return lhs;
    }

    ExprPtr unary() {
        if (peek().kind == TokenKind::Op && peek().text == "-") {
            advance();
            return make_expr(Binary{BinaryOp::Sub, make_expr(Literal{0.0}), unary()});
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::Number:
                advance();
                return make_expr(Literal{tok.value});
            case TokenKind::Ident:
                advance();
                return make_expr(Var{tok.text, tok.offset});
            case TokenKind::LParen: {
                advance();
                ExprPtr inner = conditional();
                expect(TokenKind::RParen, "')'");
                return inner;
            }
            default:
                throw Error(errc::parse_error,
                            "offset " + std::to_string(tok.offset) +
                                ": unexpected token '" + tok.text + "'");
        }
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(const std::vector<Token>& tokens) {
    return detail::Parser(tokens).parse();
}

inline ExprPtr parse_expression(std::string_view source) {
    return parse_expression(tokenize(source));
}

// IEEE double arithmetic throughout. Comparisons yield 1.0/0.0 and any
// comparison with a NaN operand is false — including `!=`, which plain
// IEEE would make true. A Conditional evaluates only the taken branch;
// a NaN condition takes the else branch.
inline double evaluate(const ExprPtr& expr, const Env& env) {
    struct Visitor {
        const Env& env;

        double operator()(const Literal& lit) const { return lit.value; }

        double operator()(const Var& var) const {
            auto it = env.find(var.name);
            if (it == env.end())
                throw Error(errc::unbound_variable,
                            "offset " + std::to_string(var.offset) +
                                ": unbound variable '" + var.name + "'");
            return it->second;
        }

        double operator()(const Binary& bin) const {
            double lhs = std::visit(*this, bin.lhs->node);
            double rhs = std::visit(*this, bin.rhs->node);
            switch (bin.op) {
                case BinaryOp::Add: return lhs + rhs;
                case BinaryOp::Sub: return lhs - rhs;
                case BinaryOp::Mul: return lhs * rhs;
                case BinaryOp::Div: return lhs / rhs;
                default: break;
            }
            if (std::isnan(lhs) || std::isnan(rhs)) return 0.0;
            bool truth = false;
            switch (bin.op) {
                case BinaryOp::Lt: truth = lhs < rhs; break;
                case BinaryOp::Gt: truth = lhs > rhs; break;
                case BinaryOp::Le: truth = lhs <= rhs; break;
                case BinaryOp::Ge: truth = lhs >= rhs; break;
                case BinaryOp::Eq: truth = lhs == rhs; break;
                case BinaryOp::Ne: truth = lhs != rhs; break;
                default: break;
            }
            return truth ? 1.0 : 0.0;
        }

        double operator()(const Conditional& cond) const {
            double c = std::visit(*this, cond.cond->node);
            bool taken = !std::isnan(c) && c != 0.0;
            return std::visit(*this, (taken ? cond.then_branch : cond.else_branch)->node);
        }
    };
    return std::visit(Visitor{env}, expr->node);
}

// Canonical ternary-form rendering; reparsing yields a structurally
// identical tree.
inline std::string to_string(const ExprPtr& expr) {
    struct Printer {
        std::string operator()(const Literal& lit) const { return format_shortest(lit.value); }
        std::string operator()(const Var& var) const { return var.name; }
        std::string operator()(const Binary& bin) const {
            return "(" + std::visit(*this, bin.lhs->node) + " " +
                   std::string(detail::op_text(bin.op)) + " " +
                   std::visit(*this, bin.rhs->node) + ")";
        }
        std::string operator()(const Conditional& cond) const {
            return "(" + std::visit(*this, cond.cond->node) + " ? " +
                   std::visit(*this, cond.then_branch->node) + " : " +
                   std::visit(*this, cond.else_branch->node) + ")";
        }
    };
    return std::visit(Printer{}, expr->node);
}

// Structural equality; literals compare bitwise except that any NaN
// equals any NaN.
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    if (auto* la = std::get_if<Literal>(&a->node)) {
        auto* lb = std::get_if<Literal>(&b->node);
        if (std::isnan(la->value) || std::isnan(lb->value))
            return std::isnan(la->value) && std::isnan(lb->value);
        return la->value == lb->value &&
               std::signbit(la->value) == std::signbit(lb->value);
    }
    if (auto* va = std::get_if<Var>(&a->node))
        return va->name == std::get<Var>(b->node).name;
    if (auto* ba = std::get_if<Binary>(&a->node)) {
        const auto& bb = std::get<Binary>(b->node);
        return ba->op == bb.op && expr_equal(ba->lhs, bb.lhs) && expr_equal(ba->rhs, bb.rhs);
    }
    const auto& ca = std::get<Conditional>(a->node);
    const auto& cb = std::get<Conditional>(b->node);
    return expr_equal(ca.cond, cb.cond) && expr_equal(ca.then_branch, cb.then_branch) &&
           expr_equal(ca.else_branch, cb.else_branch);
}

}  // namespace meshplot
