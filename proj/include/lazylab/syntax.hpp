#pragma once

// funclang: a small R-flavoured functional language. Just enough grammar to
// express functions with lazily evaluated default arguments.
//
//   program  := stmt*
//   stmt     := IDENT ASSIGN expr | "print" "(" expr ")" | expr
//   expr     := term (("+" | "-") term)*
//   term     := unary (("*" | "/") unary)*
//   unary    := "-" unary | postfix
//   postfix  := primary ("(" args? ")")*
//   primary  := NUMBER | IDENT | "(" expr ")" | "c" "(" exprs? ")"
//             | "function" "(" params? ")" (block | expr)
//   block    := "{" stmt* "}"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lazylab/error.hpp"

namespace lazylab::func {

enum class TokenKind {
    Number,
    Ident,
    Assign,  // `<-` or `=`
    Op,      // + - * /
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    KwFunction,
    Eof,
};

std::string_view to_string(TokenKind kind);

struct SrcToken {
    TokenKind kind = TokenKind::Eof;
    std::string text;
    SourcePos pos;
    // A newline or `;` separates this token from the previous one. Outside
    // parentheses that ends the current statement when it is complete.
    bool newline_before = false;
};

/// Throws LexError on any character outside the grammar. `#` comments run
/// to end of line.
std::vector<SrcToken> tokenize(std::string_view source);

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
    double value = 0;
};

struct Ident {
    std::string name;
};

struct Binary {
    char op = '+';
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Arg {
    std::optional<std::string> name;
    ExprPtr expr;
};

struct Call {
    ExprPtr callee;
    std::vector<Arg> args;
};

struct Param {
    std::string name;
    ExprPtr default_value;  // null when the parameter has no default
};

struct FunctionDef {
    std::vector<Param> params;
    std::vector<Stmt> body;
};

struct VectorCtor {
    std::vector<ExprPtr> elements;
};

struct Expr {
    std::variant<NumberLit, Ident, Binary, Call, FunctionDef, VectorCtor> node;
    SourcePos pos;
};

struct Assign {
    std::string name;
    ExprPtr expr;
};

struct ExprStmt {
    ExprPtr expr;
};

struct PrintStmt {
    ExprPtr expr;
};

struct Stmt {
    std::variant<Assign, ExprStmt, PrintStmt> node;
    SourcePos pos;
};

struct Program {
    std::vector<Stmt> stmts;
};

/// Throws ParseError. `tokens` must end with an Eof token.
Program parse_program(const std::vector<SrcToken>& tokens);

/// tokenize + parse_program.
Program parse(std::string_view source);

/// Structural equality, ignoring source positions.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);
bool same_structure(const Program& a, const Program& b);

/// Canonical source form. Re-parsing the result yields a structurally
/// identical program.
std::string to_source(const Program& program);
std::string to_source(const Expr& expr);

/// Shortest decimal form: no trailing zeros, `.` only when fractional.
std::string format_number(double value);

}  // namespace lazylab::func
