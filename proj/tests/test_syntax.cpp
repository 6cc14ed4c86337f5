#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lazylab/syntax.hpp"

using namespace lazylab;
using namespace lazylab::func;

namespace {

std::vector<TokenKind> kinds(const std::vector<SrcToken>& toks) {
    std::vector<TokenKind> out;
    for (const auto& t : toks) out.push_back(t.kind);
    return out;
}

const char* kProgram1 =
    "###examples\n"
    "lazy_eval<-function(x=5,y=x*10,z=a+b){\n"
    "  x=2\n"
    "  a=3\n"
    "  b=4\n"
    "  c(x,y,z)\n"
    "}\n"
    "\n"
    "lazy_eval()\n";

}  // namespace

TEST_CASE("minimal assignment tokens") {
    auto toks = tokenize("x <- 1");
    CHECK(kinds(toks) == std::vector{TokenKind::Ident, TokenKind::Assign, TokenKind::Number, TokenKind::Eof});
    CHECK(toks[0].text == "x");
    CHECK(toks[2].text == "1");
    CHECK(toks[1].pos == SourcePos{1, 3});
}

TEST_CASE("function header tokens") {
    auto toks = tokenize("function(x=5,y=x*10,z=a+b)");
    REQUIRE(toks.back().kind == TokenKind::Eof);
    CHECK(toks.size() - 1 == 18);
    CHECK(toks[0].kind == TokenKind::KwFunction);
    CHECK(toks[1].kind == TokenKind::LParen);
    CHECK(toks[2].kind == TokenKind::Ident);
    CHECK(toks[3].kind == TokenKind::Assign);
    CHECK(toks[4].kind == TokenKind::Number);
    CHECK(toks[5].kind == TokenKind::Comma);
    CHECK(toks[17].kind == TokenKind::RParen);
}

TEST_CASE("both assignment spellings lex as ASSIGN") {
    CHECK(tokenize("a = 1")[1].kind == TokenKind::Assign);
    CHECK(tokenize("a <- 1")[1].kind == TokenKind::Assign);
}

TEST_CASE("illegal character") {
    try {
        tokenize("x <- @");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        REQUIRE(e.pos());
        CHECK(*e.pos() == SourcePos{1, 6});
    }
}

TEST_CASE("comments are skipped") {
    auto toks = tokenize("# hello\nx # trailing\n");
    CHECK(kinds(toks) == std::vector{TokenKind::Ident, TokenKind::Eof});
    CHECK(toks[0].pos == SourcePos{2, 1});
}

TEST_CASE("positions are non-decreasing") {
    auto toks = tokenize(kProgram1);
    for (std::size_t i = 1; i < toks.size(); ++i) {
        auto a = toks[i - 1].pos;
        auto b = toks[i].pos;
        CHECK((a.line < b.line || (a.line == b.line && a.col <= b.col)));
    }
}

TEST_CASE("program 1 shape") {
    Program p = parse(kProgram1);
    REQUIRE(p.stmts.size() == 2);
    const auto* assign = std::get_if<Assign>(&p.stmts[0].node);
    REQUIRE(assign);
    CHECK(assign->name == "lazy_eval");
    const auto* fn = std::get_if<FunctionDef>(&assign->expr->node);
    REQUIRE(fn);
    REQUIRE(fn->params.size() == 3);
    for (const auto& param : fn->params) CHECK(param.default_value);
    CHECK(fn->body.size() == 4);
    const auto* call = std::get_if<ExprStmt>(&p.stmts[1].node);
    REQUIRE(call);
    CHECK(std::holds_alternative<Call>(call->expr->node));
}

TEST_CASE("empty source") { CHECK(parse("").stmts.empty()); }

TEST_CASE("c() is a vector constructor") {
    Program p = parse("c(x,y,z)");
    REQUIRE(p.stmts.size() == 1);
    const auto& e = std::get<ExprStmt>(p.stmts[0].node).expr;
    const auto* v = std::get_if<VectorCtor>(&e->node);
    REQUIRE(v);
    REQUIRE(v->elements.size() == 3);
    CHECK(std::get<Ident>(v->elements[2]->node).name == "z");
}

TEST_CASE("print is a statement") {
    Program p = parse("print(y)");
    CHECK(std::holds_alternative<PrintStmt>(p.stmts[0].node));
}

TEST_CASE("named arguments vs assignment") {
    Program p = parse("f(a = 1, 2)\nb = 3");
    const auto& call = std::get<Call>(std::get<ExprStmt>(p.stmts[0].node).expr->node);
    REQUIRE(call.args.size() == 2);
    CHECK(call.args[0].name == std::optional<std::string>("a"));
    CHECK(!call.args[1].name);
    CHECK(std::holds_alternative<Assign>(p.stmts[1].node));
}

TEST_CASE("precedence and associativity") {
    CHECK(same_structure(parse("a+b*c"), parse("a+(b*c)")));
    CHECK(same_structure(parse("a-b-c"), parse("(a-b)-c")));
    CHECK_FALSE(same_structure(parse("a-b-c"), parse("a-(b-c)")));
    CHECK(same_structure(parse("a/b*c"), parse("(a/b)*c")));
}

TEST_CASE("newlines end statements") {
    Program p = parse("y <- 1\n-2\n(3)");
    CHECK(p.stmts.size() == 3);
    Program q = parse("y <- 1 +\n 2");
    CHECK(q.stmts.size() == 1);
    Program r = parse("f(1,\n 2)");
    CHECK(r.stmts.size() == 1);
}

TEST_CASE("parse errors carry positions") {
    for (const char* bad : {"x <- ", "f(", "function(x, x) x", "f(a = 1, a = 2)", "1 2", "x <- (1", "{"}) {
        CAPTURE(bad);
        try {
            parse(bad);
            FAIL("expected a ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.pos());
            CHECK(e.pos()->line >= 1);
            CHECK(e.pos()->col >= 1);
        }
    }
}

TEST_CASE("canonical printing") {
    CHECK(to_source(parse("x=1")) == "x <- 1\n");
    CHECK(to_source(parse("a-(b-c)")) == "a - (b - c)\n");
    CHECK(to_source(parse("(a*b)+c")) == "a * b + c\n");
    Program p = parse(kProgram1);
    CHECK(same_structure(parse(to_source(p)), p));
}

TEST_CASE("number formatting") {
    CHECK(format_number(20) == "20");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(2.5) == "2.5");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-7) == "-7");
}
