#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lazylab/maclang.hpp"

using namespace lazylab;
using namespace lazylab::macro;

namespace {

const char* kProgram1 =
    "/*examples for \"lazy evaluation\" of parameters in SAS*/\n"
    "%macro lazy(x=5,y=&x*10,z=&a+&b);\n"
    "%put _user_ /*This would display symbol tables in the log*/\n"
    "%let x=2;\n"
    "%let a=3;\n"
    "%let b=4;\n"
    "%put (&x %eval(&y) %eval(&z));\n"
    "%mend;\n"
    "\n"
    "%lazy()\n";

const char* kProgram2 =
    "%macro lazy1(x=5,y=&x*10);\n"
    "%let x=2;\n"
    "%put %eval(&y);\n"
    "%let x=10;\n"
    "%put %eval(&y);\n"
    "\n"
    "%mend;\n"
    "\n"
    "%lazy1()\n";

using Lines = std::vector<std::string>;

std::vector<TokenKind> kinds(std::string_view src) {
    std::vector<TokenKind> out;
    for (const auto& t : scan(src)) out.push_back(t.kind);
    return out;
}

Lines log_of(std::string_view src) { return run_session(src).log_lines; }

}  // namespace

TEST_CASE("scan %let") {
    auto toks = scan("%let x=2;");
    REQUIRE(toks.size() == 6);
    CHECK(kinds("%let x=2;") == std::vector{TokenKind::PctLet, TokenKind::Ident, TokenKind::Equals, TokenKind::Text,
                                             TokenKind::Semi, TokenKind::Eof});
    CHECK(toks[1].text == "x");
    CHECK(toks[3].text == "2");
}

TEST_CASE("scan empty and references") {
    CHECK(kinds("") == std::vector{TokenKind::Eof});
    auto toks = scan("&x*10");
    CHECK(kinds("&x*10") == std::vector{TokenKind::AmpRef, TokenKind::Op, TokenKind::Int, TokenKind::Eof});
    CHECK(toks[0].text == "x");
    CHECK(toks[2].text == "10");
}

TEST_CASE("scan errors") {
    CHECK_THROWS_AS(scan(strip_comments("%let x=1; /* open")), LexError);
    CHECK_THROWS_AS(scan("% let"), LexError);
    CHECK_THROWS_AS(scan("& x"), LexError);
}

TEST_CASE("define_macro keeps raw defaults") {
    std::string src = "%macro lazy(x=5,y=&x*10,z=&a+&b);\n%put hi;\n%mend;";
    auto toks = scan(src);
    ParsedDefinition d = define_macro(toks, src);
    REQUIRE(d.def.params.size() == 3);
    CHECK(d.def.params[0].name == "x");
    CHECK(d.def.params[0].default_text == "5");
    CHECK(d.def.params[1].default_text == "&x*10");
    CHECK(d.def.params[2].default_text == "&a+&b");
    CHECK(d.def.body_text.find("%put hi;") != std::string::npos);
}

TEST_CASE("define_macro edge cases") {
    std::string empty = "%macro m(); %mend;";
    auto d = define_macro(scan(empty), empty);
    CHECK(d.def.params.empty());
    CHECK(d.def.body_text.find_first_not_of(" \n") == std::string::npos);
    std::string dup = "%macro m(a=1,a=2); %mend;";
    CHECK_THROWS_AS(define_macro(scan(dup), dup), DuplicateParam);
    std::string open = "%macro m(a=1); %put x;";
    CHECK_THROWS_AS(define_macro(scan(open), open), UnterminatedMacro);
}

TEST_CASE("program 1") {
    Lines log = log_of(kProgram1);
    CHECK(log == Lines{"LAZY X 5", "LAZY Y &x*10", "LAZY Z &a+&b", "(2 20 7)"});
}

TEST_CASE("program 2") { CHECK(log_of(kProgram2) == Lines{"20", "100"}); }

TEST_CASE("invocation overrides") {
    Session s;
    s.run("%macro lazy(x=5,y=&x*10);\n%put %eval(&y);\n%mend;");
    CHECK(s.invoke("lazy", std::map<std::string, std::string>{{"x", "7"}}).log_lines == Lines{"70"});
    CHECK(s.invoke("lazy", std::vector<std::string>{"3"}).log_lines == Lines{"30"});
    CHECK_THROWS_AS(s.invoke("nope", std::vector<std::string>{}), UnknownMacro);
    CHECK_THROWS_AS(s.invoke("lazy", std::map<std::string, std::string>{{"w", "1"}}), UnknownParam);
    CHECK(s.tables().depth() == 1);
    CHECK(s.tables().locals_created() == s.tables().locals_deleted());
}

TEST_CASE("unknown macro in source") { CHECK_THROWS_AS(log_of("%nope()"), UnknownMacro); }

TEST_CASE("resolve_text") {
    TableStack stack;
    SymbolTable& local = stack.push_local("lazy");
    stack.store(local, "x", "2");
    stack.store(local, "y", "&x*10");
    CHECK(resolve_text("&y", stack) == "2*10");
    CHECK(resolve_text("plain", stack) == "plain");
    CHECK(resolve_text("&x.5", stack) == "25");
    CHECK_THROWS_AS(resolve_text("&q", stack), UnresolvedRef);
    stack.store(local, "a", "&a");
    CHECK_THROWS_AS(resolve_text("&a", stack), DepthExceeded);
}

TEST_CASE("resolution has no memo state") {
    TableStack stack;
    SymbolTable& local = stack.push_local("m");
    stack.store(local, "x", "2");
    stack.store(local, "y", "&x*10");
    CHECK(resolve_text("&y", stack) == "2*10");
    let_stmt("x", "10", stack);
    CHECK(resolve_text("&y", stack) == "10*10");
}

TEST_CASE("eval_arith") {
    CHECK(eval_arith("2*10") == 20);
    CHECK(eval_arith("3+4") == 7);
    CHECK(eval_arith("7/2") == 3);
    CHECK(eval_arith("-7/2") == -3);
    CHECK(eval_arith("7/-2") == -3);
    CHECK(eval_arith("(1+2)*3") == 9);
    CHECK(eval_arith(" 1 - 2 - 3 ") == -4);
    CHECK_THROWS_AS(eval_arith(""), ArithSyntax);
    CHECK_THROWS_AS(eval_arith("2.5"), ArithSyntax);
    CHECK_THROWS_AS(eval_arith("x+1"), ArithSyntax);
    CHECK_THROWS_AS(eval_arith("1+"), ArithSyntax);
    CHECK_THROWS_AS(eval_arith("1/0"), DivisionByZero);
    CHECK_THROWS_AS(eval_arith("9999999999*9999999999"), ArithSyntax);
}

TEST_CASE("let_stmt scoping") {
    TableStack stack;
    let_stmt("g", "1", stack);
    CHECK(stack.global().find("G"));
    SymbolTable& local = stack.push_local("lazy");
    stack.store(local, "x", "5");
    let_stmt("x", "2", stack);
    CHECK(*local.find("X") == "2");
    let_stmt("a", "3", stack);
    CHECK(local.find("A"));
    CHECK(!stack.global().find("A"));
    let_stmt("g", "&a", stack);
    CHECK(*stack.global().find("G") == "3");
}

TEST_CASE("put_stmt") {
    TableStack stack;
    SymbolTable& local = stack.push_local("lazy");
    for (auto [n, v] : {std::pair{"x", "2"}, {"y", "&x*10"}, {"z", "&a+&b"}, {"a", "3"}, {"b", "4"}}) {
        stack.store(local, n, v);
    }
    CHECK(put_stmt("(&x %eval(&y) %eval(&z))", stack).lines == Lines{"(2 20 7)"});
    CHECK(put_stmt("hello", stack).lines == Lines{"hello"});
    PutResult dump = put_stmt("_user_", stack);
    CHECK(dump.symbol_dump);
    CHECK(dump.lines.size() == 5);
    CHECK(dump.lines[0] == "LAZY X 2");
}

TEST_CASE("parameters are stored as text before the body runs") {
    Session s;
    std::vector<std::pair<std::string, std::string>> seen;
    s.on_parameters_stored([&](const MacroDef&, const TableStack& tables) { seen = tables.innermost().entries; });
    s.run(kProgram1);
    CHECK(seen == std::vector<std::pair<std::string, std::string>>{{"X", "5"}, {"Y", "&x*10"}, {"Z", "&a+&b"}});
}

TEST_CASE("table lifecycle trace") {
    TraceLog trace;
    Session s(&trace);
    s.run(kProgram1);
    CHECK(trace.count(TraceKind::TableCreated) == 1);
    CHECK(trace.count(TraceKind::TableDeleted) == 1);
    CHECK(s.tables().depth() == 1);
    CHECK(s.tables().global().status == TableStatus::Live);
}

TEST_CASE("tables are popped on error") {
    Session s;
    CHECK_THROWS_AS(s.run("%macro m(x=1);\n%put &nope;\n%mend;\n%m()"), UnresolvedRef);
    CHECK(s.tables().depth() == 1);
    CHECK(s.tables().locals_created() == s.tables().locals_deleted());
}

TEST_CASE("nested invocation") {
    const char* src =
        "%macro inner(v=);\n%put in &v &outer_only;\n%mend;\n"
        "%macro outer(w=1);\n%let outer_only=seen;\n%inner(v=&w)\n%mend;\n"
        "%outer(w=4)\n";
    TraceLog trace;
    Session s(&trace);
    s.run(src);
    CHECK(s.output().log_lines == Lines{"in 4 seen"});
    CHECK(trace.count(TraceKind::TableCreated) == 2);
    CHECK(trace.count(TraceKind::TableDeleted) == 2);
}

TEST_CASE("runaway recursion") {
    CHECK_THROWS_AS(log_of("%macro r();\n%r()\n%mend;\n%r()"), DepthExceeded);
}

TEST_CASE("errors carry positions") {
    try {
        log_of("%let a=1;\n%put &zz;\n");
        FAIL("expected UnresolvedRef");
    } catch (const UnresolvedRef& e) {
        REQUIRE(e.pos());
        CHECK(e.pos()->line == 2);
    }
}

TEST_CASE("case-insensitive names") {
    CHECK(log_of("%LET Abc=5;\n%put &abc;") == Lines{"5"});
    CHECK(log_of("%macro Hi();\n%put hi;\n%mend;\n%HI()") == Lines{"hi"});
}
