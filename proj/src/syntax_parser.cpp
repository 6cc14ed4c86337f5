#include <charconv>
#include <optional>
#include <set>

#include "lazylab/syntax.hpp"

namespace lazylab::func {

namespace {

ExprPtr make(SourcePos pos, auto node) {
    return std::make_shared<const Expr>(Expr{std::move(node), pos});
}

class Parser {
  public:
    explicit Parser(const std::vector<SrcToken>& tokens) : toks_(tokens) {
        if (toks_.empty() || toks_.back().kind != TokenKind::Eof) {
            throw ParseError("token stream does not end with EOF", toks_.empty() ? SourcePos{} : toks_.back().pos);
        }
    }

    Program program() {
        Program p;
        while (!at(TokenKind::Eof)) {
            p.stmts.push_back(statement());
            end_of_statement();
        }
        return p;
    }

  private:
    // Newlines terminate statements at block level but not inside parentheses.
    class LineMode {
      public:
        LineMode(Parser& p, bool sensitive) : p_(p) { p_.line_mode_.push_back(sensitive); }
        ~LineMode() { p_.line_mode_.pop_back(); }
        LineMode(const LineMode&) = delete;
        LineMode& operator=(const LineMode&) = delete;

      private:
        Parser& p_;
    };

    bool line_ends_here() const { return line_mode_.back() && cur().newline_before; }

    void end_of_statement() {
        if (!at(TokenKind::Eof) && !at(TokenKind::RBrace) && !cur().newline_before) {
            fail("a newline or ';' between statements");
        }
    }

    const SrcToken& cur() const { return toks_[i_]; }
    const SrcToken& next() const { return toks_[i_ + 1 < toks_.size() ? i_ + 1 : i_]; }
    bool at(TokenKind k) const { return cur().kind == k; }
    bool at_op(char op) const { return at(TokenKind::Op) && cur().text[0] == op; }

    const SrcToken& take() {
        const SrcToken& t = toks_[i_];
        if (t.kind != TokenKind::Eof) ++i_;
        return t;
    }

    [[noreturn]] void fail(std::string_view expected) const {
        std::string got = at(TokenKind::Eof) ? "end of input" : "'" + cur().text + "'";
        throw ParseError("expected " + std::string(expected) + ", found " + got, cur().pos);
    }

    const SrcToken& expect(TokenKind k, std::string_view expected) {
        if (!at(k)) fail(expected);
        return take();
    }

    Stmt statement() {
        SourcePos pos = cur().pos;
        if (at(TokenKind::Ident) && next().kind == TokenKind::Assign) {
            std::string name = take().text;
            take();
            return Stmt{Assign{std::move(name), expression()}, pos};
        }
        if (at(TokenKind::Ident) && cur().text == "print" && next().kind == TokenKind::LParen) {
            take();
            take();
            LineMode mode(*this, false);
            ExprPtr e = expression();
            expect(TokenKind::RParen, "')' closing print(...)");
            return Stmt{PrintStmt{std::move(e)}, pos};
        }
        ExprPtr e = expression();
        if (at(TokenKind::Assign)) fail("a statement (assignment target must be a plain name)");
        return Stmt{ExprStmt{std::move(e)}, pos};
    }

    ExprPtr expression() {
        ExprPtr lhs = term();
        while (!line_ends_here() && (at_op('+') || at_op('-'))) {
            const SrcToken& op = take();
            lhs = make(op.pos, Binary{op.text[0], lhs, term()});
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (!line_ends_here() && (at_op('*') || at_op('/'))) {
            const SrcToken& op = take();
            lhs = make(op.pos, Binary{op.text[0], lhs, unary()});
        }
        return lhs;
    }

    ExprPtr unary() {
        if (at_op('-')) {
            SourcePos pos = take().pos;
            // Negation is sugar for 0 - operand.
            return make(pos, Binary{'-', make(pos, NumberLit{0}), unary()});
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (!line_ends_here() && at(TokenKind::LParen)) {
            SourcePos pos = take().pos;
            e = make(pos, Call{e, arguments()});
        }
        return e;
    }

    std::vector<Arg> arguments() {
        LineMode mode(*this, false);
        std::vector<Arg> args;
        std::set<std::string> seen;
        if (at(TokenKind::RParen)) {
            take();
            return args;
        }
        while (true) {
            if (at(TokenKind::Ident) && next().kind == TokenKind::Assign) {
                const SrcToken& name = take();
                if (!seen.insert(name.text).second) {
                    throw ParseError("duplicate named argument '" + name.text + "'", name.pos);
                }
                take();
                args.push_back(Arg{name.text, expression()});
            } else {
                args.push_back(Arg{std::nullopt, expression()});
            }
            if (at(TokenKind::Comma)) {
                take();
                continue;
            }
            expect(TokenKind::RParen, "',' or ')' in argument list");
            return args;
        }
    }

    ExprPtr primary() {
        const SrcToken& t = cur();
        switch (t.kind) {
            case TokenKind::Number: {
                take();
                double v = 0;
                auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
                if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
                    throw ParseError("invalid number '" + t.text + "'", t.pos);
                }
                return make(t.pos, NumberLit{v});
            }
            case TokenKind::Ident: {
                take();
                if (t.text == "c" && at(TokenKind::LParen)) {
                    take();
                    return make(t.pos, VectorCtor{vector_elements()});
                }
                return make(t.pos, Ident{t.text});
            }
            case TokenKind::LParen: {
                take();
                LineMode mode(*this, false);
                ExprPtr e = expression();
                expect(TokenKind::RParen, "')'");
                return e;
            }
            case TokenKind::KwFunction:
                take();
                return make(t.pos, function_def());
            default:
                fail("an expression");
        }
    }

    std::vector<ExprPtr> vector_elements() {
        LineMode mode(*this, false);
        std::vector<ExprPtr> elems;
        if (at(TokenKind::RParen)) {
            take();
            return elems;
        }
        while (true) {
            elems.push_back(expression());
            if (at(TokenKind::Comma)) {
                take();
                continue;
            }
            expect(TokenKind::RParen, "',' or ')' in c(...)");
            return elems;
        }
    }

    FunctionDef function_def() {
        expect(TokenKind::LParen, "'(' after function");
        FunctionDef def;
        std::set<std::string> seen;
        std::optional<LineMode> params_mode(std::in_place, *this, false);
        if (!at(TokenKind::RParen)) {
            while (true) {
                const SrcToken& name = expect(TokenKind::Ident, "a parameter name");
                if (!seen.insert(name.text).second) {
                    throw ParseError("duplicate parameter '" + name.text + "'", name.pos);
                }
                Param p{name.text, nullptr};
                if (at(TokenKind::Assign)) {
                    take();
                    p.default_value = expression();
                }
                def.params.push_back(std::move(p));
                if (at(TokenKind::Comma)) {
                    take();
                    continue;
                }
                break;
            }
        }
        expect(TokenKind::RParen, "',' or ')' in parameter list");
        params_mode.reset();
        if (at(TokenKind::LBrace)) {
            take();
            LineMode mode(*this, true);
            while (!at(TokenKind::RBrace)) {
                if (at(TokenKind::Eof)) fail("'}' closing function body");
                def.body.push_back(statement());
                end_of_statement();
            }
            take();
        } else {
            SourcePos pos = cur().pos;
            def.body.push_back(Stmt{ExprStmt{expression()}, pos});
        }
        return def;
    }

    const std::vector<SrcToken>& toks_;
    std::size_t i_ = 0;
    std::vector<bool> line_mode_{true};
};

}  // namespace

Program parse_program(const std::vector<SrcToken>& tokens) { return Parser(tokens).program(); }

Program parse(std::string_view source) { return parse_program(tokenize(source)); }

}  // namespace lazylab::func
