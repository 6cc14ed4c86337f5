#include <cctype>

#include "lazylab/maclang.hpp"

namespace lazylab::macro {

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::PctMacro: return "PCT_MACRO";
        case TokenKind::PctMend: return "PCT_MEND";
        case TokenKind::PctLet: return "PCT_LET";
        case TokenKind::PctPut: return "PCT_PUT";
        case TokenKind::PctEval: return "PCT_EVAL";
        case TokenKind::MacroCall: return "MACRO_CALL";
        case TokenKind::AmpRef: return "AMP_REF";
        case TokenKind::Ident: return "IDENT";
        case TokenKind::Int: return "INT";
        case TokenKind::Op: return "OP";
        case TokenKind::LParen: return "LPAREN";
        case TokenKind::RParen: return "RPAREN";
        case TokenKind::Equals: return "EQUALS";
        case TokenKind::Semi: return "SEMI";
        case TokenKind::Comma: return "COMMA";
        case TokenKind::Text: return "TEXT";
        case TokenKind::Eof: return "EOF";
    }
    return "?";
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string strip_comments(std::string_view source) {
    std::string out(source);
    SourcePos pos;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == '/' && i + 1 < out.size() && out[i + 1] == '*') {
            SourcePos start = pos;
            std::size_t close = out.find("*/", i + 2);
            if (close == std::string::npos) throw LexError("unterminated comment", start);
            for (std::size_t j = i; j < close + 2; ++j) {
                if (out[j] == '\n') {
                    ++pos.line;
                    pos.col = 1;
                } else {
                    out[j] = ' ';
                    ++pos.col;
                }
            }
            i = close + 1;
            continue;
        }
        if (out[i] == '\n') {
            ++pos.line;
            pos.col = 1;
        } else {
            ++pos.col;
        }
    }
    return out;
}

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool starts_token(char c) {
    return name_start(c) || digit(c) || blank(c) || c == '%' || c == '&' || c == '+' || c == '-' || c == '*' ||
           c == '/' || c == '(' || c == ')' || c == '=' || c == ';' || c == ',';
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && blank(s[b])) ++b;
    while (e > b && blank(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

class Scanner {
  public:
    Scanner(std::string_view src, SourcePos origin) : src_(src), pos_(origin) {}

    std::vector<MacroToken> run() {
        while (true) {
            skip_blank();
            if (i_ >= src_.size()) {
                out_.push_back({TokenKind::Eof, "", pos_, i_, 0});
                return out_;
            }
            char c = src_[i_];
            if (c == '%') {
                percent();
            } else if (c == '&') {
                ampersand();
            } else if (name_start(c)) {
                word(TokenKind::Ident);
            } else if (digit(c)) {
                std::size_t start = i_;
                SourcePos at = pos_;
                while (i_ < src_.size() && digit(src_[i_])) advance();
                push(TokenKind::Int, std::string(src_.substr(start, i_ - start)), at, start);
            } else {
                single_or_text(c);
            }
        }
    }

  private:
    void advance() {
        if (src_[i_] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++i_;
    }

    void skip_blank(bool stop_at_newline = false) {
        while (i_ < src_.size() && blank(src_[i_])) {
            if (stop_at_newline && src_[i_] == '\n') return;
            advance();
        }
    }

    void push(TokenKind kind, std::string text, SourcePos at, std::size_t start) {
        out_.push_back({kind, std::move(text), at, start, i_ - start});
    }

    std::string read_name() {
        std::size_t start = i_;
        while (i_ < src_.size() && name_char(src_[i_])) advance();
        return std::string(src_.substr(start, i_ - start));
    }

    void word(TokenKind kind) {
        SourcePos at = pos_;
        std::size_t start = i_;
        std::string name = read_name();
        push(kind, std::move(name), at, start);
    }

    void percent() {
        SourcePos at = pos_;
        std::size_t start = i_;
        advance();
        if (i_ >= src_.size() || !name_start(src_[i_])) {
            throw LexError("'%' must be followed by a macro keyword or name", at);
        }
        std::string name = read_name();
        std::string upper = to_upper(name);
        if (upper == "MACRO") {
            push(TokenKind::PctMacro, "%" + name, at, start);
        } else if (upper == "MEND") {
            push(TokenKind::PctMend, "%" + name, at, start);
        } else if (upper == "EVAL") {
            push(TokenKind::PctEval, "%" + name, at, start);
        } else if (upper == "LET") {
            push(TokenKind::PctLet, "%" + name, at, start);
            let_tail();
        } else if (upper == "PUT") {
            push(TokenKind::PctPut, "%" + name, at, start);
            put_tail();
        } else {
            push(TokenKind::MacroCall, name, at, start);
        }
    }

    void ampersand() {
        SourcePos at = pos_;
        std::size_t start = i_;
        advance();
        if (i_ >= src_.size() || !name_start(src_[i_])) {
            throw LexError("'&' must be followed by a macro variable name", at);
        }
        std::string name = read_name();
        // `.` delimits a reference from adjacent text: `&x.suffix`.
        if (i_ < src_.size() && src_[i_] == '.') advance();
        push(TokenKind::AmpRef, std::move(name), at, start);
    }

    // `%let name = value ;`: the value is raw text up to the semicolon.
    void let_tail() {
        skip_blank();
        if (i_ >= src_.size() || !name_start(src_[i_])) return;
        word(TokenKind::Ident);
        skip_blank();
        if (i_ >= src_.size() || src_[i_] != '=') return;
        SourcePos eq = pos_;
        std::size_t eq_start = i_;
        advance();
        push(TokenKind::Equals, "=", eq, eq_start);
        raw_text(false);
    }

    // `%put text ;` with the semicolon optional at end of line.
    void put_tail() { raw_text(true); }

    void raw_text(bool newline_ends) {
        skip_blank(newline_ends);
        SourcePos at = pos_;
        std::size_t start = i_;
        while (i_ < src_.size() && src_[i_] != ';' && !(newline_ends && src_[i_] == '\n')) advance();
        push(TokenKind::Text, trim(src_.substr(start, i_ - start)), at, start);
        if (i_ < src_.size() && src_[i_] == ';') {
            SourcePos semi = pos_;
            std::size_t s = i_;
            advance();
            push(TokenKind::Semi, ";", semi, s);
        }
    }

    void single_or_text(char c) {
        SourcePos at = pos_;
        std::size_t start = i_;
        TokenKind kind;
        switch (c) {
            case '+': case '-': case '*': case '/': kind = TokenKind::Op; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case '=': kind = TokenKind::Equals; break;
            case ';': kind = TokenKind::Semi; break;
            case ',': kind = TokenKind::Comma; break;
            default: {
                while (i_ < src_.size() && !starts_token(src_[i_])) advance();
                push(TokenKind::Text, std::string(src_.substr(start, i_ - start)), at, start);
                return;
            }
        }
        advance();
        push(kind, std::string(1, c), at, start);
    }

    std::string_view src_;
    std::size_t i_ = 0;
    SourcePos pos_;
    std::vector<MacroToken> out_;
};

}  // namespace

std::vector<MacroToken> scan(std::string_view source, SourcePos origin) {
    std::string clean = strip_comments(source);
    return Scanner(clean, origin).run();
}

}  // namespace lazylab::macro
