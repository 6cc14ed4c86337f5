#include <cctype>
#include <charconv>

#include "lazylab/syntax.hpp"

namespace lazylab::func {

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Number: return "NUMBER";
        case TokenKind::Ident: return "IDENT";
        case TokenKind::Assign: return "ASSIGN";
        case TokenKind::Op: return "OP";
        case TokenKind::LParen: return "LPAREN";
        case TokenKind::RParen: return "RPAREN";
        case TokenKind::LBrace: return "LBRACE";
        case TokenKind::RBrace: return "RBRACE";
        case TokenKind::Comma: return "COMMA";
        case TokenKind::KwFunction: return "KW_FUNCTION";
        case TokenKind::Eof: return "EOF";
    }
    return "?";
}

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<SrcToken> run() {
        std::vector<SrcToken> out;
        while (true) {
            bool broke = skip_blank();
            SourcePos at = pos_;
            std::size_t first = out.size();
            if (i_ >= src_.size()) {
                out.push_back({TokenKind::Eof, "", at, true});
                return out;
            }
            char c = src_[i_];
            if (is_digit(c) || (c == '.' && i_ + 1 < src_.size() && is_digit(src_[i_ + 1]))) {
                out.push_back({TokenKind::Number, number(), at});
            } else if (ident_start(c)) {
                std::string word = take_while(ident_char);
                auto kind = word == "function" ? TokenKind::KwFunction : TokenKind::Ident;
                out.push_back({kind, std::move(word), at});
            } else if (c == '<' && peek(1) == '-') {
                advance();
                advance();
                out.push_back({TokenKind::Assign, "<-", at});
            } else {
                TokenKind kind;
                switch (c) {
                    case '=': kind = TokenKind::Assign; break;
                    case '+': case '-': case '*': case '/': kind = TokenKind::Op; break;
                    case '(': kind = TokenKind::LParen; break;
                    case ')': kind = TokenKind::RParen; break;
                    case '{': kind = TokenKind::LBrace; break;
                    case '}': kind = TokenKind::RBrace; break;
                    case ',': kind = TokenKind::Comma; break;
                    default: {
                        std::string shown(1, c);
                        throw LexError("unexpected character '" + shown + "'", at);
                    }
                }
                advance();
                out.push_back({kind, std::string(1, c), at});
            }
            out[first].newline_before = broke || first == 0;
        }
    }

  private:
    char peek(std::size_t ahead) const {
        return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
    }

    void advance() {
        if (src_[i_] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++i_;
    }

    bool skip_blank() {
        bool broke = false;
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '\n' || c == ';') {
                // `;` separates statements exactly like a newline does.
                broke = true;
                advance();
            } else {
                break;
            }
        }
        return broke;
    }

    template <typename Pred>
    std::string take_while(Pred pred) {
        std::size_t start = i_;
        while (i_ < src_.size() && pred(src_[i_])) advance();
        return std::string(src_.substr(start, i_ - start));
    }

    std::string number() {
        SourcePos at = pos_;
        std::string text = take_while(is_digit);
        if (i_ < src_.size() && src_[i_] == '.') {
            advance();
            text += '.';
            std::string frac = take_while(is_digit);
            text += frac;
        }
        if (i_ < src_.size() && ident_start(src_[i_]) && src_[i_] != '.') {
            std::string shown(1, src_[i_]);
            throw LexError("unexpected character '" + shown + "' in number", pos_);
        }
        if (i_ < src_.size() && src_[i_] == '.') {
            throw LexError("malformed number '" + text + ".'", at);
        }
        return text;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

}  // namespace

std::vector<SrcToken> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace lazylab::func
