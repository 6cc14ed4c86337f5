#include <cctype>
#include <limits>

#include "lazylab/maclang.hpp"

namespace lazylab::macro {

namespace {

class Arith {
  public:
    explicit Arith(std::string_view text) : s_(text) {}

    std::int64_t run() {
        skip();
        if (i_ >= s_.size()) throw ArithSyntax("%eval of empty text");
        std::int64_t v = sum();
        skip();
        if (i_ < s_.size()) unexpected();
        return v;
    }

  private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    [[noreturn]] void unexpected() const {
        if (i_ >= s_.size()) throw ArithSyntax("incomplete expression in %eval(" + std::string(s_) + ")");
        throw ArithSyntax("required operator or integer operand not found in %eval(" + std::string(s_) +
                          "): unexpected '" + std::string(1, s_[i_]) + "'");
    }

    template <typename Op>
    static std::int64_t checked(Op op, std::int64_t a, std::int64_t b) {
        std::int64_t r = 0;
        if (op(a, b, &r)) throw ArithSyntax("integer overflow in %eval");
        return r;
    }

    static bool add(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_add_overflow(a, b, r); }
    static bool sub(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_sub_overflow(a, b, r); }
    static bool mul(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_mul_overflow(a, b, r); }

    std::int64_t sum() {
        std::int64_t v = product();
        while (true) {
            if (accept('+')) {
                v = checked(add, v, product());
            } else if (accept('-')) {
                v = checked(sub, v, product());
            } else {
                return v;
            }
        }
    }

    std::int64_t product() {
        std::int64_t v = unary();
        while (true) {
            if (accept('*')) {
                v = checked(mul, v, unary());
            } else if (accept('/')) {
                std::int64_t rhs = unary();
                if (rhs == 0) throw DivisionByZero("division by zero in %eval");
                if (v == std::numeric_limits<std::int64_t>::min() && rhs == -1) throw ArithSyntax("integer overflow in %eval");
                v /= rhs;  // C++ integer division truncates toward zero
            } else {
                return v;
            }
        }
    }

    std::int64_t unary() {
        if (accept('-')) return checked(sub, 0, unary());
        if (accept('+')) return unary();
        return primary();
    }

    std::int64_t primary() {
        if (accept('(')) {
            std::int64_t v = sum();
            if (!accept(')')) unexpected();
            return v;
        }
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) unexpected();
        std::int64_t v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = checked(add, checked(mul, v, 10), s_[i_] - '0');
            ++i_;
        }
        if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' || s_[i_] == '_')) {
            throw ArithSyntax("non-integer operand in %eval(" + std::string(s_) + ")");
        }
        return v;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

// Position of the next "%eval" (any case) at or after `from`.
std::size_t find_eval(std::string_view text, std::size_t from) {
    for (std::size_t i = from; i + 5 <= text.size(); ++i) {
        if (text[i] == '%' && to_upper(text.substr(i + 1, 4)) == "EVAL" &&
            (i + 5 == text.size() || !(std::isalnum(static_cast<unsigned char>(text[i + 5])) || text[i + 5] == '_'))) {
            return i;
        }
    }
    return std::string_view::npos;
}

}  // namespace

std::int64_t eval_arith(std::string_view text) { return Arith(text).run(); }

std::string expand_evals(std::string_view text, TraceLog* trace) {
    std::string out;
    std::size_t i = 0;
    while (true) {
        std::size_t at = find_eval(text, i);
        if (at == std::string_view::npos) {
            out.append(text.substr(i));
            return out;
        }
        out.append(text.substr(i, at - i));
        std::size_t open = at + 5;
        while (open < text.size() && std::isspace(static_cast<unsigned char>(text[open]))) ++open;
        if (open >= text.size() || text[open] != '(') throw ArithSyntax("%eval requires a parenthesized argument");
        int depth = 0;
        std::size_t close = open;
        for (; close < text.size(); ++close) {
            if (text[close] == '(') ++depth;
            if (text[close] == ')' && --depth == 0) break;
        }
        if (close >= text.size()) throw ArithSyntax("unbalanced parentheses in %eval");
        std::string inner = expand_evals(text.substr(open + 1, close - open - 1), trace);
        std::string result = std::to_string(eval_arith(inner));
        emit(trace, TraceKind::ArithEval, inner, result);
        out += result;
        i = close + 1;
    }
}

}  // namespace lazylab::macro
