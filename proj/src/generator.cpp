#include <algorithm>
#include <random>
#include <set>

#include "lazylab/strategy_lab.hpp"

namespace lazylab::lab {

namespace {

struct Param {
    std::string name;
    std::string default_expr;  // empty: no default
};

struct Call {
    std::vector<std::string> args;
    std::string result;  // empty: printed directly
};

struct Shape {
    std::vector<std::string> globals;  // "g1 <- ..." lines
    std::vector<Param> params;
    std::vector<std::string> body;
    std::vector<Call> calls;
    std::vector<std::string> tail;  // after the calls
};

class Gen {
  public:
    Gen(std::uint64_t seed, std::size_t size) : rng_(seed), size_(std::max<std::size_t>(size, 4)) {}

    std::size_t pick(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
    bool chance(std::size_t num, std::size_t den) { return pick(den) < num; }

    std::string literal() { return std::to_string(pick(10)); }

    // Arithmetic over `vars` and small integers, roughly `nodes` leaves.
    // Names actually used are added to `used`.
    std::string expr(const std::vector<std::string>& vars, std::size_t nodes, std::set<std::string>* used) {
        if (nodes <= 1) {
            if (!vars.empty() && chance(2, 3)) {
                const std::string& v = vars[pick(vars.size())];
                if (used) used->insert(v);
                return v;
            }
            return literal();
        }
        std::size_t left = 1 + pick(nodes - 1);
        static const char ops[] = {'+', '-', '*'};
        char op = ops[pick(3)];
        std::string l = expr(vars, left, used);
        std::string r = expr(vars, nodes - left, used);
        if (chance(1, 3)) return "(" + l + " " + op + " " + r + ")";
        return l + " " + op + " " + r;
    }

    std::size_t budget() { return 1 + pick(std::max<std::size_t>(1, size_ / 4)); }

    Shape shape() {
        Shape s;
        std::vector<std::string> globals;
        std::size_t nglobals = 1 + pick(std::min<std::size_t>(6, 1 + size_ / 8));
        for (std::size_t i = 1; i <= nglobals; ++i) {
            std::string name = "g" + std::to_string(i);
            s.globals.push_back(name + " <- " + expr(globals, budget(), nullptr));
            globals.push_back(name);
        }

        std::size_t nparams = 1 + pick(std::min<std::size_t>(4, 1 + size_ / 6));
        std::vector<std::string> scope = globals;
        for (std::size_t i = 1; i <= nparams; ++i) {
            Param p{"p" + std::to_string(i), {}};
            if (chance(2, 3)) p.default_expr = expr(scope, budget(), nullptr);
            scope.push_back(p.name);
            s.params.push_back(std::move(p));
        }

        std::set<std::string> read;
        std::size_t nlocals = pick(1 + size_ / 8);
        for (std::size_t i = 1; i <= nlocals; ++i) {
            std::string name = "v" + std::to_string(i);
            s.body.push_back(name + " <- " + expr(scope, budget(), &read));
            scope.push_back(name);
        }
        if (chance(1, 2)) s.body.push_back("print(" + expr(scope, budget(), &read) + ")");
        // The result reads every parameter not read so far.
        std::string result = expr(scope, budget(), &read);
        for (const auto& p : s.params) {
            if (!read.count(p.name)) result += " + " + p.name;
        }
        s.body.push_back(result);

        std::vector<std::string> callers = globals;
        std::size_t ncalls = 1 + pick(3);
        for (std::size_t k = 1; k <= ncalls; ++k) {
            Call c;
            c.args = call_args(s.params, callers, {});
            if (chance(1, 2)) {
                c.result = "r" + std::to_string(k);
                callers.push_back(c.result);
            }
            s.calls.push_back(std::move(c));
        }
        if (chance(1, 2)) s.tail.push_back(expr(callers, budget(), nullptr));
        return s;
    }

    // Arguments for one call. Parameters without defaults are always
    // supplied; positional ones must fill the leading unfilled slots.
    std::vector<std::string> call_args(const std::vector<Param>& params, const std::vector<std::string>& vars,
                                       const std::set<std::string>& never) {
        std::vector<bool> supplied(params.size());
        std::vector<bool> named(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (never.count(params[i].name)) continue;
            supplied[i] = params[i].default_expr.empty() || chance(1, 2);
            named[i] = supplied[i] && chance(1, 2);
        }
        bool prefix = true;
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (named[i]) continue;
            if (!supplied[i]) prefix = false;
            else if (!prefix) named[i] = true;
        }
        std::vector<std::string> positional;
        std::vector<std::string> keyword;
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (!supplied[i]) continue;
            std::string value = expr(vars, budget(), nullptr);
            if (named[i]) keyword.push_back(params[i].name + " = " + value);
            else positional.push_back(value);
        }
        // Named arguments may appear anywhere; keep it simple and random.
        std::vector<std::string> out = positional;
        for (auto& kw : keyword) out.insert(out.begin() + static_cast<std::ptrdiff_t>(pick(out.size() + 1)), kw);
        return out;
    }

  private:
    std::mt19937_64 rng_;
    std::size_t size_;
};

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string render(const Shape& s) {
    std::string out;
    for (const auto& g : s.globals) out += g + "\n";
    std::vector<std::string> params;
    for (const auto& p : s.params) params.push_back(p.default_expr.empty() ? p.name : p.name + " = " + p.default_expr);
    out += "f <- function(" + join(params, ", ") + ") {\n";
    for (const auto& line : s.body) out += "  " + line + "\n";
    out += "}\n";
    for (const auto& c : s.calls) {
        std::string call = "f(" + join(c.args, ", ") + ")";
        if (c.result.empty()) {
            out += "print(" + call + ")\n";
        } else {
            out += c.result + " <- " + call + "\n";
            out += "print(" + c.result + ")\n";
        }
    }
    for (const auto& t : s.tail) out += t + "\n";
    return out;
}

}  // namespace

std::string generate_program(std::uint64_t seed, std::size_t size) {
    Gen gen(seed, size);
    return render(gen.shape());
}

std::string generate_divergent_program(std::uint64_t seed, std::size_t size) {
    Gen gen(seed, size);
    Shape s = gen.shape();

    if (s.params.size() < 2) s.params.push_back(Param{"p" + std::to_string(s.params.size() + 1), {}});
    // q depends on p through its default; p is always an earlier parameter.
    std::size_t qi = 1 + gen.pick(s.params.size() - 1);
    std::size_t pi = gen.pick(qi);
    Param& q = s.params[qi];
    const std::string& p = s.params[pi].name;
    q.default_expr = p + " * " + std::to_string(2 + gen.pick(8)) + " + " + gen.literal();

    std::vector<std::string> mutation = {"print(" + q.name + ")",
                                         p + " <- " + std::to_string(10 + gen.pick(90)),
                                         "print(" + q.name + ")"};
    s.body.insert(s.body.begin(), mutation.begin(), mutation.end());

    std::vector<std::string> globals;
    for (std::size_t i = 1; i <= s.globals.size(); ++i) globals.push_back("g" + std::to_string(i));
    std::vector<std::string> callers = globals;
    for (auto& c : s.calls) {
        c.args = gen.call_args(s.params, callers, {q.name});
        if (!c.result.empty()) callers.push_back(c.result);
    }
    // Tail expressions may reference results that still exist; keep them.
    return render(s);
}

}  // namespace lazylab::lab
