#include <charconv>
#include <cmath>
#include <sstream>

#include "lazylab/syntax.hpp"

namespace lazylab::func {

std::string format_number(double value) {
    if (value == 0) return "0";  // also folds -0
    double integral = 0;
    if (std::modf(value, &integral) == 0 && std::fabs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[400];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

namespace {

bool same(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same_structure(*a, *b);
}

bool same_body(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same_structure(a[i], b[i])) return false;
    }
    return true;
}

struct SameExpr {
    const Expr& other;

    bool operator()(const NumberLit& n) const { return n.value == std::get<NumberLit>(other.node).value; }
    bool operator()(const Ident& n) const { return n.name == std::get<Ident>(other.node).name; }
    bool operator()(const Binary& n) const {
        const auto& o = std::get<Binary>(other.node);
        return n.op == o.op && same(n.lhs, o.lhs) && same(n.rhs, o.rhs);
    }
    bool operator()(const Call& n) const {
        const auto& o = std::get<Call>(other.node);
        if (!same(n.callee, o.callee) || n.args.size() != o.args.size()) return false;
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (n.args[i].name != o.args[i].name || !same(n.args[i].expr, o.args[i].expr)) return false;
        }
        return true;
    }
    bool operator()(const FunctionDef& n) const {
        const auto& o = std::get<FunctionDef>(other.node);
        if (n.params.size() != o.params.size()) return false;
        for (std::size_t i = 0; i < n.params.size(); ++i) {
            if (n.params[i].name != o.params[i].name || !same(n.params[i].default_value, o.params[i].default_value)) {
                return false;
            }
        }
        return same_body(n.body, o.body);
    }
    bool operator()(const VectorCtor& n) const {
        const auto& o = std::get<VectorCtor>(other.node);
        if (n.elements.size() != o.elements.size()) return false;
        for (std::size_t i = 0; i < n.elements.size(); ++i) {
            if (!same(n.elements[i], o.elements[i])) return false;
        }
        return true;
    }
};

int precedence(char op) { return op == '*' || op == '/' ? 2 : 1; }

class Printer {
  public:
    std::string str() const { return out_.str(); }

    void program(const Program& p) {
        for (const auto& s : p.stmts) {
            stmt(s, 0);
        }
    }

    void expr(const Expr& e) {
        std::visit([&](const auto& n) { node(n); }, e.node);
    }

  private:
    void indent(int depth) {
        for (int i = 0; i < depth; ++i) out_ << "  ";
    }

    void stmt(const Stmt& s, int depth) {
        indent(depth);
        depth_ = depth;
        if (const auto* a = std::get_if<Assign>(&s.node)) {
            out_ << a->name << " <- ";
            expr(*a->expr);
        } else if (const auto* e = std::get_if<ExprStmt>(&s.node)) {
            expr(*e->expr);
        } else {
            out_ << "print(";
            expr(*std::get<PrintStmt>(s.node).expr);
            out_ << ")";
        }
        out_ << "\n";
    }

    void node(const NumberLit& n) { out_ << format_number(n.value); }
    void node(const Ident& n) { out_ << n.name; }

    void node(const Binary& n) {
        operand(*n.lhs, precedence(n.op), false);
        out_ << ' ' << n.op << ' ';
        operand(*n.rhs, precedence(n.op), true);
    }

    void operand(const Expr& e, int parent_prec, bool right) {
        const auto* b = std::get_if<Binary>(&e.node);
        bool wrap = b && (precedence(b->op) < parent_prec || (right && precedence(b->op) == parent_prec));
        if (wrap) out_ << '(';
        expr(e);
        if (wrap) out_ << ')';
    }

    void node(const Call& n) {
        // A callee that is itself a compound expression needs grouping.
        bool wrap = std::holds_alternative<Binary>(n.callee->node) || std::holds_alternative<FunctionDef>(n.callee->node);
        if (wrap) out_ << '(';
        expr(*n.callee);
        if (wrap) out_ << ')';
        out_ << '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out_ << ", ";
            if (n.args[i].name) out_ << *n.args[i].name << " = ";
            expr(*n.args[i].expr);
        }
        out_ << ')';
    }

    void node(const FunctionDef& n) {
        out_ << "function(";
        for (std::size_t i = 0; i < n.params.size(); ++i) {
            if (i) out_ << ", ";
            out_ << n.params[i].name;
            if (n.params[i].default_value) {
                out_ << " = ";
                expr(*n.params[i].default_value);
            }
        }
        out_ << ") {\n";
        int saved = depth_;
        for (const auto& s : n.body) stmt(s, saved + 1);
        depth_ = saved;
        indent(saved);
        out_ << '}';
    }

    void node(const VectorCtor& n) {
        out_ << "c(";
        for (std::size_t i = 0; i < n.elements.size(); ++i) {
            if (i) out_ << ", ";
            expr(*n.elements[i]);
        }
        out_ << ')';
    }

    std::ostringstream out_;
    int depth_ = 0;
};

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(SameExpr{b}, a.node);
}

bool same_structure(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            const auto& o = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Assign>) {
                if (s.name != o.name) return false;
            }
            return same(s.expr, o.expr);
        },
        a.node);
}

bool same_structure(const Program& a, const Program& b) { return same_body(a.stmts, b.stmts); }

std::string to_source(const Program& program) {
    Printer p;
    p.program(program);
    return p.str();
}

std::string to_source(const Expr& expr) {
    Printer p;
    p.expr(expr);
    return p.str();
}

}  // namespace lazylab::func
