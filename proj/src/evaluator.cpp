#include "lazylab/evaluator.hpp"

#include <array>

namespace lazylab::func {

namespace {

constexpr std::size_t kMaxCallDepth = 2000;

double apply_op(char op, double a, double b) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default:
            if (b == 0) throw DivisionByZero("division by zero");
            return a / b;
    }
}

// Discards an execution environment when the call unwinds, normally or not.
class ExecFrame {
  public:
    ExecFrame(EnvRegistry& envs, EnvId id) : envs_(envs), id_(id) {}
    ~ExecFrame() {
        if (envs_.is_live(id_)) envs_.discard(id_);
    }
    ExecFrame(const ExecFrame&) = delete;
    ExecFrame& operator=(const ExecFrame&) = delete;

  private:
    EnvRegistry& envs_;
    EnvId id_;
};

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::Strict: return "strict";
        case Strategy::Need: return "need";
        case Strategy::Name: return "name";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(std::string_view name) {
    if (name == "strict") return Strategy::Strict;
    if (name == "need") return Strategy::Need;
    if (name == "name") return Strategy::Name;
    return std::nullopt;
}

Interpreter::Interpreter(Strategy strategy, TraceLog* trace)
    : strategy_(strategy), trace_(trace), envs_(trace), promises_(envs_, trace) {}

Output Interpreter::run(const Program& program) {
    Output out;
    bool echo = false;
    for (const Stmt& s : program.stmts) {
        Result r = exec(s, envs_.global());
        echo = false;
        if (std::holds_alternative<ExprStmt>(s.node)) {
            out.result = r.value;
            echo = r.visible;
        }
    }
    if (echo) print_line(format_value(*out.result));
    out.lines = lines_;
    return out;
}

Interpreter::Result Interpreter::exec(const Stmt& s, EnvId env) {
    try {
        if (const auto* a = std::get_if<Assign>(&s.node)) {
            Value v = eval(a->expr, env);
            envs_.define(env, a->name, v);
            return {std::move(v), false};
        }
        if (const auto* e = std::get_if<ExprStmt>(&s.node)) {
            return eval_visible(e->expr, env);
        }
        Value v = eval(std::get<PrintStmt>(s.node).expr, env);
        print_line(format_value(v));
        return {std::move(v), false};
    } catch (Error& err) {
        err.set_pos_if_missing(s.pos);
        throw;
    }
}

Interpreter::Result Interpreter::exec_body(const std::vector<Stmt>& body, EnvId env) {
    Result last{Vec{}, false};
    for (const Stmt& s : body) last = exec(s, env);
    return last;
}

Value Interpreter::eval(const ExprPtr& e, EnvId env) { return eval_visible(e, env).value; }

Interpreter::Result Interpreter::eval_visible(const ExprPtr& e, EnvId env) {
    try {
        const auto& node = e->node;
        if (const auto* n = std::get_if<NumberLit>(&node)) return {Num{n->value}};
        if (const auto* id = std::get_if<Ident>(&node)) return {read(id->name, env)};
        if (const auto* b = std::get_if<Binary>(&node)) return {arithmetic(*b, env)};
        if (const auto* c = std::get_if<Call>(&node)) {
            Value callee = eval(c->callee, env);
            std::string label;
            if (const auto* name = std::get_if<Ident>(&c->callee->node)) label = name->name;
            return apply(callee, c->args, env, label);
        }
        if (std::holds_alternative<FunctionDef>(node)) return {Closure{e, env}};
        const auto& vec = std::get<VectorCtor>(node);
        Vec out;
        for (const ExprPtr& elem : vec.elements) {
            Value v = eval(elem, env);
            if (const auto* n = std::get_if<Num>(&v)) {
                out.elements.push_back(n->value);
            } else if (const auto* inner = std::get_if<Vec>(&v)) {
                out.elements.insert(out.elements.end(), inner->elements.begin(), inner->elements.end());
            } else {
                throw TypeError("cannot combine a function into a vector");
            }
        }
        return {std::move(out)};
    } catch (Error& err) {
        err.set_pos_if_missing(e->pos);
        throw;
    }
}

Value Interpreter::arithmetic(const Binary& b, EnvId env) {
    Value lhs = eval(b.lhs, env);
    Value rhs = eval(b.rhs, env);
    if (std::holds_alternative<Closure>(lhs) || std::holds_alternative<Closure>(rhs)) {
        throw TypeError(std::string("non-numeric argument to binary operator '") + b.op + "'");
    }
    if (const auto* l = std::get_if<Num>(&lhs)) {
        if (const auto* r = std::get_if<Num>(&rhs)) return Num{apply_op(b.op, l->value, r->value)};
    }
    // Element-wise, with a scalar operand broadcast over the vector.
    auto elems = [](const Value& v) {
        if (const auto* n = std::get_if<Num>(&v)) return std::vector<double>{n->value};
        return std::get<Vec>(v).elements;
    };
    std::vector<double> l = elems(lhs);
    std::vector<double> r = elems(rhs);
    bool l_scalar = std::holds_alternative<Num>(lhs);
    bool r_scalar = std::holds_alternative<Num>(rhs);
    if (!l_scalar && !r_scalar && l.size() != r.size()) {
        throw TypeError("vector lengths differ (" + std::to_string(l.size()) + " vs " + std::to_string(r.size()) + ")");
    }
    std::size_t n = l_scalar ? r.size() : l.size();
    Vec out;
    out.elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.elements.push_back(apply_op(b.op, l_scalar ? l[0] : l[i], r_scalar ? r[0] : r[i]));
    }
    return out;
}

Value Interpreter::read(std::string_view name, EnvId env) {
    // Copy: forcing may insert into the frame that holds the binding.
    Binding b = envs_.lookup(env, name);
    if (auto* v = std::get_if<Value>(&b)) return std::move(*v);
    if (std::holds_alternative<MissingArg>(b)) {
        throw MissingArgError("argument \"" + std::string(name) + "\" is missing, with no default");
    }
    PromiseId p = std::get<PromiseId>(b);
    PromiseEvaluator evaluate = [this](const ExprPtr& e, EnvId at) { return eval(e, at); };
    if (strategy_ == Strategy::Name) return promises_.reevaluate(p, evaluate);
    return promises_.force(p, evaluate);
}

Value Interpreter::call(const Value& callee, std::span<const Arg> args, EnvId caller) {
    return apply(callee, args, caller, {}).value;
}

Interpreter::Result Interpreter::apply(const Value& callee, std::span<const Arg> args, EnvId caller,
                                       std::string_view label) {
    const auto* closure = std::get_if<Closure>(&callee);
    if (!closure) throw TypeError("attempt to apply non-function (" + std::string(type_name(callee)) + ")");
    if (depth_ >= kMaxCallDepth) throw DepthExceeded("function calls nested too deeply");

    Closure fn = *closure;
    EnvId exec = envs_.child(fn.defined_in, label.empty() ? std::string("call") : "call " + std::string(label));
    ExecFrame frame(envs_, exec);
    ++depth_;
    struct DepthGuard {
        std::size_t& d;
        ~DepthGuard() { --d; }
    } depth_guard{depth_};

    bind_parameters(fn.def(), args, caller, exec);
    if (call_hook_) call_hook_(exec);
    return exec_body(fn.def().body, exec);
}

void Interpreter::bind_parameters(const FunctionDef& def, std::span<const Arg> args, EnvId caller, EnvId exec) {
    std::vector<const Arg*> supplied(def.params.size(), nullptr);
    for (const Arg& a : args) {
        if (!a.name) continue;
        std::size_t i = 0;
        while (i < def.params.size() && def.params[i].name != *a.name) ++i;
        if (i == def.params.size()) throw ArityError("unused argument (" + *a.name + " = ...)");
        supplied[i] = &a;
    }
    std::size_t next = 0;
    for (const Arg& a : args) {
        if (a.name) continue;
        while (next < supplied.size() && supplied[next]) ++next;
        if (next == supplied.size()) throw ArityError("unused argument (" + to_source(*a.expr) + ")");
        supplied[next++] = &a;
    }

    for (std::size_t i = 0; i < def.params.size(); ++i) {
        const Param& param = def.params[i];
        Binding b = MissingArg{};
        if (const Arg* a = supplied[i]) {
            if (strategy_ == Strategy::Strict) {
                b = eval(a->expr, caller);
            } else {
                b = promises_.create(a->expr, caller, param.name);
            }
        } else if (param.default_value) {
            if (strategy_ == Strategy::Strict) {
                b = eval(param.default_value, exec);
            } else {
                b = promises_.create(param.default_value, exec, param.name);
            }
        }
        envs_.define(exec, param.name, std::move(b));
    }
}

void Interpreter::print_line(std::string line) {
    emit(trace_, TraceKind::OutputLine, "stdout", line);
    lines_.push_back(std::move(line));
}

Output run_program(const Program& program, Strategy strategy, TraceLog* trace) {
    Interpreter interp(strategy, trace);
    return interp.run(program);
}

}  // namespace lazylab::func
