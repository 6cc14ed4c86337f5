#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lazylab/environments.hpp"
#include "lazylab/promises.hpp"
#include "lazylab/syntax.hpp"
#include "lazylab/trace.hpp"
#include "lazylab/value.hpp"

namespace lazylab::func {

/// How arguments reach a function body.
enum class Strategy {
    Strict,  // call-by-value: evaluated once, at call time
    Need,    // call-by-need: promise, evaluated on first read and cached
    Name,    // call-by-name: promise expression re-evaluated on every read
};

std::string_view to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view name);

struct Output {
    std::vector<std::string> lines;
    std::optional<Value> result;  // value of the last top-level expression statement
};

/// One interpreter run: owns the environment registry and promise store.
/// Not thread-safe; independent interpreters share nothing.
class Interpreter {
  public:
    explicit Interpreter(Strategy strategy, TraceLog* trace = nullptr);

    Interpreter(const Interpreter&) = delete;
    Interpreter& operator=(const Interpreter&) = delete;

    /// Executes `program` in the global environment. Output lines are the
    /// `print` statements in order, followed by the final result echo: the
    /// value of the last top-level statement when it is a visible expression
    /// statement (assignments and `print` results are invisible).
    Output run(const Program& program);

    Value eval(const ExprPtr& e, EnvId env);

    /// Applies a closure. Named arguments bind by exact name, the rest
    /// positionally to the parameters still unfilled.
    Value call(const Value& callee, std::span<const Arg> args, EnvId caller);

    /// Invoked after a call has bound its parameters and before the first
    /// body statement runs.
    void on_call_entered(std::function<void(EnvId exec_env)> hook) { call_hook_ = std::move(hook); }

    Strategy strategy() const noexcept { return strategy_; }
    const EnvRegistry& envs() const noexcept { return envs_; }
    EnvRegistry& envs() noexcept { return envs_; }
    const PromiseStore& promises() const noexcept { return promises_; }
    PromiseStore& promises() noexcept { return promises_; }

  private:
    struct Result {
        Value value;
        bool visible = true;
    };

    Result exec(const Stmt& s, EnvId env);
    Result exec_body(const std::vector<Stmt>& body, EnvId env);
    Result eval_visible(const ExprPtr& e, EnvId env);
    Value arithmetic(const Binary& b, EnvId env);
    Value read(std::string_view name, EnvId env);
    Result apply(const Value& callee, std::span<const Arg> args, EnvId caller, std::string_view label);
    void bind_parameters(const FunctionDef& def, std::span<const Arg> args, EnvId caller, EnvId exec);
    void print_line(std::string line);

    Strategy strategy_;
    TraceLog* trace_;
    EnvRegistry envs_;
    PromiseStore promises_;
    std::vector<std::string> lines_;
    std::function<void(EnvId)> call_hook_;
    std::size_t depth_ = 0;
};

/// Parses nothing; runs an already parsed program in a fresh interpreter.
Output run_program(const Program& program, Strategy strategy, TraceLog* trace = nullptr);

}  // namespace lazylab::func
