#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lazylab/environments.hpp"
#include "lazylab/trace.hpp"
#include "lazylab/value.hpp"

namespace lazylab::func {

enum class PromiseState { Unforced, Forcing, Forced };

std::string_view to_string(PromiseState state);

/// An unevaluated argument: the expression, the environment to evaluate it
/// in, and a value slot that stays empty until the promise is forced.
struct Promise {
    PromiseId id;
    ExprPtr expr;
    EnvId env;
    std::string label;  // parameter name, used in traces
    PromiseState state = PromiseState::Unforced;
    std::optional<Value> value;
    std::uint64_t force_requests = 0;
    std::uint64_t evaluations = 0;
};

struct PromiseMetrics {
    PromiseState state = PromiseState::Unforced;
    std::uint64_t force_requests = 0;
    std::uint64_t evaluations = 0;

    friend bool operator==(const PromiseMetrics&, const PromiseMetrics&) = default;
};

using PromiseEvaluator = std::function<Value(const ExprPtr&, EnvId)>;

/// Promises created during one run.
class PromiseStore {
  public:
    explicit PromiseStore(const EnvRegistry& envs, TraceLog* trace = nullptr);

    /// Wraps `expr` without evaluating anything. Throws DiscardedEnv.
    PromiseId create(ExprPtr expr, EnvId env, std::string label = {});

    /// Call-by-need access. The first successful force evaluates and caches;
    /// later forces return the cached value without calling `evaluate`.
    /// Forcing a promise whose own evaluation is in progress throws
    /// CyclicForce. A failed evaluation leaves the promise UNFORCED.
    Value force(PromiseId id, const PromiseEvaluator& evaluate);

    /// Call-by-name access: evaluates afresh every time and never fills the
    /// value slot. `evaluations` counts every pass, so the at-most-once
    /// bound does not apply to promises read this way.
    Value reevaluate(PromiseId id, const PromiseEvaluator& evaluate);

    PromiseMetrics metrics(PromiseId id) const;
    const Promise& get(PromiseId id) const;
    const std::vector<Promise>& all() const noexcept { return promises_; }
    std::size_t size() const noexcept { return promises_.size(); }

    /// Number of populated value slots.
    std::size_t forced_value_slots() const;

  private:
    Promise& at(PromiseId id);
    std::string subject(const Promise& p) const;

    const EnvRegistry& envs_;
    std::vector<Promise> promises_;
    TraceLog* trace_;
};

}  // namespace lazylab::func
