#include "lazylab/promises.hpp"

#include <algorithm>
#include <stdexcept>

namespace lazylab::func {

std::string_view to_string(PromiseState state) {
    switch (state) {
        case PromiseState::Unforced: return "UNFORCED";
        case PromiseState::Forcing: return "FORCING";
        case PromiseState::Forced: return "FORCED";
    }
    return "?";
}

PromiseStore::PromiseStore(const EnvRegistry& envs, TraceLog* trace) : envs_(envs), trace_(trace) {}

Promise& PromiseStore::at(PromiseId id) {
    if (id.value >= promises_.size()) throw std::out_of_range("unknown " + to_string(id));
    return promises_[id.value];
}

const Promise& PromiseStore::get(PromiseId id) const {
    if (id.value >= promises_.size()) throw std::out_of_range("unknown " + to_string(id));
    return promises_[id.value];
}

// Trace subject: "<param>#<id>", unique per promise within a run.
std::string PromiseStore::subject(const Promise& p) const {
    return (p.label.empty() ? std::string("arg") : p.label) + "#" + std::to_string(p.id.value);
}

PromiseId PromiseStore::create(ExprPtr expr, EnvId env, std::string label) {
    if (!envs_.is_live(env)) {
        throw DiscardedEnv("cannot create a promise over discarded " + to_string(env));
    }
    PromiseId id{static_cast<std::uint32_t>(promises_.size())};
    Promise fresh;
    fresh.id = id;
    fresh.expr = std::move(expr);
    fresh.env = env;
    fresh.label = std::move(label);
    promises_.push_back(std::move(fresh));
    const Promise& p = promises_.back();
    emit(trace_, TraceKind::PromiseCreated, subject(p), to_source(*p.expr) + " in " + to_string(env));
    return id;
}

namespace {

// Marks a promise FORCING for the duration of its evaluation and restores
// UNFORCED unless the evaluation completed. Holds an index, not a reference:
// the evaluation may grow the store.
class ForcingGuard {
  public:
    ForcingGuard(std::vector<Promise>& store, std::size_t index) : store_(store), index_(index) {
        store_[index_].state = PromiseState::Forcing;
    }
    ~ForcingGuard() {
        if (store_[index_].state == PromiseState::Forcing) store_[index_].state = PromiseState::Unforced;
    }
    ForcingGuard(const ForcingGuard&) = delete;
    ForcingGuard& operator=(const ForcingGuard&) = delete;

  private:
    std::vector<Promise>& store_;
    std::size_t index_;
};

}  // namespace

Value PromiseStore::force(PromiseId id, const PromiseEvaluator& evaluate) {
    Promise& p = at(id);
    ++p.force_requests;
    if (p.state == PromiseState::Forced) {
        emit(trace_, TraceKind::PromiseCacheHit, subject(p), format_value(*p.value));
        return *p.value;
    }
    if (p.state == PromiseState::Forcing) {
        throw CyclicForce("promise already under evaluation: " + subject(p) +
                          " (recursive default argument reference?)");
    }
    Value v;
    {
        ExprPtr expr = p.expr;
        EnvId env = p.env;
        ForcingGuard guard(promises_, id.value);
        // `p` may dangle from here on.
        v = evaluate(expr, env);
        Promise& done = at(id);
        done.value = v;
        done.state = PromiseState::Forced;
        done.evaluations = 1;
    }
    emit(trace_, TraceKind::PromiseForced, subject(at(id)), format_value(v));
    return v;
}

Value PromiseStore::reevaluate(PromiseId id, const PromiseEvaluator& evaluate) {
    Promise& p = at(id);
    ++p.force_requests;
    if (p.state == PromiseState::Forcing) {
        throw CyclicForce("promise already under evaluation: " + subject(p) +
                          " (recursive default argument reference?)");
    }
    ExprPtr expr = p.expr;
    EnvId env = p.env;
    Value v;
    {
        ForcingGuard guard(promises_, id.value);
        v = evaluate(expr, env);
    }
    Promise& done = at(id);
    ++done.evaluations;
    emit(trace_, TraceKind::NameReeval, subject(done), format_value(v));
    return v;
}

PromiseMetrics PromiseStore::metrics(PromiseId id) const {
    const Promise& p = get(id);
    return PromiseMetrics{p.state, p.force_requests, p.evaluations};
}

std::size_t PromiseStore::forced_value_slots() const {
    return static_cast<std::size_t>(
        std::count_if(promises_.begin(), promises_.end(), [](const Promise& p) { return p.value.has_value(); }));
}

}  // namespace lazylab::func
