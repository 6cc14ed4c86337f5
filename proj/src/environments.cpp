#include "lazylab/environments.hpp"

#include <stdexcept>

namespace lazylab::func {

EnvRegistry::EnvRegistry(TraceLog* trace) : trace_(trace) {
    frames_.push_back(Environment{EnvId{0}, std::nullopt, {}, EnvStatus::Live});
}

const Environment& EnvRegistry::frame(EnvId env) const {
    if (env.value >= frames_.size()) throw std::out_of_range("unknown environment " + to_string(env));
    return frames_[env.value];
}

Environment& EnvRegistry::mutable_frame(EnvId env) {
    if (env.value >= frames_.size()) throw std::out_of_range("unknown environment " + to_string(env));
    return frames_[env.value];
}

void EnvRegistry::require_live(EnvId env) const {
    if (frame(env).status == EnvStatus::Discarded) {
        throw DiscardedEnv("environment " + to_string(env) + " has been discarded");
    }
}

EnvId EnvRegistry::child(EnvId parent, std::string_view label) {
    require_live(parent);
    EnvId id{static_cast<std::uint32_t>(frames_.size())};
    frames_.push_back(Environment{id, parent, {}, EnvStatus::Live});
    std::string detail = "parent=" + to_string(parent);
    if (!label.empty()) detail += " " + std::string(label);
    emit(trace_, TraceKind::EnvCreated, to_string(id), std::move(detail));
    return id;
}

const Binding& EnvRegistry::lookup(EnvId env, std::string_view name) const {
    // Parent links always point at older frames, so the walk terminates.
    std::optional<EnvId> at = env;
    while (at) {
        const Environment& f = frame(*at);
        if (f.status == EnvStatus::Discarded) {
            throw DiscardedEnv("lookup of '" + std::string(name) + "' reached discarded " + to_string(f.id));
        }
        if (auto it = f.bindings.find(name); it != f.bindings.end()) return it->second;
        at = f.parent;
    }
    throw UnboundName("object '" + std::string(name) + "' not found");
}

void EnvRegistry::define(EnvId env, std::string name, Binding binding) {
    require_live(env);
    mutable_frame(env).bindings.insert_or_assign(std::move(name), std::move(binding));
}

void EnvRegistry::discard(EnvId env) {
    if (env == global()) throw CannotDiscardGlobal("the global environment cannot be discarded");
    require_live(env);
    mutable_frame(env).status = EnvStatus::Discarded;
    ++discarded_;
    emit(trace_, TraceKind::EnvDiscarded, to_string(env));
}

}  // namespace lazylab::func
