#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lazylab/trace.hpp"
#include "lazylab/value.hpp"

namespace lazylab::func {

/// Bound to a parameter that was neither supplied nor defaulted. Reading it
/// raises MissingArgError.
struct MissingArg {
    friend bool operator==(const MissingArg&, const MissingArg&) = default;
};

using Binding = std::variant<Value, PromiseId, MissingArg>;

enum class EnvStatus { Live, Discarded };

struct Environment {
    EnvId id;
    std::optional<EnvId> parent;
    std::map<std::string, Binding, std::less<>> bindings;
    EnvStatus status = EnvStatus::Live;
};

/// All frames of one interpreter run. Frames are never freed during the run:
/// a discarded frame keeps its bindings for inspection but rejects lookups,
/// so handles held by promises and closures never dangle.
class EnvRegistry {
  public:
    explicit EnvRegistry(TraceLog* trace = nullptr);

    /// The root frame, created with the registry. It has no parent and is
    /// never discarded.
    EnvId global() const noexcept { return EnvId{0}; }

    /// New empty frame under a LIVE parent. Throws DiscardedEnv.
    EnvId child(EnvId parent, std::string_view label = {});

    /// Nearest binding along the parent chain. Throws UnboundName when no
    /// frame binds `name` and DiscardedEnv when the walk meets a discarded
    /// frame.
    const Binding& lookup(EnvId env, std::string_view name) const;

    /// Creates or overwrites `name` in exactly this frame.
    void define(EnvId env, std::string name, Binding binding);

    /// Marks a non-global frame DISCARDED. Throws CannotDiscardGlobal or
    /// DiscardedEnv (double discard).
    void discard(EnvId env);

    const Environment& frame(EnvId env) const;
    bool is_live(EnvId env) const { return frame(env).status == EnvStatus::Live; }
    std::size_t size() const noexcept { return frames_.size(); }
    std::size_t discarded_count() const noexcept { return discarded_; }

  private:
    Environment& mutable_frame(EnvId env);
    void require_live(EnvId env) const;

    std::vector<Environment> frames_;
    std::size_t discarded_ = 0;
    TraceLog* trace_;
};

}  // namespace lazylab::func
