#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lazylab {

enum class TraceKind {
    EnvCreated,
    EnvDiscarded,
    PromiseCreated,
    PromiseForced,
    PromiseCacheHit,
    NameReeval,
    TableCreated,
    TableDeleted,
    VarStored,
    VarResolved,
    ArithEval,
    OutputLine,
};

/// Wire name, e.g. "PROMISE_CACHE_HIT".
std::string_view to_string(TraceKind kind);
std::optional<TraceKind> trace_kind_from_string(std::string_view name);

struct TraceEvent {
    std::uint64_t ordinal = 0;
    TraceKind kind = TraceKind::OutputLine;
    std::string subject;
    std::string detail;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Append-only event log owned by a single run. Ordinals start at 1 and are
/// strictly increasing.
class TraceLog {
  public:
    void emit(TraceKind kind, std::string subject, std::string detail = {});

    const std::vector<TraceEvent>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    std::size_t count(TraceKind kind) const;
    std::size_t count(TraceKind kind, std::string_view subject) const;

  private:
    std::vector<TraceEvent> events_;
    std::uint64_t next_ordinal_ = 1;
};

/// Null-tolerant emit helper for components that accept an optional log.
inline void emit(TraceLog* log, TraceKind kind, std::string subject, std::string detail = {}) {
    if (log) log->emit(kind, std::move(subject), std::move(detail));
}

}  // namespace lazylab
