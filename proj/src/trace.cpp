#include "lazylab/trace.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace lazylab {

namespace {

constexpr std::array<std::pair<TraceKind, std::string_view>, 12> kKindNames{{
    {TraceKind::EnvCreated, "ENV_CREATED"},
    {TraceKind::EnvDiscarded, "ENV_DISCARDED"},
    {TraceKind::PromiseCreated, "PROMISE_CREATED"},
    {TraceKind::PromiseForced, "PROMISE_FORCED"},
    {TraceKind::PromiseCacheHit, "PROMISE_CACHE_HIT"},
    {TraceKind::NameReeval, "NAME_REEVAL"},
    {TraceKind::TableCreated, "TABLE_CREATED"},
    {TraceKind::TableDeleted, "TABLE_DELETED"},
    {TraceKind::VarStored, "VAR_STORED"},
    {TraceKind::VarResolved, "VAR_RESOLVED"},
    {TraceKind::ArithEval, "ARITH_EVAL"},
    {TraceKind::OutputLine, "OUTPUT_LINE"},
}};

}  // namespace

std::string_view to_string(TraceKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "UNKNOWN";
}

std::optional<TraceKind> trace_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

void TraceLog::emit(TraceKind kind, std::string subject, std::string detail) {
    events_.push_back(TraceEvent{next_ordinal_++, kind, std::move(subject), std::move(detail)});
}

std::size_t TraceLog::count(TraceKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(), [&](const TraceEvent& e) { return e.kind == kind; }));
}

std::size_t TraceLog::count(TraceKind kind, std::string_view subject) const {
    return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(), [&](const TraceEvent& e) {
        return e.kind == kind && e.subject == subject;
    }));
}

}  // namespace lazylab
