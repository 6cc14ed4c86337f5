#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lazylab/error.hpp"
#include "lazylab/evaluator.hpp"
#include "lazylab/trace.hpp"

namespace lazylab::lab {

// ---------------------------------------------------------------------------
// Metrics

struct ArgumentStats {
    std::string name;  // parameter name
    std::uint64_t accesses = 0;
    std::uint64_t evaluations = 0;
};

/// Aggregate counters derived from a trace.
struct Metrics {
    std::map<std::string, ArgumentStats> arguments;     // keyed by promise subject "name#id"
    std::map<std::string, std::uint64_t> resolutions;   // macro variable -> VAR_RESOLVED count
    std::uint64_t promises_created = 0;
    std::uint64_t forced_value_slots = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t name_reevaluations = 0;
    std::uint64_t arith_evaluations = 0;
    std::uint64_t envs_created = 0;
    std::uint64_t envs_discarded = 0;
    std::uint64_t tables_created = 0;
    std::uint64_t tables_deleted = 0;
    std::uint64_t stored_text_bytes = 0;   // peak over the run
    std::uint64_t current_text_bytes = 0;  // at the end of the trace
    std::uint64_t output_lines = 0;

    /// Sums over every promise for parameter `name`.
    ArgumentStats argument(std::string_view name) const;
    std::uint64_t resolutions_of(std::string_view name) const;
};

Metrics aggregate_metrics(std::span<const TraceEvent> events);

// ---------------------------------------------------------------------------
// Running

enum class Lang { Func, Macro };

struct Engine {
    Lang lang = Lang::Func;
    func::Strategy strategy = func::Strategy::Need;

    static Engine func(func::Strategy s) { return {Lang::Func, s}; }
    static Engine macro() { return {Lang::Macro, func::Strategy::Need}; }
};

std::string to_string(const Engine& engine);

struct RunRecord {
    std::vector<std::string> lines;
    Metrics metrics;
    std::vector<TraceEvent> events;
    std::vector<std::size_t> symbol_dump_lines;  // macro runs only
};

/// An engine error together with the trace recorded up to the failure.
class TracedError : public Error {
  public:
    TracedError(const Error& cause, std::vector<TraceEvent> partial)
        : Error(cause.kind(), cause.what(), cause.pos()), partial_trace_(std::move(partial)) {}
    const std::vector<TraceEvent>& partial_trace() const noexcept { return partial_trace_; }

  private:
    std::vector<TraceEvent> partial_trace_;
};

/// Parses and runs `source` under `engine`, recording a trace. Engine errors
/// are rethrown as TracedError.
RunRecord run_with_metrics(std::string_view source, const Engine& engine);

// ---------------------------------------------------------------------------
// Comparing

enum class Verdict { Equal, Diverged };

std::string_view to_string(Verdict v);

struct LineDiff {
    std::size_t index = 0;  // 0-based
    std::optional<std::string> left;
    std::optional<std::string> right;
};

struct DivergenceReport {
    Verdict verdict = Verdict::Equal;
    std::optional<LineDiff> first_diff;
    std::string metrics_delta;  // human-readable counter comparison, empty when unknown
};

DivergenceReport diff_outputs(std::span<const std::string> left, std::span<const std::string> right);

/// "evaluations 1 vs 2; ..." for the counters that differ.
std::string describe_metrics_delta(const Metrics& left, const Metrics& right);

enum class ProgramPair { Program1, Program2, Program2Name };

std::string_view to_string(ProgramPair p);
std::optional<ProgramPair> program_pair_from_string(std::string_view name);

/// Source texts of the four paired programs.
struct PairSources {
    std::string r_prog1;
    std::string r_prog2;
    std::string sas_prog1;
    std::string sas_prog2;
};

/// Reads r_prog1.fl, r_prog2.fl, sas_prog1.ml and sas_prog2.ml from `dir`.
/// Throws std::runtime_error naming the missing file.
PairSources load_pair_sources(const std::filesystem::path& dir);

/// PROGRAM1: funclang need vs maclang; PROGRAM2: same for program 2;
/// PROGRAM2_NAME: funclang name vs maclang. Macro symbol-table dumps are
/// excluded, and for PROGRAM1 the outer parentheses of the macro line are
/// stripped before comparing.
DivergenceReport paired_run(ProgramPair pair, const PairSources& sources);

// ---------------------------------------------------------------------------
// Program generation

/// A deterministic program from the strategy-agreement fragment:
/// single-assignment variables, assignments before reads, one function whose
/// parameters are all read, no division. `size` is a rough node budget.
std::string generate_program(std::uint64_t seed, std::size_t size);

/// generate_program plus a mutation: a parameter whose default depends on
/// another parameter is read twice with a reassignment of that dependency
/// in between. Need and name disagree whenever the default's value changes.
std::string generate_divergent_program(std::uint64_t seed, std::size_t size);

/// Trace evidence that a need/name divergence comes from re-evaluation: a
/// promise that name re-evaluated to different values while need forced it
/// once and then served it from the cache.
struct DivergenceEvidence {
    std::string subject;
    std::vector<std::string> name_values;  // in access order
    std::string need_value;
    std::uint64_t need_cache_hits = 0;
};

std::optional<DivergenceEvidence> confirm_divergence(std::span<const TraceEvent> need_trace,
                                                     std::span<const TraceEvent> name_trace);

// ---------------------------------------------------------------------------
// Serialization (JSON lines, "lazylab-trace" version 1)

inline constexpr int kTraceFormatVersion = 1;

std::string trace_header_json();
std::string event_json(const TraceEvent& e);
std::string metrics_json(const Metrics& m);
/// Header record, one record per event, then {"metrics": {...}}.
std::string trace_jsonl(std::span<const TraceEvent> events, const Metrics& metrics);
std::string report_json(const DivergenceReport& r);

}  // namespace lazylab::lab
