#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lazylab/maclang.hpp"
#include "lazylab/strategy_lab.hpp"

namespace lazylab::lab {

std::string to_string(const Engine& engine) {
    if (engine.lang == Lang::Macro) return "macro";
    return "func/" + std::string(func::to_string(engine.strategy));
}

RunRecord run_with_metrics(std::string_view source, const Engine& engine) {
    TraceLog trace;
    RunRecord record;
    try {
        if (engine.lang == Lang::Func) {
            func::Program program = func::parse(source);
            record.lines = func::run_program(program, engine.strategy, &trace).lines;
        } else {
            macro::MacroOutput out = macro::run_session(source, &trace);
            record.lines = std::move(out.log_lines);
            record.symbol_dump_lines = std::move(out.symbol_dump_lines);
        }
    } catch (const Error& e) {
        throw TracedError(e, trace.events());
    }
    record.events = trace.events();
    record.metrics = aggregate_metrics(record.events);
    return record;
}

std::string_view to_string(Verdict v) { return v == Verdict::Equal ? "EQUAL" : "DIVERGED"; }

DivergenceReport diff_outputs(std::span<const std::string> left, std::span<const std::string> right) {
    DivergenceReport r;
    std::size_t n = std::max(left.size(), right.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::optional<std::string> l = i < left.size() ? std::optional(left[i]) : std::nullopt;
        std::optional<std::string> rr = i < right.size() ? std::optional(right[i]) : std::nullopt;
        if (l != rr) {
            r.verdict = Verdict::Diverged;
            r.first_diff = LineDiff{i, std::move(l), std::move(rr)};
            break;
        }
    }
    return r;
}

std::string describe_metrics_delta(const Metrics& left, const Metrics& right) {
    auto evaluations = [](const Metrics& m) {
        std::uint64_t n = 0;
        for (const auto& [s, a] : m.arguments) n += a.evaluations;
        return n;
    };
    auto resolutions = [](const Metrics& m) {
        std::uint64_t n = 0;
        for (const auto& [s, c] : m.resolutions) n += c;
        return n;
    };
    std::ostringstream out;
    bool any = false;
    auto field = [&](std::string_view name, std::uint64_t l, std::uint64_t r) {
        if (l == r) return;
        if (any) out << "; ";
        out << name << ' ' << l << " vs " << r;
        any = true;
    };
    field("argument_evaluations", evaluations(left), evaluations(right));
    field("forced_value_slots", left.forced_value_slots, right.forced_value_slots);
    field("cache_hits", left.cache_hits, right.cache_hits);
    field("name_reevaluations", left.name_reevaluations, right.name_reevaluations);
    field("resolutions", resolutions(left), resolutions(right));
    field("arith_evaluations", left.arith_evaluations, right.arith_evaluations);
    field("stored_text_bytes", left.stored_text_bytes, right.stored_text_bytes);
    field("output_lines", left.output_lines, right.output_lines);
    return any ? out.str() : "none";
}

std::string_view to_string(ProgramPair p) {
    switch (p) {
        case ProgramPair::Program1: return "PROGRAM1";
        case ProgramPair::Program2: return "PROGRAM2";
        case ProgramPair::Program2Name: return "PROGRAM2_NAME";
    }
    return "?";
}

std::optional<ProgramPair> program_pair_from_string(std::string_view name) {
    for (ProgramPair p : {ProgramPair::Program1, ProgramPair::Program2, ProgramPair::Program2Name}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Macro log without `%put _user_` dumps.
std::vector<std::string> program_lines(const RunRecord& r) {
    std::vector<std::string> out;
    std::size_t next_dump = 0;
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
        if (next_dump < r.symbol_dump_lines.size() && r.symbol_dump_lines[next_dump] == i) {
            ++next_dump;
            continue;
        }
        out.push_back(r.lines[i]);
    }
    return out;
}

std::string strip_outer_parens(const std::string& line) {
    if (line.size() >= 2 && line.front() == '(' && line.back() == ')') return line.substr(1, line.size() - 2);
    return line;
}

}  // namespace

PairSources load_pair_sources(const std::filesystem::path& dir) {
    return PairSources{read_file(dir / "r_prog1.fl"), read_file(dir / "r_prog2.fl"), read_file(dir / "sas_prog1.ml"),
                       read_file(dir / "sas_prog2.ml")};
}

DivergenceReport paired_run(ProgramPair pair, const PairSources& sources) {
    RunRecord left;
    RunRecord right;
    switch (pair) {
        case ProgramPair::Program1:
            left = run_with_metrics(sources.r_prog1, Engine::func(func::Strategy::Need));
            right = run_with_metrics(sources.sas_prog1, Engine::macro());
            break;
        case ProgramPair::Program2:
            left = run_with_metrics(sources.r_prog2, Engine::func(func::Strategy::Need));
            right = run_with_metrics(sources.sas_prog2, Engine::macro());
            break;
        case ProgramPair::Program2Name:
            left = run_with_metrics(sources.r_prog2, Engine::func(func::Strategy::Name));
            right = run_with_metrics(sources.sas_prog2, Engine::macro());
            break;
    }
    std::vector<std::string> macro_lines = program_lines(right);
    if (pair == ProgramPair::Program1) {
        for (auto& line : macro_lines) line = strip_outer_parens(line);
    }
    DivergenceReport report = diff_outputs(left.lines, macro_lines);
    report.metrics_delta = describe_metrics_delta(left.metrics, right.metrics);
    return report;
}

std::optional<DivergenceEvidence> confirm_divergence(std::span<const TraceEvent> need_trace,
                                                     std::span<const TraceEvent> name_trace) {
    std::map<std::string, std::vector<std::string>> reevals;
    std::vector<std::string> order;
    for (const auto& e : name_trace) {
        if (e.kind != TraceKind::NameReeval) continue;
        auto& values = reevals[e.subject];
        if (values.empty()) order.push_back(e.subject);
        values.push_back(e.detail);
    }
    for (const std::string& subject : order) {
        const auto& values = reevals[subject];
        bool changed = false;
        for (const auto& v : values) changed = changed || v != values.front();
        if (!changed) continue;
        DivergenceEvidence ev{subject, values, {}, 0};
        bool forced = false;
        bool consistent = true;
        for (const auto& e : need_trace) {
            if (e.subject != subject) continue;
            if (e.kind == TraceKind::PromiseForced) {
                forced = true;
                ev.need_value = e.detail;
            } else if (e.kind == TraceKind::PromiseCacheHit) {
                ++ev.need_cache_hits;
                consistent = consistent && e.detail == ev.need_value;
            }
        }
        if (forced && consistent && ev.need_cache_hits > 0) return ev;
    }
    return std::nullopt;
}

}  // namespace lazylab::lab
