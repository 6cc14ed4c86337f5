#include <map>

#include "json.hpp"
#include "lazylab/strategy_lab.hpp"

namespace lazylab::lab {

using ordered_json = nlohmann::ordered_json;

ArgumentStats Metrics::argument(std::string_view name) const {
    ArgumentStats total{std::string(name)};
    for (const auto& [subject, stats] : arguments) {
        if (stats.name == name) {
            total.accesses += stats.accesses;
            total.evaluations += stats.evaluations;
        }
    }
    return total;
}

std::uint64_t Metrics::resolutions_of(std::string_view name) const {
    auto it = resolutions.find(std::string(name));
    return it == resolutions.end() ? 0 : it->second;
}

Metrics aggregate_metrics(std::span<const TraceEvent> events) {
    Metrics m;
    // table label -> variable -> stored text length
    std::map<std::string, std::map<std::string, std::size_t>> tables;
    std::uint64_t current = 0;

    auto argument = [&m](const std::string& subject) -> ArgumentStats& {
        ArgumentStats& a = m.arguments[subject];
        if (a.name.empty()) a.name = subject.substr(0, subject.rfind('#'));
        return a;
    };

    for (const TraceEvent& e : events) {
        switch (e.kind) {
            case TraceKind::EnvCreated: ++m.envs_created; break;
            case TraceKind::EnvDiscarded: ++m.envs_discarded; break;
            case TraceKind::PromiseCreated:
                ++m.promises_created;
                argument(e.subject);
                break;
            case TraceKind::PromiseForced: {
                ++m.forced_value_slots;
                ArgumentStats& a = argument(e.subject);
                ++a.accesses;
                ++a.evaluations;
                break;
            }
            case TraceKind::PromiseCacheHit:
                ++m.cache_hits;
                ++argument(e.subject).accesses;
                break;
            case TraceKind::NameReeval: {
                ++m.name_reevaluations;
                ArgumentStats& a = argument(e.subject);
                ++a.accesses;
                ++a.evaluations;
                break;
            }
            case TraceKind::TableCreated:
                ++m.tables_created;
                tables[e.subject];
                break;
            case TraceKind::TableDeleted: {
                ++m.tables_deleted;
                if (auto it = tables.find(e.subject); it != tables.end()) {
                    for (const auto& [name, len] : it->second) current -= len;
                    tables.erase(it);
                }
                break;
            }
            case TraceKind::VarStored: {
                auto slash = e.subject.find('/');
                std::string label = e.subject.substr(0, slash);
                std::string name = slash == std::string::npos ? std::string() : e.subject.substr(slash + 1);
                std::size_t& len = tables[label][name];
                current = current - len + e.detail.size();
                len = e.detail.size();
                m.stored_text_bytes = std::max<std::uint64_t>(m.stored_text_bytes, current);
                break;
            }
            case TraceKind::VarResolved: ++m.resolutions[e.subject]; break;
            case TraceKind::ArithEval: ++m.arith_evaluations; break;
            case TraceKind::OutputLine: ++m.output_lines; break;
        }
    }
    m.current_text_bytes = current;
    return m;
}

std::string trace_header_json() {
    ordered_json j;
    j["format"] = "lazylab-trace";
    j["version"] = kTraceFormatVersion;
    return j.dump();
}

std::string event_json(const TraceEvent& e) {
    ordered_json j;
    j["ord"] = e.ordinal;
    j["kind"] = std::string(to_string(e.kind));
    j["subject"] = e.subject;
    j["detail"] = e.detail;
    return j.dump();
}

namespace {

ordered_json metrics_object(const Metrics& m) {
    ordered_json j;
    j["promises_created"] = m.promises_created;
    j["forced_value_slots"] = m.forced_value_slots;
    j["cache_hits"] = m.cache_hits;
    j["name_reevaluations"] = m.name_reevaluations;
    j["envs_created"] = m.envs_created;
    j["envs_discarded"] = m.envs_discarded;
    j["tables_created"] = m.tables_created;
    j["tables_deleted"] = m.tables_deleted;
    j["arith_evaluations"] = m.arith_evaluations;
    j["stored_text_bytes"] = m.stored_text_bytes;
    j["output_lines"] = m.output_lines;
    ordered_json args = ordered_json::object();
    for (const auto& [subject, a] : m.arguments) {
        args[subject] = {{"name", a.name}, {"accesses", a.accesses}, {"evaluations", a.evaluations}};
    }
    j["arguments"] = std::move(args);
    ordered_json res = ordered_json::object();
    for (const auto& [name, n] : m.resolutions) res[name] = n;
    j["resolutions"] = std::move(res);
    return j;
}

}  // namespace

std::string metrics_json(const Metrics& m) { return metrics_object(m).dump(); }

std::string trace_jsonl(std::span<const TraceEvent> events, const Metrics& metrics) {
    std::string out = trace_header_json() + "\n";
    for (const auto& e : events) out += event_json(e) + "\n";
    ordered_json last;
    last["metrics"] = metrics_object(metrics);
    out += last.dump() + "\n";
    return out;
}

std::string report_json(const DivergenceReport& r) {
    ordered_json j;
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.first_diff) {
        ordered_json d;
        d["index"] = r.first_diff->index;
        d["left"] = r.first_diff->left ? ordered_json(*r.first_diff->left) : ordered_json(nullptr);
        d["right"] = r.first_diff->right ? ordered_json(*r.first_diff->right) : ordered_json(nullptr);
        j["first_diff"] = std::move(d);
    } else {
        j["first_diff"] = nullptr;
    }
    j["metrics_delta"] = r.metrics_delta;
    return j.dump();
}

}  // namespace lazylab::lab
