// Acceptance suite: one PASS/FAIL line per criterion.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "lazylab/maclang.hpp"
#include "lazylab/strategy_lab.hpp"

using namespace lazylab;
using func::Strategy;
using Lines = std::vector<std::string>;

namespace {

constexpr std::uint64_t kSeeds = 500;

std::size_t corpus_size(std::uint64_t seed) { return 6 + seed % 30; }

lab::PairSources pair_sources() { return lab::load_pair_sources(LAZYLAB_PROGRAMS_DIR); }

std::string read_program(const std::string& name) {
    std::ifstream in(std::string(LAZYLAB_PROGRAMS_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

Check golden_r1() {
    Check c;
    auto r = lab::run_with_metrics(pair_sources().r_prog1, lab::Engine::func(Strategy::Need));
    c.require(r.lines == Lines{"2 20 7"}, "output differs from \"2 20 7\"");
    return c;
}

Check golden_sas1() {
    Check c;
    auto r = lab::run_with_metrics(pair_sources().sas_prog1, lab::Engine::macro());
    bool found = false;
    for (const auto& l : r.lines) found = found || l == "(2 20 7)";
    c.require(found, "no log line \"(2 20 7)\"");
    return c;
}

Check golden_r2() {
    Check c;
    auto r = lab::run_with_metrics(pair_sources().r_prog2, lab::Engine::func(Strategy::Need));
    c.require(r.lines == Lines{"20", "20"}, "output differs from 20 / 20");
    auto y = r.metrics.argument("y");
    c.require(y.accesses == 2, "y accesses " + std::to_string(y.accesses));
    c.require(y.evaluations == 1, "y evaluations " + std::to_string(y.evaluations));
    c.require(r.metrics.cache_hits >= 1, "no cache hit");
    return c;
}

Check golden_sas2() {
    Check c;
    auto r = lab::run_with_metrics(pair_sources().sas_prog2, lab::Engine::macro());
    c.require(r.lines == Lines{"20", "100"}, "output differs from 20 / 100");
    c.require(r.metrics.resolutions_of("Y") == 2, "Y resolutions " + std::to_string(r.metrics.resolutions_of("Y")));
    return c;
}

Check correspondence() {
    Check c;
    auto s = pair_sources();
    auto name = lab::run_with_metrics(s.r_prog2, lab::Engine::func(Strategy::Name));
    auto mac = lab::run_with_metrics(s.sas_prog2, lab::Engine::macro());
    c.require(name.lines == Lines{"20", "100"}, "name output differs from 20 / 100");
    c.require(name.lines == mac.lines, "name output differs from the macro log");
    std::istringstream in;
    std::ostringstream out, err;
    int code = cli::run_cli({"lazylab", "pairs", "--programs", LAZYLAB_PROGRAMS_DIR}, in, out, err);
    c.require(code == 0, "pairs exited " + std::to_string(code) + ": " + out.str() + err.str());
    c.require(lab::paired_run(lab::ProgramPair::Program1, s).verdict == lab::Verdict::Equal, "PROGRAM1 not EQUAL");
    c.require(lab::paired_run(lab::ProgramPair::Program2, s).verdict == lab::Verdict::Diverged, "PROGRAM2 not DIVERGED");
    c.require(lab::paired_run(lab::ProgramPair::Program2Name, s).verdict == lab::Verdict::Equal,
              "PROGRAM2_NAME not EQUAL");
    return c;
}

Check env_lifecycle() {
    Check c;
    TraceLog trace;
    func::Interpreter interp(Strategy::Need, &trace);
    interp.run(func::parse(read_program("env_lifecycle.fl")));
    std::optional<std::uint64_t> created, discarded;
    for (const auto& e : trace.events()) {
        if (e.subject != "env#1") continue;
        if (e.kind == TraceKind::EnvCreated) created = e.ordinal;
        if (e.kind == TraceKind::EnvDiscarded) discarded = e.ordinal;
    }
    c.require(created && discarded && *created < *discarded, "no ENV_CREATED then ENV_DISCARDED for env#1");
    c.require(trace.count(TraceKind::EnvCreated) == 1, "more than one execution env");
    const auto& g = interp.envs().frame(interp.envs().global()).bindings;
    auto number = [&](const char* n) -> std::optional<double> {
        auto it = g.find(n);
        if (it == g.end()) return std::nullopt;
        const auto* v = std::get_if<func::Value>(&it->second);
        const auto* num = v ? std::get_if<func::Num>(v) : nullptr;
        return num ? std::optional(num->value) : std::nullopt;
    };
    c.require(g.size() == 3, "global has " + std::to_string(g.size()) + " bindings");
    c.require(number("y") == 6.0, "y is not 6");
    c.require(number("z") == 3.0, "z is not 3");
    auto h = g.find("h");
    c.require(h != g.end() && std::holds_alternative<func::Value>(h->second) &&
                  std::holds_alternative<func::Closure>(std::get<func::Value>(h->second)),
              "h is not a closure");
    return c;
}

Check laziness() {
    Check c;
    std::string src = read_program("unused_default.fl");
    for (Strategy s : {Strategy::Need, Strategy::Name}) {
        try {
            lab::run_with_metrics(src, lab::Engine::func(s));
        } catch (const Error& e) {
            c.require(false, std::string(func::to_string(s)) + " failed: " + e.what());
        }
    }
    try {
        lab::run_with_metrics(src, lab::Engine::func(Strategy::Strict));
        c.require(false, "strict succeeded");
    } catch (const Error& e) {
        c.require(e.kind() == ErrorKind::UnboundName, std::string("strict raised ") + std::string(to_string(e.kind())));
    }
    return c;
}

Check at_most_once() {
    Check c;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        std::string src = lab::generate_program(seed, corpus_size(seed));
        func::Interpreter need(Strategy::Need);
        need.run(func::parse(src));
        for (const auto& p : need.promises().all()) {
            c.require(p.evaluations <= 1, "seed " + std::to_string(seed) + ": promise evaluated twice");
        }
        auto need_m = lab::run_with_metrics(src, lab::Engine::func(Strategy::Need)).metrics;
        auto name_m = lab::run_with_metrics(src, lab::Engine::func(Strategy::Name)).metrics;
        for (const auto& [subject, a] : need_m.arguments) {
            c.require(a.evaluations <= name_m.argument(a.name).evaluations,
                      "seed " + std::to_string(seed) + ": need evaluates " + a.name + " more than name");
        }
    }
    return c;
}

Check agreement() {
    Check c;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        std::string src = lab::generate_program(seed, corpus_size(seed));
        auto strict = lab::run_with_metrics(src, lab::Engine::func(Strategy::Strict)).lines;
        auto need = lab::run_with_metrics(src, lab::Engine::func(Strategy::Need)).lines;
        auto name = lab::run_with_metrics(src, lab::Engine::func(Strategy::Name)).lines;
        c.require(need == strict && name == strict, "seed " + std::to_string(seed) + " disagrees");
    }
    for (std::uint64_t block = 0; block < kSeeds; block += 50) {
        bool confirmed = false;
        for (std::uint64_t seed = block; seed < block + 50 && !confirmed; ++seed) {
            std::string src = lab::generate_divergent_program(seed, corpus_size(seed));
            auto need = lab::run_with_metrics(src, lab::Engine::func(Strategy::Need));
            auto name = lab::run_with_metrics(src, lab::Engine::func(Strategy::Name));
            if (need.lines == name.lines) continue;
            confirmed = lab::confirm_divergence(need.events, name.events).has_value();
        }
        c.require(confirmed, "no confirmed divergence in seeds " + std::to_string(block) + ".." +
                                 std::to_string(block + 49));
    }
    return c;
}

Check memory_proxy() {
    Check c;
    auto s = pair_sources();
    func::Interpreter interp(Strategy::Need);
    std::optional<std::size_t> forced_at_entry;
    std::size_t promises_at_entry = 0;
    interp.on_call_entered([&](func::EnvId) {
        if (forced_at_entry) return;
        forced_at_entry = interp.promises().forced_value_slots();
        promises_at_entry = interp.promises().size();
    });
    interp.run(func::parse(s.r_prog1));
    c.require(forced_at_entry == std::size_t{0}, "forced value slots at call entry are not 0");
    c.require(promises_at_entry == 3, "expected 3 promises at call entry");

    macro::Session session;
    std::optional<std::size_t> bytes;
    session.on_parameters_stored([&](const macro::MacroDef&, const macro::TableStack& t) {
        if (!bytes) bytes = t.stored_text_bytes();
    });
    session.run(s.sas_prog1);
    c.require(bytes && *bytes > 0, "no stored text after parameter storage");
    return c;
}

Check lifecycle() {
    Check c;
    auto s = pair_sources();
    std::vector<std::string> macro_sources = {s.sas_prog1, s.sas_prog2, "",
                                              "%macro m(x=1);\n%put &nope;\n%mend;\n%m()",
                                              "%macro r();\n%r()\n%mend;\n%r()"};
    for (const auto& src : macro_sources) {
        macro::Session session;
        try {
            session.run(src);
        } catch (const Error&) {
        }
        c.require(session.tables().locals_created() == session.tables().locals_deleted(),
                  "LOCAL tables leaked");
        c.require(session.tables().depth() == 1, "table stack not back to GLOBAL");
    }
    std::vector<std::string> func_sources = {s.r_prog1, s.r_prog2, read_program("env_lifecycle.fl"),
                                             "f <- function(x) x / 0\nf(1)"};
    for (std::uint64_t seed = 0; seed < 50; ++seed) func_sources.push_back(lab::generate_program(seed, 20));
    for (const auto& src : func_sources) {
        for (Strategy st : {Strategy::Strict, Strategy::Need, Strategy::Name}) {
            func::Interpreter interp(st);
            try {
                interp.run(func::parse(src));
            } catch (const Error&) {
            }
            c.require(interp.envs().size() - 1 == interp.envs().discarded_count(), "execution env leaked");
        }
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"golden funclang program 1 prints \"2 20 7\"", golden_r1},
        {"golden maclang program 1 logs \"(2 20 7)\"", golden_sas1},
        {"golden funclang program 2 under need prints 20, 20 with one cached evaluation", golden_r2},
        {"golden maclang program 2 logs 20, 100 with two resolutions of y", golden_sas2},
        {"call-by-name matches macro re-resolution; pairs verdicts EQUAL, DIVERGED, EQUAL", correspondence},
        {"execution env of h(1) is created and discarded; globals are y=6, h, z=3", env_lifecycle},
        {"unused default with unbound names runs under need and name, fails under strict", laziness},
        {"need evaluates each promise at most once and never more than name (500 programs)", at_most_once},
        {"strict, need and name agree on 500 programs; mutations diverge in every 50 seeds", agreement},
        {"no forced value slots at need call entry while macro parameters occupy text", memory_proxy},
        {"every LOCAL table and execution env is released", lifecycle},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        std::printf("%s %2zu  %s%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    c.ok ? "" : "  -- ", c.why.c_str());
        failed += !c.ok;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
