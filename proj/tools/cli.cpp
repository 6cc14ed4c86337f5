#include "cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lazylab/strategy_lab.hpp"

namespace lazylab::cli {

namespace {

using lab::Engine;
using lab::Lang;

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string name;
    std::string text;
};

class Diagnostics {
  public:
    explicit Diagnostics(std::ostream& err) : err_(err) {
        const char* env = std::getenv("LAZYLAB_COLOR");
        if (env && std::string_view(env) == "0") {
            color_ = false;
        } else if (env && std::string_view(env) == "1") {
            color_ = true;
        } else {
            color_ = &err == &std::cerr && isatty(fileno(stderr));
        }
    }

    void error(const std::string& where, const std::string& message) {
        err_ << where << ": " << (color_ ? "\x1b[1;31merror:\x1b[0m " : "error: ") << message << "\n";
    }

    void error(const std::string& file, const Error& e) {
        SourcePos pos = e.pos().value_or(SourcePos{});
        error(file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col),
              std::string(to_string(e.kind())) + ": " + e.what());
    }

    void usage(const std::string& message) { error("lazylab", message); }

  private:
    std::ostream& err_;
    bool color_ = false;
};

Input read_input(const std::string& path, std::istream& in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return {"<stdin>", ss.str()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot read " + path);
    ss << file.rdbuf();
    return {path, ss.str()};
}

func::Strategy parse_strategy(const std::string& s) {
    auto st = func::strategy_from_string(s);
    if (!st) throw Usage("unknown strategy '" + s + "' (expected strict, need or name)");
    return *st;
}

Engine make_engine(const std::string& lang, const std::string& strategy, bool strategy_given) {
    if (lang == "macro") {
        if (strategy_given) throw Usage("--strategy is only valid with --lang func");
        return Engine::macro();
    }
    return Engine::func(parse_strategy(strategy));
}

std::string quoted(const std::optional<std::string>& s) {
    return s ? nlohmann::json(*s).dump() : std::string("(absent)");
}

struct Options {
    std::string lang = "func";
    std::string strategy = "need";
    std::vector<std::string> strategies;
    std::string input;
    std::string output = "text";
    std::string programs = LAZYLAB_PROGRAMS_DIR;
    std::uint64_t seed = 0;
    std::size_t size = 20;
    std::string mode = "agree";
};

int cmd_run(const Options& o, bool strategy_given, std::istream& in, std::ostream& out, Diagnostics& diag) {
    Engine engine = make_engine(o.lang, o.strategy, strategy_given);
    Input input = read_input(o.input, in);
    try {
        lab::RunRecord r = lab::run_with_metrics(input.text, engine);
        if (o.output == "json") {
            nlohmann::ordered_json j;
            j["engine"] = lab::to_string(engine);
            j["lines"] = r.lines;
            j["metrics"] = nlohmann::ordered_json::parse(lab::metrics_json(r.metrics));
            out << j.dump() << "\n";
        } else {
            for (const auto& line : r.lines) out << line << "\n";
        }
        return 0;
    } catch (const Error& e) {
        diag.error(input.name, e);
        return 1;
    }
}

int cmd_trace(const Options& o, bool strategy_given, std::istream& in, std::ostream& out, Diagnostics& diag) {
    Engine engine = make_engine(o.lang, o.strategy, strategy_given);
    Input input = read_input(o.input, in);
    try {
        lab::RunRecord r = lab::run_with_metrics(input.text, engine);
        out << lab::trace_jsonl(r.events, r.metrics);
        return 0;
    } catch (const lab::TracedError& e) {
        const auto& partial = e.partial_trace();
        out << lab::trace_jsonl(partial, lab::aggregate_metrics(partial));
        diag.error(input.name, e);
        return 1;
    }
}

int cmd_diff(const Options& o, bool lang_given, std::istream& in, std::ostream& out, Diagnostics& diag) {
    if (lang_given && o.lang != "func") throw Usage("diff compares funclang strategies; --lang must be func");
    if (o.strategies.size() != 2) throw Usage("diff needs --strategy exactly twice");
    Engine left = Engine::func(parse_strategy(o.strategies[0]));
    Engine right = Engine::func(parse_strategy(o.strategies[1]));
    Input input = read_input(o.input, in);
    try {
        lab::RunRecord a = lab::run_with_metrics(input.text, left);
        lab::RunRecord b = lab::run_with_metrics(input.text, right);
        lab::DivergenceReport report = lab::diff_outputs(a.lines, b.lines);
        report.metrics_delta = lab::describe_metrics_delta(a.metrics, b.metrics);
        if (o.output == "json") {
            out << lab::report_json(report) << "\n";
        } else {
            out << to_string(report.verdict);
            if (report.first_diff) {
                out << " at line " << report.first_diff->index + 1 << ": " << quoted(report.first_diff->left) << " vs "
                    << quoted(report.first_diff->right);
            }
            out << "\nmetrics: " << report.metrics_delta << "\n";
        }
        return report.verdict == lab::Verdict::Equal ? 0 : 3;
    } catch (const Error& e) {
        diag.error(input.name, e);
        return 1;
    }
}

int cmd_pairs(const Options& o, std::ostream& out, Diagnostics& diag) {
    const std::pair<lab::ProgramPair, lab::Verdict> expected[] = {
        {lab::ProgramPair::Program1, lab::Verdict::Equal},
        {lab::ProgramPair::Program2, lab::Verdict::Diverged},
        {lab::ProgramPair::Program2Name, lab::Verdict::Equal},
    };
    lab::PairSources sources;
    try {
        sources = lab::load_pair_sources(o.programs);
    } catch (const std::runtime_error& e) {
        diag.error(o.programs, e.what());
        return 1;
    }
    bool ok = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream table;
    for (const auto& [pair, want] : expected) {
        lab::DivergenceReport report;
        try {
            report = lab::paired_run(pair, sources);
        } catch (const Error& e) {
            diag.error(std::string(o.programs) + "/" + std::string(to_string(pair)), e);
            return 1;
        }
        bool match = report.verdict == want;
        ok = ok && match;
        nlohmann::ordered_json row = nlohmann::ordered_json::parse(lab::report_json(report));
        nlohmann::ordered_json entry;
        entry["pair"] = std::string(to_string(pair));
        entry["expected"] = std::string(to_string(want));
        for (auto it = row.begin(); it != row.end(); ++it) entry[it.key()] = it.value();
        entry["match"] = match;
        rows.push_back(std::move(entry));

        std::string name(to_string(pair));
        std::string verdict(to_string(report.verdict));
        table << name << std::string(15 - name.size(), ' ') << verdict << std::string(10 - verdict.size(), ' ')
              << (match ? "ok" : "UNEXPECTED (wanted " + std::string(to_string(want)) + ")");
        if (report.first_diff) {
            table << "  line " << report.first_diff->index + 1 << ": " << quoted(report.first_diff->left) << " vs "
                  << quoted(report.first_diff->right);
        }
        table << "\n";
    }
    if (o.output == "json") {
        out << rows.dump() << "\n";
    } else {
        out << table.str();
    }
    if (!ok) diag.error(o.programs, "paired verdicts do not match the expected pattern");
    return ok ? 0 : 1;
}

int cmd_gen(const Options& o, std::ostream& out) {
    if (o.size < 1) throw Usage("--size must be at least 1");
    if (o.mode == "agree") {
        out << lab::generate_program(o.seed, o.size);
    } else if (o.mode == "diverge") {
        out << lab::generate_divergent_program(o.seed, o.size);
    } else {
        throw Usage("unknown --mode '" + o.mode + "' (expected agree or diverge)");
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Diagnostics diag(err);
    Options o;
    CLI::App app{"Lazy evaluation lab: funclang and maclang interpreters", "lazylab"};
    app.require_subcommand(1);

    auto add_engine = [&o](CLI::App* cmd) {
        cmd->add_option("--lang", o.lang, "func or macro")->check(CLI::IsMember({"func", "macro"}));
        cmd->add_option("--output", o.output, "text or json")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("input", o.input, "program file, or - for stdin")->required();
    };

    CLI::App* run = app.add_subcommand("run", "run a program and print its output");
    add_engine(run);
    CLI::Option* run_strategy = run->add_option("--strategy", o.strategy, "strict, need or name (func only)");

    CLI::App* trace = app.add_subcommand("trace", "run a program and print its trace as JSON lines");
    add_engine(trace);
    CLI::Option* trace_strategy = trace->add_option("--strategy", o.strategy, "strict, need or name (func only)");

    CLI::App* diff = app.add_subcommand("diff", "compare two funclang strategies on one program");
    add_engine(diff);
    diff->add_option("--strategy", o.strategies, "give twice")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    CLI::App* pairs = app.add_subcommand("pairs", "run the bundled cross-language program pairs");
    pairs->add_option("--programs", o.programs, "directory with the bundled programs");
    pairs->add_option("--output", o.output, "text or json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* gen = app.add_subcommand("gen", "print a generated funclang program");
    gen->add_option("--seed", o.seed);
    gen->add_option("--size", o.size);
    gen->add_option("--mode", o.mode, "agree or diverge");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        diag.usage(e.what());
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(o, run_strategy->count() > 0, in, out, diag);
        if (trace->parsed()) return cmd_trace(o, trace_strategy->count() > 0, in, out, diag);
        if (diff->parsed()) return cmd_diff(o, diff->get_option("--lang")->count() > 0, in, out, diag);
        if (pairs->parsed()) return cmd_pairs(o, out, diag);
        if (gen->parsed()) return cmd_gen(o, out);
    } catch (const Usage& e) {
        diag.usage(e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        diag.usage(e.what());
        return 1;
    }
    return 2;
}

}  // namespace lazylab::cli
