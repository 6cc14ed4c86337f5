#include <cctype>

#include "lazylab/maclang.hpp"

namespace lazylab::macro {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

// Index of the RParen matching the LParen at `open`, or npos.
std::size_t matching_paren(std::span<const MacroToken> toks, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < toks.size(); ++i) {
        if (toks[i].kind == TokenKind::LParen) ++depth;
        if (toks[i].kind == TokenKind::RParen && --depth == 0) return i;
        if (toks[i].kind == TokenKind::Eof) break;
    }
    return std::string::npos;
}

// Raw argument texts between parentheses, split on top-level commas.
std::vector<std::string> split_args(std::span<const MacroToken> toks, std::size_t open, std::size_t close,
                                    std::string_view text) {
    std::vector<std::string> args;
    std::size_t start = toks[open].offset + 1;
    int depth = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
        if (toks[i].kind == TokenKind::LParen) ++depth;
        if (toks[i].kind == TokenKind::RParen) --depth;
        if (toks[i].kind == TokenKind::Comma && depth == 0) {
            args.push_back(trim(text.substr(start, toks[i].offset - start)));
            start = toks[i].offset + 1;
        }
    }
    args.push_back(trim(text.substr(start, toks[close].offset - start)));
    if (args.size() == 1 && args[0].empty()) args.clear();
    return args;
}

class InvocationScope {
  public:
    InvocationScope(TableStack& tables, int& depth, std::string_view name) : tables_(tables), depth_(depth) {
        tables_.push_local(name);
        ++depth_;
    }
    ~InvocationScope() {
        --depth_;
        tables_.pop_local();
    }
    InvocationScope(const InvocationScope&) = delete;
    InvocationScope& operator=(const InvocationScope&) = delete;

  private:
    TableStack& tables_;
    int& depth_;
};

}  // namespace

ParsedDefinition define_macro(std::span<const MacroToken> toks, std::string_view source) {
    std::string text = strip_comments(source);
    if (toks.empty() || toks[0].kind != TokenKind::PctMacro) throw MacroSyntax("expected %macro");
    SourcePos at = toks[0].pos;
    std::size_t i = 1;
    if (toks[i].kind != TokenKind::Ident) throw MacroSyntax("expected a macro name after %macro", toks[i].pos);
    ParsedDefinition out;
    out.def.name = toks[i++].text;

    if (toks[i].kind == TokenKind::LParen) {
        std::size_t close = matching_paren(toks, i);
        if (close == std::string::npos) throw MacroSyntax("unclosed parameter list", toks[i].pos);
        ++i;
        while (i < close) {
            if (toks[i].kind != TokenKind::Ident) throw MacroSyntax("expected a parameter name", toks[i].pos);
            MacroParam p{toks[i].text, {}};
            for (const auto& q : out.def.params) {
                if (to_upper(q.name) == to_upper(p.name)) {
                    throw DuplicateParam("parameter " + to_upper(p.name) + " declared twice", toks[i].pos);
                }
            }
            ++i;
            if (toks[i].kind == TokenKind::Equals) {
                std::size_t start = toks[i].offset + 1;
                int depth = 0;
                ++i;
                while (i < close && !(depth == 0 && toks[i].kind == TokenKind::Comma)) {
                    if (toks[i].kind == TokenKind::LParen) ++depth;
                    if (toks[i].kind == TokenKind::RParen) --depth;
                    ++i;
                }
                p.default_text = trim(std::string_view(text).substr(start, toks[i].offset - start));
            }
            out.def.params.push_back(std::move(p));
            if (toks[i].kind == TokenKind::Comma) {
                ++i;
            } else if (i != close) {
                throw MacroSyntax("expected ',' or ')' in parameter list", toks[i].pos);
            }
        }
        i = close + 1;
    }
    if (toks[i].kind != TokenKind::Semi) throw MacroSyntax("expected ';' after macro header", toks[i].pos);
    std::size_t body_start = toks[i].offset + 1;
    out.def.body_pos = SourcePos{toks[i].pos.line, toks[i].pos.col + 1};
    ++i;

    int nesting = 1;
    for (; i < toks.size() && toks[i].kind != TokenKind::Eof; ++i) {
        if (toks[i].kind == TokenKind::PctMacro) ++nesting;
        if (toks[i].kind == TokenKind::PctMend && --nesting == 0) break;
    }
    if (nesting != 0) throw UnterminatedMacro("%macro " + out.def.name + " has no matching %mend", at);
    out.def.body_text = text.substr(body_start, toks[i].offset - body_start);
    ++i;
    if (toks[i].kind == TokenKind::Ident) ++i;
    if (toks[i].kind == TokenKind::Semi) ++i;
    out.next_token = i;
    return out;
}

Session::Session(TraceLog* trace) : trace_(trace), tables_(trace) {}

const MacroOutput& Session::run(std::string_view source) {
    execute(source);
    return out_;
}

void Session::define(MacroDef def) {
    std::string key = to_upper(def.name);
    macros_.insert_or_assign(std::move(key), std::move(def));
}

const MacroDef* Session::find_macro(std::string_view name) const {
    auto it = macros_.find(to_upper(name));
    return it == macros_.end() ? nullptr : &it->second;
}

void Session::log(std::string line, bool symbol_dump) {
    if (symbol_dump) out_.symbol_dump_lines.push_back(out_.log_lines.size());
    emit(trace_, TraceKind::OutputLine, "log", line);
    out_.log_lines.push_back(std::move(line));
}

void Session::execute(std::string_view source, SourcePos origin) {
    std::string text = strip_comments(source);
    std::vector<MacroToken> toks = scan(text, origin);
    std::span<const MacroToken> all(toks);
    std::size_t i = 0;
    auto kind_at = [&](std::size_t j) { return j < toks.size() ? toks[j].kind : TokenKind::Eof; };
    while (toks[i].kind != TokenKind::Eof) {
        const MacroToken& t = toks[i];
        try {
            switch (t.kind) {
                case TokenKind::PctMacro: {
                    ParsedDefinition parsed = define_macro(all.subspan(i), text);
                    i += parsed.next_token;
                    define(std::move(parsed.def));
                    break;
                }
                case TokenKind::PctMend:
                    throw MacroSyntax("%mend without a matching %macro");
                case TokenKind::PctLet: {
                    if (kind_at(i + 1) != TokenKind::Ident || kind_at(i + 2) != TokenKind::Equals ||
                        kind_at(i + 3) != TokenKind::Text) {
                        throw MacroSyntax("expected %let name=value;");
                    }
                    if (kind_at(i + 4) != TokenKind::Semi) throw MacroSyntax("expected ';' to end %let");
                    let_stmt(toks[i + 1].text, toks[i + 3].text, tables_);
                    i += 5;
                    break;
                }
                case TokenKind::PctPut: {
                    PutResult r = put_stmt(toks[i + 1].text, tables_);
                    for (auto& line : r.lines) log(std::move(line), r.symbol_dump);
                    i += 2;
                    if (toks[i].kind == TokenKind::Semi) ++i;
                    break;
                }
                case TokenKind::MacroCall: {
                    std::vector<std::string> args;
                    ++i;
                    if (toks[i].kind == TokenKind::LParen) {
                        std::size_t close = matching_paren(all, i);
                        if (close == std::string::npos) throw MacroSyntax("unclosed argument list for %" + t.text);
                        args = split_args(all, i, close, text);
                        i = close + 1;
                    }
                    invoke(t.text, args);
                    if (toks[i].kind == TokenKind::Semi) ++i;
                    break;
                }
                default: {
                    // Open code: not macro language. Resolve it and hand it to
                    // the compiler stream up to the end of the statement.
                    std::size_t start = t.offset;
                    std::size_t end = start;
                    while (true) {
                        TokenKind k = toks[i].kind;
                        if (k == TokenKind::Eof || k == TokenKind::PctMacro || k == TokenKind::PctMend ||
                            k == TokenKind::PctLet || k == TokenKind::PctPut || k == TokenKind::MacroCall) {
                            break;
                        }
                        end = toks[i].offset + toks[i].length;
                        ++i;
                        if (k == TokenKind::Semi) break;
                    }
                    std::string code = expand_evals(resolve_text(text.substr(start, end - start), tables_), trace_);
                    out_.compiler_stream.push_back(trim(code));
                    break;
                }
            }
        } catch (Error& e) {
            e.set_pos_if_missing(t.pos);
            throw;
        }
    }
}

MacroOutput Session::invoke(std::string_view name, const std::vector<std::string>& raw_args) {
    const MacroDef* def = find_macro(name);
    if (!def) throw UnknownMacro("apparent invocation of macro " + to_upper(name) + " not resolved");
    std::vector<std::optional<std::string>> values(def->params.size());
    std::size_t positional = 0;
    for (const std::string& arg : raw_args) {
        std::size_t eq = arg.find('=');
        std::string key = eq == std::string::npos ? std::string() : trim(std::string_view(arg).substr(0, eq));
        if (!key.empty() && is_name(key)) {
            std::size_t p = 0;
            while (p < def->params.size() && to_upper(def->params[p].name) != to_upper(key)) ++p;
            if (p == def->params.size()) {
                throw UnknownParam("keyword parameter " + to_upper(key) + " not defined for macro " + to_upper(def->name));
            }
            values[p] = trim(std::string_view(arg).substr(eq + 1));
        } else {
            while (positional < values.size() && values[positional]) ++positional;
            if (positional == values.size()) {
                throw UnknownParam("more positional parameters than defined for macro " + to_upper(def->name));
            }
            values[positional++] = arg;
        }
    }
    return invoke_with(*def, std::move(values));
}

MacroOutput Session::invoke(std::string_view name, const std::map<std::string, std::string>& overrides) {
    std::vector<std::string> args;
    for (const auto& [k, v] : overrides) args.push_back(k + "=" + v);
    return invoke(name, args);
}

MacroOutput Session::invoke_with(const MacroDef& def_in, std::vector<std::optional<std::string>> values) {
    if (invocation_depth_ >= kMaxInvocationDepth) {
        throw DepthExceeded("macro invocations nested deeper than " + std::to_string(kMaxInvocationDepth));
    }
    // Copy: the body may redefine this macro while it runs.
    MacroDef def = def_in;
    std::size_t first_line = out_.log_lines.size();
    std::size_t first_dump = out_.symbol_dump_lines.size();
    {
        InvocationScope scope(tables_, invocation_depth_, def.name);
        SymbolTable& local = tables_.innermost();
        for (std::size_t p = 0; p < def.params.size(); ++p) {
            tables_.store(local, def.params[p].name, values[p] ? *values[p] : def.params[p].default_text);
        }
        if (params_hook_) params_hook_(def, tables_);
        execute(def.body_text, def.body_pos);
    }
    MacroOutput slice;
    slice.log_lines.assign(out_.log_lines.begin() + static_cast<std::ptrdiff_t>(first_line), out_.log_lines.end());
    for (std::size_t k = first_dump; k < out_.symbol_dump_lines.size(); ++k) {
        slice.symbol_dump_lines.push_back(out_.symbol_dump_lines[k] - first_line);
    }
    return slice;
}

MacroOutput run_session(std::string_view source, TraceLog* trace) {
    Session session(trace);
    return session.run(source);
}

}  // namespace lazylab::macro
