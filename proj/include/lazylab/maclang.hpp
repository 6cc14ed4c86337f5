#pragma once

// maclang: a macro language in the style of the SAS macro facility. Macro
// variables hold raw text in scoped symbol tables; `&name` references are
// substituted and rescanned at the point of use, so every read re-derives its
// value from the current table contents (call-by-name).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lazylab/error.hpp"
#include "lazylab/trace.hpp"

namespace lazylab::macro {

inline constexpr int kMaxRescanDepth = 64;
inline constexpr int kMaxInvocationDepth = 64;

// ---------------------------------------------------------------------------
// Word scanner

enum class TokenKind {
    PctMacro,
    PctMend,
    PctLet,
    PctPut,
    PctEval,
    MacroCall,  // %name for any other name
    AmpRef,     // &name, text holds the name
    Ident,
    Int,
    Op,
    LParen,
    RParen,
    Equals,
    Semi,
    Comma,
    Text,  // raw text: the value of %let, the argument of %put, or a run of other characters
    Eof,
};

std::string_view to_string(TokenKind kind);

struct MacroToken {
    TokenKind kind = TokenKind::Eof;
    std::string text;
    SourcePos pos;
    std::size_t offset = 0;  // byte span in the scanned text
    std::size_t length = 0;
};

/// Blanks out `/* ... */` comments, keeping newlines so positions survive.
/// Throws LexError on an unterminated comment.
std::string strip_comments(std::string_view source);

/// Tokenizes macro-language source. After `%let name=` the value up to `;`
/// is one Text token; after `%put` the text up to `;` or end of line is one
/// Text token. Throws LexError for `%` or `&` not followed by a name.
std::vector<MacroToken> scan(std::string_view source, SourcePos origin = {});

// ---------------------------------------------------------------------------
// Definitions

struct MacroParam {
    std::string name;
    std::string default_text;  // raw, unresolved; empty when none given
};

struct MacroDef {
    std::string name;
    std::vector<MacroParam> params;
    std::string body_text;  // verbatim, resolved only when executed
    SourcePos body_pos;
};

struct ParsedDefinition {
    MacroDef def;
    std::size_t next_token = 0;  // index just past `%mend [name] [;]`
};

/// Parses `%macro name(params); body %mend;` starting at tokens[0], which
/// must be PctMacro. `source` is the text the tokens were scanned from.
/// Throws DuplicateParam, UnterminatedMacro, MacroSyntax.
ParsedDefinition define_macro(std::span<const MacroToken> tokens, std::string_view source);

// ---------------------------------------------------------------------------
// Symbol tables

enum class TableStatus { Live, Deleted };

struct SymbolTable {
    bool global = false;
    std::string macro_name;  // upper case; empty for GLOBAL
    std::uint32_t ordinal = 0;  // invocation ordinal, 0 for GLOBAL
    std::vector<std::pair<std::string, std::string>> entries;  // upper-case name -> raw text
    TableStatus status = TableStatus::Live;

    /// "GLOBAL" or "<MACRO>#<ordinal>".
    std::string label() const;
    /// Scope column of `%put _user_`: "GLOBAL" or the macro name.
    std::string scope_name() const { return global ? "GLOBAL" : macro_name; }
    const std::string* find(std::string_view upper_name) const;
};

/// The GLOBAL table plus one LOCAL table per active macro invocation,
/// innermost last.
class TableStack {
  public:
    explicit TableStack(TraceLog* trace = nullptr);

    SymbolTable& push_local(std::string_view macro_name);
    void pop_local();

    /// Innermost live definition of `name` (case-insensitive).
    const std::string* lookup(std::string_view name) const;
    /// Innermost table defining `name`, if any.
    SymbolTable* owner(std::string_view name);

    void store(SymbolTable& table, std::string_view name, std::string text);

    const SymbolTable& global() const { return live_.front(); }
    SymbolTable& innermost() { return live_.back(); }
    const SymbolTable& innermost() const { return live_.back(); }
    std::span<const SymbolTable> live() const { return live_; }
    std::size_t depth() const noexcept { return live_.size(); }

    std::size_t locals_created() const noexcept { return created_; }
    std::size_t locals_deleted() const noexcept { return deleted_; }

    /// Sum of entry text lengths across live tables, now and at the peak.
    std::size_t stored_text_bytes() const;
    std::size_t peak_text_bytes() const noexcept { return peak_bytes_; }

    TraceLog* trace() const noexcept { return trace_; }

  private:
    std::vector<SymbolTable> live_;
    std::size_t created_ = 0;
    std::size_t deleted_ = 0;
    std::size_t peak_bytes_ = 0;
    TraceLog* trace_;
};

std::string to_upper(std::string_view s);

/// Substitutes every `&name` (optionally terminated by `.`) with the
/// innermost table's text, rescanning substituted text. Throws
/// UnresolvedRef, DepthExceeded when a reference nests deeper than
/// kMaxRescanDepth.
std::string resolve_text(std::string_view text, const TableStack& stack);

/// Integer arithmetic over + - * / and parentheses; division truncates
/// toward zero. Throws ArithSyntax, DivisionByZero.
std::int64_t eval_arith(std::string_view text);

/// Replaces each `%eval(...)` with its decimal result, innermost first.
std::string expand_evals(std::string_view text, TraceLog* trace = nullptr);

/// `%let name=raw;` — resolves `raw`, then updates the innermost table that
/// already defines `name`, or creates it in the innermost table.
void let_stmt(std::string_view name, std::string_view raw_text, TableStack& stack);

struct PutResult {
    std::vector<std::string> lines;
    bool symbol_dump = false;
};

/// `%put text;` — `_user_` (and `_local_`, `_global_`) dump table entries as
/// "SCOPE NAME value", innermost table first; any other text is resolved and
/// has its `%eval(...)` calls evaluated.
PutResult put_stmt(std::string_view text, const TableStack& stack);

// ---------------------------------------------------------------------------
// Session

struct MacroOutput {
    std::vector<std::string> log_lines;
    std::vector<std::size_t> symbol_dump_lines;  // indices of lines written by `%put _user_`
    std::vector<std::string> compiler_stream;     // open code, resolved, otherwise ignored
};

/// One macro session: the GLOBAL table lives from construction to
/// destruction. Single-threaded.
class Session {
  public:
    explicit Session(TraceLog* trace = nullptr);

    /// Executes top-level source and returns the whole log so far.
    const MacroOutput& run(std::string_view source);

    /// Executes statements of `text`; positions in diagnostics start at
    /// `origin`.
    void execute(std::string_view text, SourcePos origin = {});

    void define(MacroDef def);
    const MacroDef* find_macro(std::string_view name) const;

    /// Invokes a macro with raw argument texts (`name=value` or positional).
    /// Returns the log lines written during the invocation.
    MacroOutput invoke(std::string_view name, const std::vector<std::string>& raw_args);
    /// Same, with keyword overrides only.
    MacroOutput invoke(std::string_view name, const std::map<std::string, std::string>& overrides);

    /// Called after an invocation has stored its parameters and before the
    /// body runs.
    void on_parameters_stored(std::function<void(const MacroDef&, const TableStack&)> hook) {
        params_hook_ = std::move(hook);
    }

    const TableStack& tables() const noexcept { return tables_; }
    TableStack& tables() noexcept { return tables_; }
    const MacroOutput& output() const noexcept { return out_; }

  private:
    MacroOutput invoke_with(const MacroDef& def, std::vector<std::optional<std::string>> values);
    void log(std::string line, bool symbol_dump);

    TraceLog* trace_;
    TableStack tables_;
    std::map<std::string, MacroDef, std::less<>> macros_;
    MacroOutput out_;
    std::function<void(const MacroDef&, const TableStack&)> params_hook_;
    int invocation_depth_ = 0;
};

/// Runs `source` in a fresh session and returns its log.
MacroOutput run_session(std::string_view source, TraceLog* trace = nullptr);

}  // namespace lazylab::macro
