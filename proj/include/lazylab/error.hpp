#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lazylab {

/// 1-based line/column into a source text.
struct SourcePos {
    std::uint32_t line = 1;
    std::uint32_t col = 1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorKind {
    // funclang front end
    Lex,
    Parse,
    // environments / promises / evaluator
    UnboundName,
    DiscardedEnv,
    CannotDiscardGlobal,
    CyclicForce,
    DivisionByZero,
    Type,
    Arity,
    MissingArg,
    // maclang
    DuplicateParam,
    UnterminatedMacro,
    UnknownMacro,
    UnknownParam,
    UnresolvedRef,
    DepthExceeded,
    ArithSyntax,
    MacroSyntax,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the interpreters. Carries an optional source
/// position that is filled in by the innermost construct that knows one.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message, std::optional<SourcePos> pos = std::nullopt)
        : std::runtime_error(message), kind_(kind), pos_(pos) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::optional<SourcePos>& pos() const noexcept { return pos_; }
    void set_pos_if_missing(SourcePos pos) {
        if (!pos_) pos_ = pos;
    }

  private:
    ErrorKind kind_;
    std::optional<SourcePos> pos_;
};

#define LAZYLAB_DEFINE_ERROR(Name, Kind)                                                     \
    class Name : public Error {                                                              \
      public:                                                                                \
        explicit Name(const std::string& message, std::optional<SourcePos> pos = std::nullopt) \
            : Error(ErrorKind::Kind, message, pos) {}                                        \
    };

LAZYLAB_DEFINE_ERROR(LexError, Lex)
LAZYLAB_DEFINE_ERROR(ParseError, Parse)
LAZYLAB_DEFINE_ERROR(UnboundName, UnboundName)
LAZYLAB_DEFINE_ERROR(DiscardedEnv, DiscardedEnv)
LAZYLAB_DEFINE_ERROR(CannotDiscardGlobal, CannotDiscardGlobal)
LAZYLAB_DEFINE_ERROR(CyclicForce, CyclicForce)
LAZYLAB_DEFINE_ERROR(DivisionByZero, DivisionByZero)
LAZYLAB_DEFINE_ERROR(TypeError, Type)
LAZYLAB_DEFINE_ERROR(ArityError, Arity)
LAZYLAB_DEFINE_ERROR(MissingArgError, MissingArg)
LAZYLAB_DEFINE_ERROR(DuplicateParam, DuplicateParam)
LAZYLAB_DEFINE_ERROR(UnterminatedMacro, UnterminatedMacro)
LAZYLAB_DEFINE_ERROR(UnknownMacro, UnknownMacro)
LAZYLAB_DEFINE_ERROR(UnknownParam, UnknownParam)
LAZYLAB_DEFINE_ERROR(UnresolvedRef, UnresolvedRef)
LAZYLAB_DEFINE_ERROR(DepthExceeded, DepthExceeded)
LAZYLAB_DEFINE_ERROR(ArithSyntax, ArithSyntax)
LAZYLAB_DEFINE_ERROR(MacroSyntax, MacroSyntax)

#undef LAZYLAB_DEFINE_ERROR

}  // namespace lazylab
