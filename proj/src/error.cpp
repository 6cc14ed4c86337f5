#include "lazylab/error.hpp"

namespace lazylab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Lex: return "LexError";
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::UnboundName: return "UnboundName";
        case ErrorKind::DiscardedEnv: return "DiscardedEnv";
        case ErrorKind::CannotDiscardGlobal: return "CannotDiscardGlobal";
        case ErrorKind::CyclicForce: return "CyclicForce";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::Type: return "TypeError";
        case ErrorKind::Arity: return "ArityError";
        case ErrorKind::MissingArg: return "MissingArgError";
        case ErrorKind::DuplicateParam: return "DuplicateParam";
        case ErrorKind::UnterminatedMacro: return "UnterminatedMacro";
        case ErrorKind::UnknownMacro: return "UnknownMacro";
        case ErrorKind::UnknownParam: return "UnknownParam";
        case ErrorKind::UnresolvedRef: return "UnresolvedRef";
        case ErrorKind::DepthExceeded: return "DepthExceeded";
        case ErrorKind::ArithSyntax: return "ArithSyntax";
        case ErrorKind::MacroSyntax: return "MacroSyntax";
    }
    return "Error";
}

}  // namespace lazylab
