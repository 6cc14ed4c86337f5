#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lazylab/syntax.hpp"

namespace lazylab::func {

/// Handle to a frame in an EnvRegistry.
struct EnvId {
    std::uint32_t value = 0;
    friend auto operator<=>(const EnvId&, const EnvId&) = default;
};

/// Handle to a promise in a PromiseStore.
struct PromiseId {
    std::uint32_t value = 0;
    friend auto operator<=>(const PromiseId&, const PromiseId&) = default;
};

std::string to_string(EnvId id);
std::string to_string(PromiseId id);

struct Num {
    double value = 0;
    friend bool operator==(const Num&, const Num&) = default;
};

struct Vec {
    std::vector<double> elements;
    friend bool operator==(const Vec&, const Vec&) = default;
};

struct Closure {
    ExprPtr function;  // always holds a FunctionDef node
    EnvId defined_in;

    const FunctionDef& def() const { return std::get<FunctionDef>(function->node); }
    friend bool operator==(const Closure& a, const Closure& b) {
        return a.function == b.function && a.defined_in == b.defined_in;
    }
};

using Value = std::variant<Num, Vec, Closure>;

/// Printed-line form: Num as canonical decimal, Vec as space-separated
/// scalars, closures as "<function>".
std::string format_value(const Value& v);

std::string_view type_name(const Value& v);

}  // namespace lazylab::func
