#include "lazylab/value.hpp"

namespace lazylab::func {

std::string to_string(EnvId id) { return "env#" + std::to_string(id.value); }

std::string to_string(PromiseId id) { return "promise#" + std::to_string(id.value); }

std::string format_value(const Value& v) {
    if (const auto* n = std::get_if<Num>(&v)) return format_number(n->value);
    if (const auto* vec = std::get_if<Vec>(&v)) {
        std::string out;
        for (std::size_t i = 0; i < vec->elements.size(); ++i) {
            if (i) out += ' ';
            out += format_number(vec->elements[i]);
        }
        return out;
    }
    return "<function>";
}

std::string_view type_name(const Value& v) {
    switch (v.index()) {
        case 0: return "number";
        case 1: return "vector";
        default: return "function";
    }
}

}  // namespace lazylab::func
