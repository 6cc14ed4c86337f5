#include <cctype>
#include <stdexcept>

#include "lazylab/maclang.hpp"

namespace lazylab::macro {

std::string SymbolTable::label() const {
    return global ? std::string("GLOBAL") : macro_name + "#" + std::to_string(ordinal);
}

const std::string* SymbolTable::find(std::string_view upper_name) const {
    for (const auto& [name, text] : entries) {
        if (name == upper_name) return &text;
    }
    return nullptr;
}

TableStack::TableStack(TraceLog* trace) : trace_(trace) {
    SymbolTable g;
    g.global = true;
    live_.push_back(std::move(g));
}

SymbolTable& TableStack::push_local(std::string_view macro_name) {
    SymbolTable t;
    t.macro_name = to_upper(macro_name);
    t.ordinal = static_cast<std::uint32_t>(++created_);
    live_.push_back(std::move(t));
    emit(trace_, TraceKind::TableCreated, live_.back().label(), "local");
    return live_.back();
}

void TableStack::pop_local() {
    if (live_.size() <= 1) throw std::logic_error("the GLOBAL symbol table is never deleted");
    live_.back().status = TableStatus::Deleted;
    std::string label = live_.back().label();
    live_.pop_back();
    ++deleted_;
    emit(trace_, TraceKind::TableDeleted, std::move(label));
}

const std::string* TableStack::lookup(std::string_view name) const {
    std::string key = to_upper(name);
    for (auto it = live_.rbegin(); it != live_.rend(); ++it) {
        if (const std::string* v = it->find(key)) return v;
    }
    return nullptr;
}

SymbolTable* TableStack::owner(std::string_view name) {
    std::string key = to_upper(name);
    for (auto it = live_.rbegin(); it != live_.rend(); ++it) {
        if (it->find(key)) return &*it;
    }
    return nullptr;
}

void TableStack::store(SymbolTable& table, std::string_view name, std::string text) {
    std::string key = to_upper(name);
    emit(trace_, TraceKind::VarStored, table.label() + "/" + key, text);
    bool found = false;
    for (auto& [n, v] : table.entries) {
        if (n == key) {
            v = std::move(text);
            found = true;
            break;
        }
    }
    if (!found) table.entries.emplace_back(std::move(key), std::move(text));
    peak_bytes_ = std::max(peak_bytes_, stored_text_bytes());
}

std::size_t TableStack::stored_text_bytes() const {
    std::size_t total = 0;
    for (const auto& t : live_) {
        for (const auto& e : t.entries) total += e.second.size();
    }
    return total;
}

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

void resolve_into(std::string& out, std::string_view text, const TableStack& stack, int depth) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&' || i + 1 >= text.size() || !name_start(text[i + 1])) {
            out += text[i++];
            continue;
        }
        std::size_t start = ++i;
        while (i < text.size() && name_char(text[i])) ++i;
        std::string_view name = text.substr(start, i - start);
        if (i < text.size() && text[i] == '.') ++i;
        if (depth >= kMaxRescanDepth) {
            throw DepthExceeded("reference &" + std::string(name) + " still unresolved after " +
                                std::to_string(kMaxRescanDepth) + " rescans (self-referential?)");
        }
        std::string key = to_upper(name);
        const SymbolTable* from = nullptr;
        const std::string* value = nullptr;
        for (auto it = stack.live().rbegin(); it != stack.live().rend() && !value; ++it) {
            if ((value = it->find(key))) from = &*it;
        }
        if (!value) throw UnresolvedRef("apparent symbolic reference " + key + " not resolved");
        emit(stack.trace(), TraceKind::VarResolved, key, from->label() + ": " + *value);
        resolve_into(out, *value, stack, depth + 1);
    }
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::string resolve_text(std::string_view text, const TableStack& stack) {
    std::string out;
    resolve_into(out, text, stack, 0);
    return out;
}

void let_stmt(std::string_view name, std::string_view raw_text, TableStack& stack) {
    std::string value = expand_evals(resolve_text(trim(raw_text), stack), stack.trace());
    SymbolTable* table = stack.owner(name);
    if (!table) table = &stack.innermost();
    stack.store(*table, name, std::move(value));
}

PutResult put_stmt(std::string_view text, const TableStack& stack) {
    std::string body = trim(text);
    std::string upper = to_upper(body);
    if (upper == "_USER_" || upper == "_LOCAL_" || upper == "_GLOBAL_") {
        PutResult r;
        r.symbol_dump = true;
        auto tables = stack.live();
        for (auto it = tables.rbegin(); it != tables.rend(); ++it) {
            if (upper == "_LOCAL_" && it != tables.rbegin()) break;
            if (upper == "_GLOBAL_" && !it->global) continue;
            if (upper == "_LOCAL_" && it->global) break;
            for (const auto& [name, value] : it->entries) {
                r.lines.push_back(it->scope_name() + " " + name + " " + value);
            }
        }
        return r;
    }
    return PutResult{{expand_evals(resolve_text(body, stack), stack.trace())}, false};
}

}  // namespace lazylab::macro
