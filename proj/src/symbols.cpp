#include "corolla/symbols.hpp"

#include <cctype>
#include <stdexcept>

namespace corolla {

SymbolTable& SymbolTable::instance() {
    static SymbolTable table;
    return table;
}

uint32_t SymbolTable::Pool::intern(std::string_view name) {
    auto it = ids.find(std::string(name));
    if (it != ids.end()) return it->second;
    names.emplace_back(name);
    uint32_t id = static_cast<uint32_t>(names.size() - 1);
    ids.emplace(names.back(), id);
    return id;
}

Symbol SymbolTable::symbol(std::string_view name) {
    std::lock_guard lock(mu_);
    return Symbol{symbols_.intern(name)};
}

Symbol SymbolTable::symbol(std::string_view name, std::string_view latex) {
    std::lock_guard lock(mu_);
    uint32_t id = symbols_.intern(name);
    latex_.emplace(id, std::string(latex));
    return Symbol{id};
}

Slot SymbolTable::slot(std::string_view name) {
    std::lock_guard lock(mu_);
    return Slot{slots_.intern(name)};
}

Index SymbolTable::index(std::string_view name) {
    std::lock_guard lock(mu_);
    return Index{indices_.intern(name)};
}

Symbol SymbolTable::dot(Slot a, Slot b) {
    if (b < a) std::swap(a, b);
    std::lock_guard lock(mu_);
    auto key = std::make_pair(a.id, b.id);
    auto it = dot_by_slots_.find(key);
    if (it != dot_by_slots_.end()) return Symbol{it->second};
    std::string name = slots_.names[a.id];
    name += '.';
    name += slots_.names[b.id];
    uint32_t id = symbols_.intern(name);
    dot_by_slots_.emplace(key, id);
    slots_by_dot_.emplace(id, key);
    return Symbol{id};
}

std::optional<std::pair<Slot, Slot>> SymbolTable::dot_slots(Symbol s) const {
    std::lock_guard lock(mu_);
    auto it = slots_by_dot_.find(s.id);
    if (it == slots_by_dot_.end()) return std::nullopt;
    return std::make_pair(Slot{it->second.first}, Slot{it->second.second});
}

const std::string& SymbolTable::symbol_name(Symbol s) const {
    std::lock_guard lock(mu_);
    return symbols_.names.at(s.id);
}

const std::string& SymbolTable::slot_name(Slot s) const {
    std::lock_guard lock(mu_);
    return slots_.names.at(s.id);
}

const std::string& SymbolTable::index_name(Index i) const {
    std::lock_guard lock(mu_);
    return indices_.names.at(i.id);
}

std::string SymbolTable::symbol_latex(Symbol s) const {
    {
        std::lock_guard lock(mu_);
        auto it = latex_.find(s.id);
        if (it != latex_.end()) return it->second;
        auto dt = slots_by_dot_.find(s.id);
        if (dt != slots_by_dot_.end()) {
            const std::string& a = slots_.names.at(dt->second.first);
            const std::string& b = slots_.names.at(dt->second.second);
            if (a == b) return latex_identifier(a) + "^2";
            return latex_identifier(a) + " \\cdot " + latex_identifier(b);
        }
    }
    return latex_identifier(symbol_name(s));
}

std::string SymbolTable::slot_latex(Slot s) const { return latex_identifier(slot_name(s)); }

std::string SymbolTable::index_latex(Index i) const { return latex_identifier(index_name(i)); }

/// "A1" -> "A_{1}", "mu3" -> "\mu_3", "mW" -> "m_{W}", otherwise verbatim.
std::string latex_identifier(std::string_view name) {
    static const std::map<std::string, std::string, std::less<>> greek = {
        {"mu", "\\mu"}, {"nu", "\\nu"}, {"rho", "\\rho"}, {"sigma", "\\sigma"},
        {"xi", "\\xi"}, {"eta", "\\eta"}, {"phi", "\\varphi"}, {"theta", "\\theta"}};
    size_t split = name.size();
    while (split > 1 && (std::isdigit(static_cast<unsigned char>(name[split - 1])) ||
                         std::isupper(static_cast<unsigned char>(name[split - 1]))))
        --split;
    std::string head(name.substr(0, split));
    std::string tail(name.substr(split));
    auto it = greek.find(head);
    if (it != greek.end()) head = it->second;
    if (tail.empty()) return head;
    return head + "_{" + tail + "}";
}

}  // namespace corolla
