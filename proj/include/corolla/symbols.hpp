#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

namespace corolla {

/// Interned scalar symbol: Schwinger parameters A_e, masses, couplings,
/// trig atoms and momentum-dot invariants.  Equality is id equality and
/// ids are unique per name.
struct Symbol {
    uint32_t id = 0;
    friend bool operator==(Symbol a, Symbol b) { return a.id == b.id; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id != b.id; }
    friend bool operator<(Symbol a, Symbol b) { return a.id < b.id; }
};

/// Momentum slot xi_e (or an independent external momentum q_i).
struct Slot {
    uint32_t id = 0;
    friend bool operator==(Slot a, Slot b) { return a.id == b.id; }
    friend bool operator!=(Slot a, Slot b) { return a.id != b.id; }
    friend bool operator<(Slot a, Slot b) { return a.id < b.id; }
};

/// Lorentz index name mu_e.
struct Index {
    uint32_t id = 0;
    friend bool operator==(Index a, Index b) { return a.id == b.id; }
    friend bool operator!=(Index a, Index b) { return a.id != b.id; }
    friend bool operator<(Index a, Index b) { return a.id < b.id; }
};

/// Process-wide interning tables.  Registration is mutex-guarded so
/// concurrent enumerators may mint symbols safely.
class SymbolTable {
public:
    static SymbolTable& instance();

    Symbol symbol(std::string_view name);
    Symbol symbol(std::string_view name, std::string_view latex);
    Slot slot(std::string_view name);
    Index index(std::string_view name);

    /// The scalar invariant a·b, canonicalized so dot(a,b) == dot(b,a).
    Symbol dot(Slot a, Slot b);
    std::optional<std::pair<Slot, Slot>> dot_slots(Symbol s) const;

    const std::string& symbol_name(Symbol s) const;
    const std::string& slot_name(Slot s) const;
    const std::string& index_name(Index i) const;
    /// Latex form of a symbol name; falls back to the plain name.
    std::string symbol_latex(Symbol s) const;
    std::string slot_latex(Slot s) const;
    std::string index_latex(Index i) const;

private:
    struct Pool {
        std::deque<std::string> names;
        std::unordered_map<std::string, uint32_t> ids;
        uint32_t intern(std::string_view name);
    };

    mutable std::mutex mu_;
    Pool symbols_, slots_, indices_;
    std::unordered_map<uint32_t, std::string> latex_;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> dot_by_slots_;
    std::unordered_map<uint32_t, std::pair<uint32_t, uint32_t>> slots_by_dot_;
};

inline Symbol sym(std::string_view name) { return SymbolTable::instance().symbol(name); }
inline Slot slot(std::string_view name) { return SymbolTable::instance().slot(name); }
inline Index idx(std::string_view name) { return SymbolTable::instance().index(name); }
inline Symbol dot(Slot a, Slot b) { return SymbolTable::instance().dot(a, b); }

std::string latex_identifier(std::string_view name);

}  // namespace corolla
