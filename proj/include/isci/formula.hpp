#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isci {

// Declaration order doubles as the canonical order of top-level shapes.
enum class FormulaKind : std::uint8_t { Bottom, Var, Imp, Id };

enum class FormulaClass { Prop, Bottom, Equation, Implication };

// Handle into a process-wide hash-consed arena. Structurally equal formulas
// share one handle, so equality is an index compare.
class Formula {
public:
    Formula();

    static Formula bottom();
    static Formula var(std::string_view name);
    static Formula imp(Formula lhs, Formula rhs);
    static Formula eq(Formula lhs, Formula rhs);
    static Formula make(FormulaKind kind, Formula lhs, Formula rhs);

    // Looks up a composite without interning it.
    static std::optional<Formula> find(FormulaKind kind, Formula lhs, Formula rhs);

    FormulaKind kind() const;
    bool is_bottom() const { return kind() == FormulaKind::Bottom; }
    bool is_var() const { return kind() == FormulaKind::Var; }
    bool is_imp() const { return kind() == FormulaKind::Imp; }
    bool is_eq() const { return kind() == FormulaKind::Id; }
    bool is_composite() const { return is_imp() || is_eq(); }
    bool is_reflexive_eq() const { return is_eq() && left() == right(); }

    const std::string & name() const;
    Formula left() const;
    Formula right() const;
    unsigned complexity() const;

    std::uint32_t index() const { return _index; }

    friend bool operator==(Formula a, Formula b) { return a._index == b._index; }

private:
    explicit Formula(std::uint32_t index) : _index(index) {}
    std::uint32_t _index;
};

std::strong_ordering canonical_compare(Formula a, Formula b);

inline std::strong_ordering operator<=>(Formula a, Formula b) { return canonical_compare(a, b); }

inline unsigned complexity(Formula f) { return f.complexity(); }

FormulaClass classify(Formula f);

// Sorted (canonical order), duplicate-free set of formulas.
class FormulaSet {
public:
    using const_iterator = std::vector<Formula>::const_iterator;

    FormulaSet() = default;
    FormulaSet(std::initializer_list<Formula> items);
    explicit FormulaSet(std::vector<Formula> items);

    // Caller guarantees canonical order and no duplicates.
    static FormulaSet from_sorted(std::vector<Formula> items);

    bool contains(Formula f) const;
    bool insert(Formula f);
    bool erase(Formula f);
    bool includes(const FormulaSet & other) const;

    std::size_t size() const { return _items.size(); }
    bool empty() const { return _items.empty(); }
    const_iterator begin() const { return _items.begin(); }
    const_iterator end() const { return _items.end(); }
    const std::vector<Formula> & items() const { return _items; }

    friend bool operator==(const FormulaSet &, const FormulaSet &) = default;
    friend std::strong_ordering operator<=>(const FormulaSet & a, const FormulaSet & b);

private:
    std::vector<Formula> _items;
};

FormulaSet subformulas(Formula f);

FormulaSet variables(Formula f);

// Upper bound on arena size (in nodes); exceeding it throws std::length_error.
std::size_t arena_capacity();

std::size_t arena_size();

} // namespace isci

template <>
struct std::hash<isci::Formula> {
    std::size_t operator()(isci::Formula f) const noexcept
    {
        std::uint64_t x = f.index() + 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(x ^ (x >> 31));
    }
};
