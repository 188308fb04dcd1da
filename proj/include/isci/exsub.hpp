#pragma once

#include <isci/formula.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace isci {

// Least superset of `seed` closed under the three extension clauses with
// complexity bound `bound`:
//   chi == chi            when complexity <= bound,
//   chi == psi            gives chi -> psi and psi -> chi,
//   chi1 == psi1, chi2 == psi2 gives (chi1 o chi2) == (psi1 o psi2) for o in {->, ==}
//                         when complexity <= bound.
FormulaSet close_extended(const FormulaSet & seed, unsigned bound);

// The closure of subformulas(phi) with bound complexity(phi).
FormulaSet extended_subformulas(Formula phi);

// Membership in extended_subformulas(goal) decided structurally, without
// materialising the (possibly very large) set.
class ExSubMembership {
public:
    explicit ExSubMembership(Formula goal);

    Formula goal() const { return _goal; }
    unsigned bound() const { return _bound; }
    bool contains(Formula f) const;

private:
    Formula _goal;
    unsigned _bound;
    FormulaSet _sub;
    mutable std::unordered_map<Formula, bool> _memo;
};

using Rank = std::uint32_t;
inline constexpr Rank no_rank = ~Rank{0};

// Everything rule applications may depend on for one goal. The eligible set
// is the part of ex.sub(goal) whose subformulas all lie in ex.sub(goal); the
// identity rules only ever introduce eligible formulas. Ranks index the
// eligible set in canonical order.
//
// Not safe for concurrent use (membership is memoised).
class GoalScope {
public:
    explicit GoalScope(Formula goal);

    Formula goal() const { return _membership.goal(); }
    unsigned bound() const { return _membership.bound(); }

    bool in_exsub(Formula f) const { return _membership.contains(f); }
    bool is_eligible(Formula f) const { return _rank.count(f) != 0; }
    const FormulaSet & eligible() const { return _eligible; }

    std::size_t size() const { return _eligible.size(); }
    Rank rank(Formula f) const;
    Formula formula(Rank r) const { return _eligible.items()[r]; }
    FormulaKind kind(Rank r) const { return _info[r].kind; }
    Rank left(Rank r) const { return _info[r].lhs; }
    Rank right(Rank r) const { return _info[r].rhs; }
    bool is_reflexive(Rank r) const { return _info[r].kind == FormulaKind::Id && _info[r].lhs == _info[r].rhs; }

    // Rank of the eligible formula with the given shape, or no_rank.
    Rank lookup(FormulaKind kind, Rank lhs, Rank rhs) const;

    Rank bottom() const { return _bottom; }
    std::span<const Rank> reflexive_equations() const { return _reflexive; }

    // Equation composite (a1 o b1) == (a2 o b2) from a1 == a2 and b1 == b2.
    Rank composite(FormulaKind op, Rank first_eq, Rank second_eq) const;

private:
    struct Info {
        FormulaKind kind;
        Rank lhs, rhs;
    };

    ExSubMembership _membership;
    FormulaSet _eligible;
    std::unordered_map<Formula, Rank> _rank;
    std::vector<Info> _info;
    std::unordered_map<std::uint64_t, Rank> _shape;
    std::vector<Rank> _reflexive;
    Rank _bottom = no_rank;
};

using ScopePtr = std::shared_ptr<const GoalScope>;

ScopePtr make_scope(Formula goal);

} // namespace isci
