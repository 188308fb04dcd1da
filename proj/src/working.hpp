#pragma once

// Mutable sequent representation shared by the prover and the countermodel
// builder. Formulas are ranks in a GoalScope; the antecedent is a membership
// vector plus an insertion log, so extensions are undone by truncation.

#include <isci/calculus.hpp>
#include <isci/exsub.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace isci::detail {

std::uint64_t mix(std::uint64_t x);

class WorkingSequent {
public:
    WorkingSequent(const GoalScope & scope, const Sequent & s);

    const GoalScope & scope() const { return *_scope; }

    bool contains(Rank r) const { return r != no_rank && _present[r]; }
    bool add(Rank r);
    std::size_t mark() const { return _members.size(); }
    void undo(std::size_t mark);

    Rank succedent() const { return _succedent; }
    void set_succedent(Rank r) { _succedent = r; }

    bool is_axiom() const { return contains(_succedent) || contains(_scope->bottom()); }

    std::span<const Rank> members() const { return _members; }
    std::vector<Rank> sorted_members() const;
    // Ranks of antecedent formulas of the given kind, ascending.
    std::vector<Rank> members_of(FormulaKind kind) const;

    std::uint64_t key() const { return combine(_hash, _succedent); }
    // Key of the sequent obtained by adding `extra` (ranks may repeat or be
    // present already) and replacing the succedent.
    std::uint64_t key_with(std::span<const Rank> extra, Rank succedent) const;
    std::size_t size_with(std::span<const Rank> extra) const;

    Sequent sequent() const;

    static std::uint64_t combine(std::uint64_t antecedent_hash, Rank succedent);

private:
    const GoalScope * _scope;
    std::vector<char> _present;
    std::vector<Rank> _members;
    Rank _succedent;
    std::uint64_t _hash = 0;
};

// A sequent frozen for exact comparison.
struct Snapshot {
    std::vector<Rank> members; // ascending
    Rank succedent;
};

Snapshot snapshot(const WorkingSequent & ws);

// Does `ws` extended by `extra` with succedent `succ` equal the snapshot?
bool matches(const Snapshot & s, const WorkingSequent & ws, std::span<const Rank> extra, Rank succ);

// Sequents on the current branch, for the loop check.
class History {
public:
    void push(const WorkingSequent & ws);
    void pop();
    bool empty() const { return _entries.empty(); }

    // Key of the matching history sequent, if any.
    std::optional<std::uint64_t> find(const WorkingSequent & ws, std::span<const Rank> extra, Rank succ) const;
    bool has_key(std::uint64_t key) const { return _keys.count(key) != 0; }

private:
    std::vector<std::pair<std::uint64_t, Snapshot>> _entries;
    std::unordered_multimap<std::uint64_t, std::size_t> _keys;
};

struct Step {
    Rule rule;
    Rank a = no_rank; // LId1: the reflexive equation added; LId2, LId3: first equation
    Rank b = no_rank; // LId3: second equation
    FormulaKind op = FormulaKind::Imp;
};

RuleInstance to_instance(const GoalScope & scope, const Step & step);

// Formulas a step adds (no_rank entries are absent).
std::array<Rank, 2> added_by(const GoalScope & scope, const Step & step);

// Applies identity steps until none enlarges the antecedent, stopping early
// once the sequent is an axiom. Steps that would recreate a sequent of
// `history` are skipped. `on_step` runs after each applied step.
std::vector<Step> saturate(WorkingSequent & ws, const History * history = nullptr,
    const std::function<void(const Step &)> & on_step = {});

} // namespace isci::detail
