#include "working.hpp"

#include <algorithm>
#include <stdexcept>

namespace isci::detail {

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

Rank rank_of(const GoalScope & scope, Formula f)
{
    if (! scope.is_eligible(f))
        throw std::invalid_argument("sequent mentions a formula outside the extended subformulas of the goal");
    return scope.rank(f);
}

} // namespace

WorkingSequent::WorkingSequent(const GoalScope & scope, const Sequent & s) :
    _scope(&scope), _present(scope.size(), 0), _succedent(rank_of(scope, s.succedent))
{
    for (Formula f : s.antecedent)
        add(rank_of(scope, f));
}

bool WorkingSequent::add(Rank r)
{
    if (_present[r])
        return false;
    _present[r] = 1;
    _members.push_back(r);
    _hash += mix(r + 1);
    return true;
}

void WorkingSequent::undo(std::size_t mark)
{
    while (_members.size() > mark) {
        Rank r = _members.back();
        _members.pop_back();
        _present[r] = 0;
        _hash -= mix(r + 1);
    }
}

std::vector<Rank> WorkingSequent::sorted_members() const
{
    std::vector<Rank> out(_members.begin(), _members.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rank> WorkingSequent::members_of(FormulaKind kind) const
{
    std::vector<Rank> out;
    for (Rank r : _members)
        if (_scope->kind(r) == kind)
            out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t WorkingSequent::combine(std::uint64_t antecedent_hash, Rank succedent)
{
    return antecedent_hash ^ mix(0x5bd1e995ULL * (std::uint64_t{succedent} + 7));
}

std::uint64_t WorkingSequent::key_with(std::span<const Rank> extra, Rank succedent) const
{
    std::uint64_t h = _hash;
    for (std::size_t i = 0; i < extra.size(); ++i) {
        Rank r = extra[i];
        if (r == no_rank || _present[r] || std::find(extra.begin(), extra.begin() + static_cast<std::ptrdiff_t>(i), r) != extra.begin() + static_cast<std::ptrdiff_t>(i))
            continue;
        h += mix(r + 1);
    }
    return combine(h, succedent);
}

std::size_t WorkingSequent::size_with(std::span<const Rank> extra) const
{
    std::size_t n = _members.size();
    for (std::size_t i = 0; i < extra.size(); ++i) {
        Rank r = extra[i];
        if (r == no_rank || _present[r] || std::find(extra.begin(), extra.begin() + static_cast<std::ptrdiff_t>(i), r) != extra.begin() + static_cast<std::ptrdiff_t>(i))
            continue;
        ++n;
    }
    return n;
}

Sequent WorkingSequent::sequent() const
{
    std::vector<Formula> fs;
    fs.reserve(_members.size());
    for (Rank r : sorted_members())
        fs.push_back(_scope->formula(r));
    return Sequent{FormulaSet::from_sorted(std::move(fs)), _scope->formula(_succedent)};
}

Snapshot snapshot(const WorkingSequent & ws) { return Snapshot{ws.sorted_members(), ws.succedent()}; }

bool matches(const Snapshot & s, const WorkingSequent & ws, std::span<const Rank> extra, Rank succ)
{
    if (s.succedent != succ || s.members.size() != ws.size_with(extra))
        return false;
    for (Rank r : s.members)
        if (! ws.contains(r) && std::find(extra.begin(), extra.end(), r) == extra.end())
            return false;
    return true;
}

void History::push(const WorkingSequent & ws)
{
    std::uint64_t k = ws.key();
    _keys.emplace(k, _entries.size());
    _entries.emplace_back(k, snapshot(ws));
}

void History::pop()
{
    std::uint64_t k = _entries.back().first;
    std::size_t i = _entries.size() - 1;
    auto range = _keys.equal_range(k);
    for (auto it = range.first; it != range.second; ++it)
        if (it->second == i) {
            _keys.erase(it);
            break;
        }
    _entries.pop_back();
}

std::optional<std::uint64_t> History::find(const WorkingSequent & ws, std::span<const Rank> extra, Rank succ) const
{
    std::uint64_t k = ws.key_with(extra, succ);
    auto range = _keys.equal_range(k);
    for (auto it = range.first; it != range.second; ++it)
        if (matches(_entries[it->second].second, ws, extra, succ))
            return k;
    return std::nullopt;
}

RuleInstance to_instance(const GoalScope & scope, const Step & step)
{
    switch (step.rule) {
    case Rule::LId1: return RuleInstance{Rule::LId1, scope.formula(scope.left(step.a))};
    case Rule::LId2: return RuleInstance{Rule::LId2, scope.formula(step.a)};
    case Rule::LId3: return RuleInstance{Rule::LId3, scope.formula(step.a), scope.formula(step.b), step.op};
    default: throw std::logic_error("not an identity step");
    }
}

std::array<Rank, 2> added_by(const GoalScope & scope, const Step & step)
{
    switch (step.rule) {
    case Rule::LId1: return {step.a, no_rank};
    case Rule::LId2:
        return {scope.lookup(FormulaKind::Imp, scope.left(step.a), scope.right(step.a)),
            scope.lookup(FormulaKind::Imp, scope.right(step.a), scope.left(step.a))};
    case Rule::LId3: return {scope.composite(step.op, step.a, step.b), no_rank};
    default: throw std::logic_error("not an identity step");
    }
}

std::vector<Step> saturate(WorkingSequent & ws, const History * history, const std::function<void(const Step &)> & on_step)
{
    const GoalScope & scope = ws.scope();
    std::vector<Step> chain;

    // Returns true when saturation must stop because the sequent became an axiom.
    auto apply = [&](const Step & step) {
        auto added = added_by(scope, step);
        if (added[0] == no_rank)
            throw std::logic_error("identity step leaves the eligible set");
        bool grows = false;
        for (Rank r : added)
            if (r != no_rank && ! ws.contains(r))
                grows = true;
        if (! grows)
            return false;
        if (history && history->find(ws, added, ws.succedent()))
            return false;
        for (Rank r : added)
            if (r != no_rank)
                ws.add(r);
        chain.push_back(step);
        if (on_step)
            on_step(step);
        return ws.is_axiom();
    };

    if (ws.is_axiom())
        return chain;
    std::size_t before;
    do {
        before = ws.mark();
        for (Rank r : scope.reflexive_equations())
            if (apply(Step{Rule::LId1, r}))
                return chain;
        std::vector<Rank> eqs = ws.members_of(FormulaKind::Id);
        for (Rank e : eqs)
            if (apply(Step{Rule::LId2, e}))
                return chain;
        for (Rank e1 : eqs)
            for (Rank e2 : eqs) {
                if (scope.is_reflexive(e1) && scope.is_reflexive(e2))
                    continue;
                for (FormulaKind op : {FormulaKind::Imp, FormulaKind::Id}) {
                    if (scope.composite(op, e1, e2) == no_rank)
                        continue;
                    if (apply(Step{Rule::LId3, e1, e2, op}))
                        return chain;
                }
            }
    } while (ws.mark() != before);
    return chain;
}

} // namespace isci::detail
