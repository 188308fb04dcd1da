#include <isci/exsub.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace isci {

namespace {

constexpr FormulaKind connectives[] = {FormulaKind::Imp, FormulaKind::Id};

class Growing {
public:
    explicit Growing(const FormulaSet & seed)
    {
        for (Formula f : seed)
            add(f);
    }

    bool add(Formula f)
    {
        if (! _members.insert(f).second)
            return false;
        _list.push_back(f);
        return true;
    }

    bool contains(Formula f) const { return _members.count(f) != 0; }
    const std::vector<Formula> & list() const { return _list; }

private:
    std::unordered_set<Formula> _members;
    std::vector<Formula> _list;
};

// Equations bucketed by complexity, so that pair enumeration can respect the bound.
using Buckets = std::map<unsigned, std::vector<Formula>>;

} // namespace

FormulaSet close_extended(const FormulaSet & seed, unsigned bound)
{
    Growing set(seed);
    std::vector<Formula> eqs;
    std::size_t processed = 0, eq_done = 0;

    while (processed < set.list().size()) {
        std::size_t end = set.list().size();
        for (std::size_t i = processed; i < end; ++i) {
            Formula f = set.list()[i];
            if (2 * f.complexity() + 1 <= bound)
                set.add(Formula::eq(f, f));
            if (f.is_eq()) {
                set.add(Formula::imp(f.left(), f.right()));
                set.add(Formula::imp(f.right(), f.left()));
                eqs.push_back(f);
            }
        }
        processed = end;

        // Only pairs involving an equation that is new this round can yield
        // something new.
        std::size_t eq_end = eqs.size();
        Buckets buckets;
        for (std::size_t i = 0; i < eq_end; ++i)
            buckets[eqs[i].complexity()].push_back(eqs[i]);
        std::unordered_set<Formula> fresh(eqs.begin() + static_cast<std::ptrdiff_t>(eq_done), eqs.begin() + static_cast<std::ptrdiff_t>(eq_end));
        for (std::size_t i = 0; i < eq_end; ++i) {
            Formula e1 = eqs[i];
            bool e1_fresh = i >= eq_done;
            if (e1.complexity() + 1 > bound)
                continue;
            unsigned budget = bound - 1 - e1.complexity();
            for (auto & [c, bucket] : buckets) {
                if (c > budget)
                    break;
                for (Formula e2 : bucket) {
                    if (! e1_fresh && ! fresh.count(e2))
                        continue;
                    for (FormulaKind op : connectives)
                        set.add(Formula::eq(Formula::make(op, e1.left(), e2.left()), Formula::make(op, e1.right(), e2.right())));
                }
            }
        }
        eq_done = eq_end;
    }
    return FormulaSet(set.list());
}

FormulaSet extended_subformulas(Formula phi) { return close_extended(subformulas(phi), phi.complexity()); }

ExSubMembership::ExSubMembership(Formula goal) : _goal(goal), _bound(goal.complexity()), _sub(subformulas(goal)) {}

bool ExSubMembership::contains(Formula f) const
{
    if (_sub.contains(f))
        return true;
    if (f.complexity() > _bound || ! f.is_composite())
        return false;
    if (auto it = _memo.find(f); it != _memo.end())
        return it->second;

    bool result = false;
    Formula l = f.left(), r = f.right();
    if (f.is_imp())
        result = contains(Formula::eq(l, r)) || contains(Formula::eq(r, l));
    else {
        if (l == r)
            result = contains(l);
        if (! result && l.is_composite() && l.kind() == r.kind())
            result = contains(Formula::eq(l.left(), r.left())) && contains(Formula::eq(l.right(), r.right()));
    }
    _memo.emplace(f, result);
    return result;
}

namespace {

std::uint64_t shape_key(FormulaKind kind, Rank lhs, Rank rhs)
{
    return (std::uint64_t(kind) << 62) ^ (std::uint64_t{lhs} << 31) ^ rhs;
}

FormulaSet eligible_closure(Formula goal)
{
    unsigned bound = goal.complexity();
    Growing set(subformulas(goal));
    std::size_t processed = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::size_t end = set.list().size();
        for (std::size_t i = processed; i < end; ++i) {
            Formula f = set.list()[i];
            if (2 * f.complexity() + 1 <= bound)
                changed |= set.add(Formula::eq(f, f));
            if (f.is_eq()) {
                changed |= set.add(Formula::imp(f.left(), f.right()));
                changed |= set.add(Formula::imp(f.right(), f.left()));
            }
        }
        processed = end;

        // Composites need both sides already present; a side may appear in a
        // later round, so every round revisits all pairs.
        Buckets buckets;
        for (Formula f : set.list())
            if (f.is_eq())
                buckets[f.complexity()].push_back(f);
        for (auto & [c1, b1] : buckets) {
            if (c1 + 1 > bound)
                break;
            unsigned budget = bound - 1 - c1;
            for (Formula e1 : b1)
                for (auto & [c2, b2] : buckets) {
                    if (c2 > budget)
                        break;
                    for (Formula e2 : b2) {
                        if (e1.is_reflexive_eq() && e2.is_reflexive_eq())
                            continue;
                        for (FormulaKind op : connectives) {
                            auto lhs = Formula::find(op, e1.left(), e2.left());
                            if (! lhs || ! set.contains(*lhs))
                                continue;
                            auto rhs = Formula::find(op, e1.right(), e2.right());
                            if (! rhs || ! set.contains(*rhs))
                                continue;
                            changed |= set.add(Formula::eq(*lhs, *rhs));
                        }
                    }
                }
        }
    }
    return FormulaSet(set.list());
}

} // namespace

GoalScope::GoalScope(Formula goal) : _membership(goal), _eligible(eligible_closure(goal))
{
    const auto & items = _eligible.items();
    _info.reserve(items.size());
    for (Rank r = 0; r < items.size(); ++r)
        _rank.emplace(items[r], r);
    for (Rank r = 0; r < items.size(); ++r) {
        Formula f = items[r];
        Info info{f.kind(), no_rank, no_rank};
        if (f.is_composite()) {
            info.lhs = _rank.at(f.left());
            info.rhs = _rank.at(f.right());
            _shape.emplace(shape_key(info.kind, info.lhs, info.rhs), r);
        }
        _info.push_back(info);
        if (f.is_reflexive_eq())
            _reflexive.push_back(r);
        if (f.is_bottom())
            _bottom = r;
    }
}

Rank GoalScope::rank(Formula f) const
{
    auto it = _rank.find(f);
    if (it == _rank.end())
        throw std::out_of_range("formula outside the eligible set of the goal");
    return it->second;
}

Rank GoalScope::lookup(FormulaKind kind, Rank lhs, Rank rhs) const
{
    auto it = _shape.find(shape_key(kind, lhs, rhs));
    return it == _shape.end() ? no_rank : it->second;
}

Rank GoalScope::composite(FormulaKind op, Rank first_eq, Rank second_eq) const
{
    Rank lhs = lookup(op, left(first_eq), left(second_eq));
    if (lhs == no_rank)
        return no_rank;
    Rank rhs = lookup(op, right(first_eq), right(second_eq));
    if (rhs == no_rank)
        return no_rank;
    return lookup(FormulaKind::Id, lhs, rhs);
}

ScopePtr make_scope(Formula goal) { return std::make_shared<const GoalScope>(goal); }

} // namespace isci
