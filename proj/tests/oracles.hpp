#pragma once

// Test-only reference implementations, written without the library's
// closure code so that they can serve as independent oracles.

#include <isci/formula.hpp>

#include <random>
#include <set>
#include <vector>

namespace oracle {

using isci::Formula;
using isci::FormulaKind;

// Every formula over `atoms` with complexity <= bound.
inline std::vector<Formula> all_formulas(const std::vector<Formula> & atoms, unsigned bound)
{
    std::vector<std::vector<Formula>> level(bound + 1);
    level[0] = atoms;
    for (unsigned c = 1; c <= bound; ++c)
        for (unsigned l = 0; l < c; ++l)
            for (Formula a : level[l])
                for (Formula b : level[c - 1 - l]) {
                    level[c].push_back(Formula::imp(a, b));
                    level[c].push_back(Formula::eq(a, b));
                }
    std::vector<Formula> out;
    for (auto & l : level)
        out.insert(out.end(), l.begin(), l.end());
    return out;
}

inline void collect_sub(Formula f, std::set<Formula> & out)
{
    out.insert(f);
    if (f.is_imp() || f.is_eq()) {
        collect_sub(f.left(), out);
        collect_sub(f.right(), out);
    }
}

// Naive least fixpoint of the extension clauses, iterated over the whole
// finite universe of candidate formulas.
inline std::set<Formula> naive_exsub(Formula phi)
{
    unsigned n = phi.complexity();
    std::set<Formula> sub;
    collect_sub(phi, sub);
    std::vector<Formula> atoms;
    for (Formula f : sub)
        if (! f.is_imp() && ! f.is_eq())
            atoms.push_back(f);
    std::vector<Formula> universe = all_formulas(atoms, n);

    std::set<Formula> e = sub;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Formula f : universe) {
            if (e.count(f))
                continue;
            bool in = false;
            if (f.is_eq() && f.left() == f.right() && e.count(f.left()))
                in = true;
            if (f.is_imp() && (e.count(Formula::eq(f.left(), f.right())) || e.count(Formula::eq(f.right(), f.left()))))
                in = true;
            if (f.is_eq()) {
                Formula l = f.left(), r = f.right();
                bool same = (l.is_imp() && r.is_imp()) || (l.is_eq() && r.is_eq());
                if (same && e.count(Formula::eq(l.left(), r.left())) && e.count(Formula::eq(l.right(), r.right())))
                    in = true;
            }
            if (in) {
                e.insert(f);
                changed = true;
            }
        }
    }
    return e;
}

// Members of `e` all of whose subformulas are members too.
inline std::set<Formula> closed_core(const std::set<Formula> & e)
{
    std::set<Formula> out;
    for (Formula f : e) {
        std::set<Formula> s;
        collect_sub(f, s);
        bool ok = true;
        for (Formula g : s)
            ok = ok && e.count(g);
        if (ok)
            out.insert(f);
    }
    return out;
}

// Least congruence on a subterm-closed universe containing `pairs`, by
// iterating the closure rules to a fixpoint on an explicit relation.
inline std::set<std::pair<Formula, Formula>> naive_congruence(const std::vector<Formula> & universe,
                                                              const std::vector<std::pair<Formula, Formula>> & pairs)
{
    std::set<std::pair<Formula, Formula>> rel(pairs.begin(), pairs.end());
    for (Formula f : universe)
        rel.emplace(f, f);
    bool changed = true;
    while (changed) {
        changed = false;
        auto add = [&](Formula a, Formula b) {
            if (rel.emplace(a, b).second)
                changed = true;
        };
        auto snapshot = rel;
        for (auto [a, b] : snapshot) {
            add(b, a);
            for (auto [c, d] : snapshot)
                if (b == c)
                    add(a, d);
        }
        for (Formula x : universe)
            for (Formula y : universe)
                if (x.is_composite() && x.kind() == y.kind() && snapshot.count({x.left(), y.left()})
                    && snapshot.count({x.right(), y.right()}))
                    add(x, y);
    }
    return rel;
}

class RandomFormulas {
public:
    explicit RandomFormulas(unsigned seed, std::vector<Formula> atoms) : _rng(seed), _atoms(std::move(atoms)) {}

    Formula operator()(unsigned max_complexity)
    {
        std::uniform_int_distribution<unsigned> c(0, max_complexity);
        return exactly(c(_rng));
    }

    Formula exactly(unsigned c)
    {
        if (c == 0)
            return _atoms[std::uniform_int_distribution<std::size_t>(0, _atoms.size() - 1)(_rng)];
        unsigned l = std::uniform_int_distribution<unsigned>(0, c - 1)(_rng);
        Formula a = exactly(l), b = exactly(c - 1 - l);
        return std::bernoulli_distribution(0.5)(_rng) ? Formula::imp(a, b) : Formula::eq(a, b);
    }

private:
    std::mt19937 _rng;
    std::vector<Formula> _atoms;
};

} // namespace oracle
