#include <isci/calculus.hpp>
#include <isci/syntax.hpp>

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace isci {

DerivationPtr make_leaf(Sequent s)
{
    auto d = std::make_shared<Derivation>();
    d->leaf = is_axiom(s) ? LeafStatus::Axiom : LeafStatus::Open;
    d->sequent = std::move(s);
    return d;
}

DerivationPtr make_node(Sequent s, RuleInstance rule, std::vector<DerivationPtr> premises)
{
    auto d = std::make_shared<Derivation>();
    d->sequent = std::move(s);
    d->rule = rule;
    d->premises = std::move(premises);
    return d;
}

std::size_t derivation_size(const Derivation & d)
{
    std::size_t n = 1;
    for (auto & p : d.premises)
        n += derivation_size(*p);
    return n;
}

std::size_t derivation_height(const Derivation & d)
{
    std::size_t h = 0;
    for (auto & p : d.premises)
        h = std::max(h, derivation_height(*p));
    return h + 1;
}

bool is_closed(const Derivation & d)
{
    if (d.is_leaf())
        return d.leaf == LeafStatus::Axiom && is_axiom(d.sequent);
    return std::all_of(d.premises.begin(), d.premises.end(), [](auto & p) { return is_closed(*p); });
}

namespace {

ProofCheck fail(const Derivation & d, const std::string & why) { return ProofCheck{false, print_sequent(d.sequent) + ": " + why}; }

ProofCheck check_node(const Derivation & d)
{
    if (d.is_leaf()) {
        if (! is_axiom(d.sequent))
            return fail(d, "leaf is not an axiom");
        return {};
    }
    std::vector<Sequent> expected;
    try {
        expected = apply_rule(d.sequent, *d.rule);
    }
    catch (const InapplicableRule & e) {
        return fail(d, e.what());
    }
    if (expected.size() != d.premises.size())
        return fail(d, std::string("wrong number of premises for ") + rule_name(d.rule->rule));
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (! d.premises[i])
            return fail(d, "missing premise");
        if (d.premises[i]->sequent != expected[i])
            return fail(d, "premise " + std::to_string(i + 1) + " should be " + print_sequent(expected[i]));
    }
    for (auto & p : d.premises)
        if (auto r = check_node(*p); ! r)
            return r;
    return {};
}

} // namespace

ProofCheck check_proof(const Derivation & d, const Sequent & claim)
{
    if (d.sequent != claim)
        return ProofCheck{false, "root " + print_sequent(d.sequent) + " differs from the claim " + print_sequent(claim)};
    return check_node(d);
}

InvariantReport audit_derivation(const Derivation & d, const GoalScope & scope)
{
    InvariantReport report;
    std::unordered_map<Sequent, int> path;
    auto note = [&](const std::string & what) {
        if (report.first_problem.empty())
            report.first_problem = what;
    };

    std::function<void(const Derivation &)> walk = [&](const Derivation & node) {
        ++report.nodes;
        for (Formula f : node.sequent.antecedent)
            if (! scope.in_exsub(f)) {
                ++report.exsub_violations;
                note(print_formula(f) + " is not an extended subformula");
            }
        if (! scope.in_exsub(node.sequent.succedent)) {
            ++report.exsub_violations;
            note(print_formula(node.sequent.succedent) + " is not an extended subformula");
        }
        int & seen = path[node.sequent];
        if (seen > 0) {
            ++report.repetition_violations;
            note("repeated sequent " + print_sequent(node.sequent));
        }
        ++seen;
        for (auto & p : node.premises) {
            if (! p->sequent.antecedent.includes(node.sequent.antecedent)) {
                ++report.inheritance_violations;
                note("premise of " + print_sequent(node.sequent) + " drops antecedent formulas");
            }
            walk(*p);
        }
        if (--path[node.sequent] == 0)
            path.erase(node.sequent);
    };
    walk(d);
    return report;
}

namespace {

const Derivation * find_below(const Derivation & d, const Sequent & s)
{
    for (auto & p : d.premises) {
        if (p->sequent == s)
            return p.get();
        if (auto hit = find_below(*p, s))
            return hit;
    }
    return nullptr;
}

DerivationPtr shortcut(DerivationPtr d)
{
    while (true) {
        const Derivation * hit = find_below(*d, d->sequent);
        if (! hit)
            break;
        // Keep the upper occurrence's subtree alive through a fresh copy.
        d = std::make_shared<Derivation>(*hit);
    }
    std::vector<DerivationPtr> premises;
    bool changed = false;
    for (auto & p : d->premises) {
        premises.push_back(shortcut(p));
        changed |= premises.back() != p;
    }
    if (! changed)
        return d;
    auto copy = std::make_shared<Derivation>(*d);
    copy->premises = std::move(premises);
    return copy;
}

} // namespace

DerivationPtr remove_repetitions(const DerivationPtr & d) { return shortcut(d); }

} // namespace isci
