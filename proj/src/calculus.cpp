#include <isci/calculus.hpp>
#include <isci/syntax.hpp>

namespace isci {

std::strong_ordering operator<=>(const Sequent & a, const Sequent & b)
{
    if (auto c = a.antecedent <=> b.antecedent; c != 0)
        return c;
    return a.succedent <=> b.succedent;
}

const char * rule_name(Rule r)
{
    switch (r) {
    case Rule::LId1: return "L==1";
    case Rule::LId2: return "L==2";
    case Rule::LId3: return "L==3";
    case Rule::RImp: return "R->";
    case Rule::LImp: return "L->";
    }
    return "?";
}

bool is_axiom(const Sequent & s)
{
    return s.antecedent.contains(s.succedent) || s.antecedent.contains(Formula::bottom());
}

namespace {

Sequent extended(const Sequent & s, std::initializer_list<Formula> extra, Formula succedent)
{
    Sequent out{s.antecedent, succedent};
    for (Formula f : extra)
        out.antecedent.insert(f);
    return out;
}

void require(bool condition, const RuleInstance & instance, const char * why)
{
    if (! condition)
        throw InapplicableRule(std::string(rule_name(instance.rule)) + ": " + why);
}

Formula composite(const RuleInstance & i)
{
    return Formula::eq(Formula::make(i.op, i.first.left(), i.second.left()), Formula::make(i.op, i.first.right(), i.second.right()));
}

} // namespace

std::vector<Sequent> apply_rule(const Sequent & s, const RuleInstance & instance)
{
    switch (instance.rule) {
    case Rule::LImp: {
        Formula f = instance.first;
        require(f.is_imp(), instance, "principal formula is not an implication");
        require(s.antecedent.contains(f), instance, "principal formula not in the antecedent");
        return {Sequent{s.antecedent, f.left()}, extended(s, {f.right()}, s.succedent)};
    }
    case Rule::RImp:
        require(s.succedent.is_imp(), instance, "succedent is not an implication");
        return {extended(s, {s.succedent.left()}, s.succedent.right())};
    case Rule::LId1:
        return {extended(s, {Formula::eq(instance.first, instance.first)}, s.succedent)};
    case Rule::LId2: {
        Formula e = instance.first;
        require(e.is_eq(), instance, "principal formula is not an equation");
        require(s.antecedent.contains(e), instance, "principal equation not in the antecedent");
        return {extended(s, {Formula::imp(e.left(), e.right()), Formula::imp(e.right(), e.left())}, s.succedent)};
    }
    case Rule::LId3: {
        require(instance.first.is_eq() && instance.second.is_eq(), instance, "principal formulas are not equations");
        require(s.antecedent.contains(instance.first) && s.antecedent.contains(instance.second), instance,
            "principal equations not in the antecedent");
        require(instance.op == FormulaKind::Imp || instance.op == FormulaKind::Id, instance, "connective must be -> or ==");
        return {extended(s, {composite(instance)}, s.succedent)};
    }
    }
    throw InapplicableRule("unknown rule");
}

std::vector<RuleInstance> applicable_instances(const Sequent & s, const GoalScope & scope)
{
    std::vector<RuleInstance> out;
    const FormulaSet & g = s.antecedent;

    for (Rank r : scope.reflexive_equations())
        if (! g.contains(scope.formula(r)))
            out.push_back(RuleInstance{Rule::LId1, scope.formula(r).left()});

    std::vector<Formula> eqs;
    for (Formula f : g)
        if (f.is_eq())
            eqs.push_back(f);
    for (Formula e : eqs)
        if (! g.contains(Formula::imp(e.left(), e.right())) || ! g.contains(Formula::imp(e.right(), e.left())))
            out.push_back(RuleInstance{Rule::LId2, e});
    for (Formula e1 : eqs)
        for (Formula e2 : eqs)
            for (FormulaKind op : {FormulaKind::Imp, FormulaKind::Id}) {
                RuleInstance i{Rule::LId3, e1, e2, op};
                Formula c = composite(i);
                if (scope.is_eligible(c) && ! g.contains(c))
                    out.push_back(i);
            }

    if (s.succedent.is_imp())
        out.push_back(RuleInstance{Rule::RImp});

    for (Formula f : g)
        if (f.is_imp() && ! g.contains(f.right()) && f.left() != s.succedent)
            out.push_back(RuleInstance{Rule::LImp, f});
    return out;
}

std::vector<RuleInstance> applicable_instances(const Sequent & s, Formula goal) { return applicable_instances(s, GoalScope(goal)); }

} // namespace isci

std::size_t std::hash<isci::Sequent>::operator()(const isci::Sequent & s) const noexcept
{
    std::hash<isci::Formula> h;
    std::size_t x = h(s.succedent);
    for (isci::Formula f : s.antecedent)
        x = (x ^ h(f)) * 0x100000001b3ULL + 0x9e3779b9;
    return x;
}
