#include <isci/countermodel.hpp>
#include <isci/syntax.hpp>

#include "working.hpp"

#include <map>
#include <set>

namespace isci {

using namespace detail;

namespace {

class C5Builder {
public:
    C5Builder(const GoalScope & scope, Budget & budget, ProverSession & prover) : _scope(scope), _budget(budget), _prover(prover) {}

    DerivationPtr build(const Sequent & s)
    {
        WorkingSequent ws(_scope, s);
        // Grafted proofs may revisit an ancestor; such an ancestor is
        // provable, so cutting to the lower occurrence leaves every open
        // branch intact.
        return remove_repetitions(expand(ws));
    }

private:
    DerivationPtr expand(WorkingSequent & ws)
    {
        _budget.tick();
        Sequent current = ws.sequent();
        if (ws.is_axiom())
            return make_leaf(std::move(current));

        const std::size_t mark = ws.mark();
        const Rank succ = ws.succedent();
        _history.push(ws);

        std::vector<std::pair<RuleInstance, Sequent>> chain;
        auto steps = saturate(ws, &_history, [&](const Step & step) {
            Sequent next = ws.sequent();
            chain.emplace_back(to_instance(_scope, step), std::exchange(current, std::move(next)));
        });

        DerivationPtr top;
        if (ws.is_axiom())
            top = make_leaf(current);
        else {
            if (! steps.empty())
                _history.push(ws);
            top = decide(ws, current, succ);
            if (! steps.empty())
                _history.pop();
        }
        _history.pop();
        ws.undo(mark);

        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            top = make_node(std::move(it->second), it->first, {top});
        return top;
    }

    DerivationPtr decide(WorkingSequent & ws, const Sequent & current, Rank succ)
    {
        for (Rank imp : ws.members_of(FormulaKind::Imp)) {
            Rank x = _scope.left(imp), y = _scope.right(imp);
            if (ws.contains(y) || x == succ)
                continue;
            Rank extra[] = {y};
            if (_history.find(ws, {}, x) || _history.find(ws, extra, succ))
                continue;

            ws.set_succedent(x);
            DerivationPtr left = _prover.prove_sequent(ws.sequent());
            if (! left)
                left = expand(ws);
            ws.set_succedent(succ);

            std::size_t mark = ws.mark();
            ws.add(y);
            DerivationPtr right = expand(ws);
            ws.undo(mark);
            return make_node(current, RuleInstance{Rule::LImp, _scope.formula(imp)}, {left, right});
        }

        if (_scope.kind(succ) == FormulaKind::Imp) {
            Rank a = _scope.left(succ), b = _scope.right(succ);
            Rank extra[] = {a};
            if (! _history.find(ws, extra, b)) {
                std::size_t mark = ws.mark();
                ws.add(a);
                ws.set_succedent(b);
                DerivationPtr child = expand(ws);
                ws.undo(mark);
                ws.set_succedent(succ);
                return make_node(current, RuleInstance{Rule::RImp}, {child});
            }
        }
        return make_leaf(current);
    }

    const GoalScope & _scope;
    Budget & _budget;
    ProverSession & _prover;
    History _history;
};

bool collect_open(const Derivation & d, Branch & out)
{
    out.occurrences.push_back(Occurrence{d.sequent, d.rule});
    if (d.is_leaf()) {
        if (d.leaf == LeafStatus::Open && ! is_axiom(d.sequent))
            return true;
    }
    else
        for (auto & p : d.premises)
            if (collect_open(*p, out))
                return true;
    out.occurrences.pop_back();
    return false;
}

FormulaSet union_of_antecedents(const Branch & b, Segment s)
{
    std::vector<Formula> all;
    for (std::size_t i = s.first; i <= s.last; ++i)
        all.insert(all.end(), b.occurrences[i].sequent.antecedent.begin(), b.occurrences[i].sequent.antecedent.end());
    return FormulaSet(std::move(all));
}

// The componentwise extension of the recorded equations. The model uses the
// congruence they generate instead; this smaller valuation is what the
// recorded-equation audit is stated for.
bool recorded_value(Formula f, const FormulaSet & gamma)
{
    if (f.is_var())
        return gamma.contains(f);
    if (f.is_reflexive_eq() || gamma.contains(f))
        return true;
    Formula l = f.left(), r = f.right();
    return l.is_composite() && l.kind() == r.kind() && recorded_value(Formula::eq(l.left(), r.left()), gamma)
        && recorded_value(Formula::eq(l.right(), r.right()), gamma);
}

} // namespace

DerivationPtr build_c5_derivation(const Sequent & s, const ScopePtr & scope, Budget & budget, ProverSession & prover)
{
    C5Builder builder(*scope, budget, prover);
    return builder.build(s);
}

DerivationPtr build_c5_derivation(const Sequent & s, Formula goal, const Limits & limits)
{
    Budget budget(limits);
    ScopePtr scope = make_scope(goal);
    ProverSession prover(scope, budget);
    return build_c5_derivation(s, scope, budget, prover);
}

std::optional<Branch> leftmost_open_branch(const Derivation & d)
{
    Branch b;
    if (collect_open(d, b))
        return b;
    return std::nullopt;
}

Segmentation segment_worlds(const Branch & b)
{
    Segmentation out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < b.occurrences.size(); ++i) {
        const auto & rule = b.occurrences[i].rule;
        bool cut = rule && rule->rule == Rule::RImp;
        if (cut || i + 1 == b.occurrences.size()) {
            out.worlds.push_back(Segment{start, i});
            start = i + 1;
            if (cut)
                out.edges.emplace_back(out.worlds.size() - 1, out.worlds.size());
        }
    }
    return out;
}

World CounterModel::world_of(std::size_t branch, std::size_t occurrence) const
{
    for (World w = 0; w < worlds.size(); ++w)
        if (worlds[w].branch == branch && worlds[w].segment.first <= occurrence && occurrence <= worlds[w].segment.last)
            return w;
    throw std::out_of_range("occurrence outside every world");
}

CounterModel countermodel(Formula phi, const Limits & limits)
{
    Budget budget(limits);
    ScopePtr scope = make_scope(phi);
    ProverSession prover(scope, budget);

    Sequent root{{}, phi};
    if (prover.prove_sequent(root))
        throw ValidationFailure("countermodel requested for a provable formula: " + print_formula(phi));

    CounterModel cm;
    cm.formula = phi;
    std::map<Sequent, std::size_t> spawned;
    std::vector<World> root_world;

    auto add_branch = [&](const Sequent & s) {
        DerivationPtr d = build_c5_derivation(s, scope, budget, prover);
        auto b = leftmost_open_branch(*d);
        if (! b)
            throw ValidationFailure("no open branch for the unprovable sequent " + print_sequent(s));
        std::size_t index = cm.branches.size();
        spawned.emplace(s, index);
        Segmentation seg = segment_worlds(*b);
        World base = cm.worlds.size();
        for (Segment sg : seg.worlds)
            cm.worlds.push_back(ModelWorld{index, sg, union_of_antecedents(*b, sg)});
        for (auto [a, c] : seg.edges)
            cm.branch_edges.emplace_back(base + a, base + c);
        root_world.push_back(base);
        cm.roots.push_back(s);
        cm.derivations.push_back(d);
        cm.branches.push_back(std::move(*b));
    };

    add_branch(root);
    std::set<std::pair<World, World>> spawn;
    for (std::size_t i = 0; i < cm.branches.size(); ++i) {
        for (std::size_t j = 0; j < cm.branches[i].occurrences.size(); ++j) {
            Formula succ = cm.branches[i].occurrences[j].sequent.succedent;
            if (! succ.is_imp())
                continue;
            World w = cm.world_of(i, j);
            Sequent target{cm.worlds[w].gamma, succ.right()};
            target.antecedent.insert(succ.left());
            auto it = spawned.find(target);
            if (it == spawned.end()) {
                if (prover.prove_sequent(target))
                    throw ValidationFailure("spawned sequent is provable: " + print_sequent(target));
                add_branch(target);
                it = spawned.find(target);
            }
            spawn.emplace(w, root_world[it->second]);
        }
    }
    cm.spawn_edges.assign(spawn.begin(), spawn.end());

    Frame frame(cm.worlds.size());
    for (auto [a, b] : cm.branch_edges)
        frame.set(a, b);
    for (auto [a, b] : cm.spawn_edges)
        frame.set(a, b);
    frame.close();

    std::vector<Formula> base;
    for (Formula f : scope->eligible())
        if (f.is_var() || f.is_eq())
            base.push_back(f);
    Assignment valuation(base, cm.worlds.size());
    for (World w = 0; w < cm.worlds.size(); ++w) {
        const FormulaSet & gamma = cm.worlds[w].gamma;
        Congruence c;
        for (Formula f : gamma)
            if (f.is_eq())
                c.merge(f.left(), f.right());
        for (Formula f : base)
            valuation.set(f, w, f.is_var() ? gamma.contains(f) : c.same(f.left(), f.right()));
    }
    cm.model = KripkeModel{std::move(frame), std::move(valuation)};
    cm.designated = root_world[0];

    if (auto r = check_countermodel(cm.model, cm.designated, phi); ! r)
        throw ValidationFailure("constructed model fails validation: " + r.message);
    return cm;
}

CounterModelAudit audit_countermodel(const CounterModel & cm, const Limits & limits)
{
    CounterModelAudit a;
    auto note = [&](const std::string & what) {
        if (a.first_problem.empty())
            a.first_problem = what;
    };
    ScopePtr scope = make_scope(cm.formula);
    Budget budget(limits);
    ProverSession prover(scope, budget);
    Forcing ev(cm.model);

    for (auto & d : cm.derivations) {
        InvariantReport r = audit_derivation(*d, *scope);
        a.derivations.nodes += r.nodes;
        a.derivations.inheritance_violations += r.inheritance_violations;
        a.derivations.exsub_violations += r.exsub_violations;
        a.derivations.repetition_violations += r.repetition_violations;
        if (a.derivations.first_problem.empty())
            a.derivations.first_problem = r.first_problem;
    }
    if (! a.derivations.ok())
        note(a.derivations.first_problem);

    for (std::size_t i = 0; i < cm.branches.size(); ++i)
        for (std::size_t j = 0; j < cm.branches[i].occurrences.size(); ++j) {
            const Sequent & s = cm.branches[i].occurrences[j].sequent;
            World w = cm.world_of(i, j);
            if (prover.prove_sequent(s)) {
                ++a.provable_occurrences;
                note("provable occurrence " + print_sequent(s));
            }
            for (Formula f : s.antecedent)
                if (! ev.forces(w, f)) {
                    ++a.unforced_antecedents;
                    note(print_formula(f) + " unforced at world " + std::to_string(w));
                }
            if (ev.forces(w, s.succedent)) {
                ++a.forced_succedents;
                note("succedent of " + print_sequent(s) + " forced at world " + std::to_string(w));
            }
        }

    unsigned bound = cm.formula.complexity();
    for (Formula l : scope->eligible())
        for (Formula r : scope->eligible()) {
            if (l == r || l.complexity() + r.complexity() + 1 > bound)
                continue;
            Formula e = Formula::eq(l, r);
            for (World w = 0; w < cm.worlds.size(); ++w)
                if (recorded_value(e, cm.worlds[w].gamma) && ! cm.worlds[w].gamma.contains(e)) {
                    ++a.unrecorded_equations;
                    note(print_formula(e) + " true but unrecorded at world " + std::to_string(w));
                }
        }

    a.model = check_countermodel(cm.model, cm.designated, cm.formula);
    if (! a.model)
        note(a.model.message);
    return a;
}

} // namespace isci
