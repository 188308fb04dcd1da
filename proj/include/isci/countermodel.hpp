#pragma once

#include <isci/calculus.hpp>
#include <isci/exsub.hpp>
#include <isci/prover.hpp>
#include <isci/semantics.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isci {

// Raised when the countermodel pipeline produces something that fails its
// own checks. Signals a defect, never a property of the input.
class ValidationFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Occurrence {
    Sequent sequent;
    std::optional<RuleInstance> rule; // rule leading to the next occurrence; empty at the leaf
};

struct Branch {
    std::vector<Occurrence> occurrences; // root first
};

// A maximal run of a branch not separated by R->.
struct Segment {
    std::size_t first, last; // occurrence indices, inclusive
};

struct Segmentation {
    std::vector<Segment> worlds;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // consecutive segments
};

// Search variant used for countermodels: identity saturation, then L-> on the
// least unsaturated, unblocked implication, then R->, else an open leaf.
// Left premises that the prover can close receive its proof.
DerivationPtr build_c5_derivation(const Sequent & s, const ScopePtr & scope, Budget & budget, ProverSession & prover);
DerivationPtr build_c5_derivation(const Sequent & s, Formula goal, const Limits & limits = {});

std::optional<Branch> leftmost_open_branch(const Derivation & d);

Segmentation segment_worlds(const Branch & b);

struct ModelWorld {
    std::size_t branch;
    Segment segment;
    FormulaSet gamma; // union of the member antecedents
};

struct CounterModel {
    Formula formula;
    std::vector<Sequent> roots;               // roots[i] spawned branches[i]; roots[0] is |- formula
    std::vector<DerivationPtr> derivations;   // derivations[i] contains branches[i]
    std::vector<Branch> branches;
    std::vector<ModelWorld> worlds;
    std::vector<std::pair<World, World>> branch_edges; // R-> steps within a branch
    std::vector<std::pair<World, World>> spawn_edges;  // world to the root world of a spawned branch
    KripkeModel model;
    World designated = 0;

    World world_of(std::size_t branch, std::size_t occurrence) const;
};

// Runs the whole construction for an unprovable formula and validates the
// result. Throws ValidationFailure if phi is provable or a check fails, and
// ResourceExhausted at a cap.
CounterModel countermodel(Formula phi, const Limits & limits = {});

struct CounterModelAudit {
    std::size_t provable_occurrences = 0;     // occurrences on model branches that the prover closes
    std::size_t unforced_antecedents = 0;     // antecedent formula not forced at its world
    std::size_t forced_succedents = 0;        // succedent forced at its world
    std::size_t unrecorded_equations = 0;     // componentwise consequence of recorded equations, itself unrecorded
    InvariantReport derivations;              // inheritance, ex.sub and repetition over all derivations
    CheckReport model;                        // semantic checks at the designated world
    std::string first_problem;

    bool ok() const
    {
        return provable_occurrences == 0 && unforced_antecedents == 0 && forced_succedents == 0 && unrecorded_equations == 0
            && derivations.ok() && model.ok;
    }
};

CounterModelAudit audit_countermodel(const CounterModel & cm, const Limits & limits = {});

} // namespace isci
