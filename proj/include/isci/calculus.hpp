#pragma once

#include <isci/exsub.hpp>
#include <isci/formula.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isci {

struct Sequent {
    FormulaSet antecedent;
    Formula succedent;

    friend bool operator==(const Sequent &, const Sequent &) = default;
    friend std::strong_ordering operator<=>(const Sequent & a, const Sequent & b);
};

enum class Rule { LId1, LId2, LId3, RImp, LImp };

// The rule name as used in every output format.
const char * rule_name(Rule r);

struct RuleInstance {
    Rule rule;
    // LImp: the implication acted on. LId1: psi, introducing psi == psi.
    // LId2: the equation. LId3: psi == delta. RImp: unused.
    Formula first{};
    // LId3 only: phi == chi.
    Formula second{};
    // LId3 only: the connective of the composite.
    FormulaKind op = FormulaKind::Imp;

    friend bool operator==(const RuleInstance &, const RuleInstance &) = default;
};

class InapplicableRule : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool is_axiom(const Sequent & s);

// Premises in the order of the rule (left premise first for LImp). Throws
// InapplicableRule if the principal data is not in the sequent.
std::vector<Sequent> apply_rule(const Sequent & s, const RuleInstance & instance);

// Instances whose premises are eligible for the goal and differ from the
// conclusion, ordered identity rules first (LId1, LId2, LId3), then RImp,
// then LImp, each group in canonical order of its principal data.
std::vector<RuleInstance> applicable_instances(const Sequent & s, const GoalScope & scope);
std::vector<RuleInstance> applicable_instances(const Sequent & s, Formula goal);

enum class LeafStatus { Axiom, Open };

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    Sequent sequent;
    std::optional<RuleInstance> rule; // empty for leaves
    LeafStatus leaf = LeafStatus::Open;
    std::vector<DerivationPtr> premises;

    bool is_leaf() const { return ! rule.has_value(); }
};

DerivationPtr make_leaf(Sequent s);
DerivationPtr make_node(Sequent s, RuleInstance rule, std::vector<DerivationPtr> premises);

std::size_t derivation_size(const Derivation & d);
std::size_t derivation_height(const Derivation & d);
bool is_closed(const Derivation & d);

struct ProofCheck {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

// Independent of the search: root must equal the claim, every inner node must
// match apply_rule exactly, every leaf must be an axiom.
ProofCheck check_proof(const Derivation & d, const Sequent & claim);

struct InvariantReport {
    std::size_t nodes = 0;
    std::size_t inheritance_violations = 0; // a premise antecedent lost a formula
    std::size_t exsub_violations = 0;       // a formula outside ex.sub(goal)
    std::size_t repetition_violations = 0;  // a sequent repeated along a branch
    std::string first_problem;

    bool ok() const { return inheritance_violations == 0 && exsub_violations == 0 && repetition_violations == 0; }
};

InvariantReport audit_derivation(const Derivation & d, const GoalScope & scope);

// Replaces every subtree whose root reappears above itself on the same branch
// by the upper occurrence. The result is still valid if the input was.
DerivationPtr remove_repetitions(const DerivationPtr & d);

} // namespace isci

template <>
struct std::hash<isci::Sequent> {
    std::size_t operator()(const isci::Sequent & s) const noexcept;
};
