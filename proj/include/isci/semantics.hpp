#pragma once

#include <isci/formula.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace isci {

using World = std::size_t;

// A finite preorder given as a reachability matrix; leq(a, b) means a <= b.
class Frame {
public:
    explicit Frame(std::size_t worlds = 0);
    static Frame from_pairs(std::size_t worlds, const std::vector<std::pair<World, World>> & pairs);

    std::size_t size() const { return _size; }
    bool leq(World a, World b) const { return _leq[a * _size + b]; }
    void set(World a, World b, bool value = true) { _leq[a * _size + b] = value; }

    // Adds the reflexive-transitive closure of the current relation.
    void close();

    std::vector<std::pair<World, World>> pairs() const;
    std::vector<World> successors(World w) const;

private:
    std::size_t _size;
    std::vector<bool> _leq;
};

// Ground congruence closure over formulas: the least equivalence containing
// the merged pairs and closed under -> and ==.
class Congruence {
public:
    void merge(Formula a, Formula b);
    bool same(Formula a, Formula b);

private:
    std::uint32_t node(Formula f);
    std::uint32_t find(std::uint32_t x);
    void propagate();

    std::unordered_map<Formula, std::uint32_t> _id;
    std::vector<Formula> _term;
    std::vector<std::uint32_t> _parent;
    std::vector<std::vector<std::uint32_t>> _uses; // composites with an operand in the class
    std::unordered_map<std::uint64_t, std::uint32_t> _signature;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> _pending;
};

// Stored truth values for a finite base of variables and equations.
// Variables outside the base are false. An equation holds at w iff its sides
// are congruent modulo the equations stored true at w; in every model the
// true equations of a world form such a congruence. Stored false equations
// must not be congruent (see check_admissible).
class Assignment {
public:
    Assignment() = default;
    Assignment(std::vector<Formula> base, std::size_t worlds);

    const std::vector<Formula> & base() const { return _base; }
    std::size_t worlds() const { return _worlds; }
    bool in_base(Formula f) const { return _index.count(f) != 0; }

    void set(Formula f, World w, bool value);
    std::optional<bool> stored(Formula f, World w) const;
    // Non-reflexive equations stored true at w.
    std::vector<Formula> generators(World w) const;

private:
    std::vector<Formula> _base;
    std::size_t _worlds = 0;
    std::unordered_map<Formula, std::size_t> _index;
    std::vector<bool> _values; // base-major
};

struct KripkeModel {
    Frame frame;
    Assignment valuation;
};

// Memoised forcing for one model.
class Forcing {
public:
    explicit Forcing(const KripkeModel & model);

    bool forces(World w, Formula f);
    // Truth value of a variable or equation.
    bool value(World w, Formula f);

private:
    Congruence & congruence(World w);

    const KripkeModel & _model;
    std::vector<std::unordered_map<Formula, bool>> _memo;
    std::vector<std::optional<Congruence>> _congruence;
};

bool forces(const KripkeModel & m, World w, Formula f);
bool valid_in_model(const KripkeModel & m, Formula f);

struct CheckReport {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

CheckReport check_frame(const Frame & f);

// Stored equation values agree with the congruence (which satisfies both
// admissibility clauses everywhere). The listed equations are evaluated as
// well; they cannot fail.
CheckReport check_admissible(const KripkeModel & m, const std::vector<Formula> & equations);

// Monotonicity of the listed formulas, the base variables and the stored true
// equations. The last two imply monotonicity of every formula.
CheckReport check_monotonicity(const KripkeModel & m, const std::vector<Formula> & formulas);

// Clause (4) on the listed equations and on the stored true ones. Together
// with monotonicity, the stored ones imply it for every equation.
CheckReport check_identity_entails_implications(const KripkeModel & m, const std::vector<Formula> & equations);

// Frame, admissibility, monotonicity and clause (4), over the subformulas of
// phi and the stored base, and non-forcing of phi at `world`. Exact: a model
// passing it satisfies every condition on all formulas.
CheckReport check_countermodel(const KripkeModel & m, World world, Formula phi);

struct OracleHit {
    KripkeModel model;
    World world;
};

struct OracleStats {
    std::size_t frames = 0;
    std::size_t candidates = 0;
    std::size_t refuting_candidates = 0;
};

// Exhaustive search over preorders on 1..max_worlds worlds and monotone
// assignments to the variables and non-reflexive equations of phi's
// subformulas. Returns the first candidate (in enumeration order) that passes
// check_countermodel. Forcing of phi depends only on those atoms, so an empty
// result means no countermodel has at most max_worlds worlds.
std::optional<OracleHit> bounded_countermodel_search(Formula phi, std::size_t max_worlds, OracleStats * stats = nullptr);

} // namespace isci
