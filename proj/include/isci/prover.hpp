#pragma once

#include <isci/calculus.hpp>
#include <isci/exsub.hpp>

#include <chrono>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace isci {

struct Limits {
    std::size_t max_nodes = 1'000'000;
    std::chrono::milliseconds timeout{30'000};
};

class ResourceExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Node and time allowance shared by every search of one invocation.
class Budget {
public:
    explicit Budget(const Limits & limits);

    // Counts one node; throws ResourceExhausted once a cap is hit.
    void tick();
    std::size_t used() const { return _used; }

private:
    std::size_t _max_nodes;
    std::size_t _used = 0;
    std::chrono::steady_clock::time_point _deadline;
};

struct ProverStats {
    std::size_t nodes = 0;       // search nodes expanded
    std::size_t backtracks = 0;  // L-> choices abandoned
    std::size_t loop_blocks = 0; // instances skipped by the loop check
    std::size_t cache_hits = 0;
};

enum class ProofStatus { Proved, NotProved };

struct ProofResult {
    ProofStatus status = ProofStatus::NotProved;
    DerivationPtr proof; // set iff Proved
    ProverStats stats;
};

struct SaturationStep {
    RuleInstance rule;
    Sequent result;
};

// Identity-rule chain from `s`, as the prover runs it: L==1, L==2, L==3 in
// rounds until nothing new is eligible, stopping at the first axiom.
std::vector<SaturationStep> saturate_identities(const Sequent & s, Formula goal, const std::vector<Sequent> & history = {});

// Backward search with loop checking. Throws ResourceExhausted at a cap.
ProofResult prove(Formula phi, const Limits & limits = {});

// Repeated provability queries within one goal, sharing caches and budget.
class ProverSession {
public:
    ProverSession(ScopePtr scope, Budget & budget);
    ~ProverSession();
    ProverSession(const ProverSession &) = delete;
    ProverSession & operator=(const ProverSession &) = delete;

    // A checked-shape proof of `s`, or null if the search fails.
    DerivationPtr prove_sequent(const Sequent & s);

    const ProverStats & stats() const;
    const GoalScope & scope() const;

private:
    struct Impl;
    std::unique_ptr<Impl> _impl;
};

} // namespace isci
