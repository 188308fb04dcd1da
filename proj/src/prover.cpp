#include <isci/prover.hpp>

#include "working.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace isci {

using namespace detail;

Budget::Budget(const Limits & limits) :
    _max_nodes(limits.max_nodes), _deadline(std::chrono::steady_clock::now() + limits.timeout)
{
}

void Budget::tick()
{
    ++_used;
    if (_used > _max_nodes)
        throw ResourceExhausted("node limit of " + std::to_string(_max_nodes) + " reached");
    if ((_used & 255) == 0 && std::chrono::steady_clock::now() > _deadline)
        throw ResourceExhausted("time limit reached");
}

namespace {

struct Skeleton;
using SkeletonPtr = std::shared_ptr<const Skeleton>;

enum class Tail { Axiom, RImp, LImp };

// What the search found at one node: identity steps, then how the node closed.
struct Skeleton {
    std::vector<Step> chain;
    Tail tail = Tail::Axiom;
    Rank principal = no_rank; // Axiom: formula closing it; RImp: succedent; LImp: implication
    SkeletonPtr left, right;
};

struct Outcome {
    SkeletonPtr proof;
    std::vector<std::uint64_t> deps; // history sequents a failure relied on
};

void merge(std::vector<std::uint64_t> & into, const std::vector<std::uint64_t> & from)
{
    into.insert(into.end(), from.begin(), from.end());
}

} // namespace

struct ProverSession::Impl {
    ScopePtr scope;
    Budget & budget;
    ProverStats stats;
    History history;

    struct ProofEntry {
        Snapshot seq;
        SkeletonPtr proof;
    };
    struct FailureEntry {
        Snapshot seq;
        std::vector<std::uint64_t> deps;
    };
    std::unordered_multimap<std::uint64_t, ProofEntry> proofs;
    std::unordered_multimap<std::uint64_t, FailureEntry> failures;

    Impl(ScopePtr s, Budget & b) : scope(std::move(s)), budget(b) {}

    SkeletonPtr cached_proof(std::uint64_t key, const WorkingSequent & ws) const
    {
        auto range = proofs.equal_range(key);
        for (auto it = range.first; it != range.second; ++it)
            if (matches(it->second.seq, ws, {}, ws.succedent()))
                return it->second.proof;
        return nullptr;
    }

    const std::vector<std::uint64_t> * cached_failure(std::uint64_t key, const WorkingSequent & ws) const
    {
        auto range = failures.equal_range(key);
        for (auto it = range.first; it != range.second; ++it) {
            if (! matches(it->second.seq, ws, {}, ws.succedent()))
                continue;
            const auto & deps = it->second.deps;
            if (std::all_of(deps.begin(), deps.end(), [&](std::uint64_t d) { return history.has_key(d); }))
                return &deps;
        }
        return nullptr;
    }

    Outcome search(WorkingSequent & ws)
    {
        budget.tick();
        ++stats.nodes;
        const std::uint64_t entry_key = ws.key();
        if (auto p = cached_proof(entry_key, ws)) {
            ++stats.cache_hits;
            return {p, {}};
        }
        if (auto d = cached_failure(entry_key, ws)) {
            ++stats.cache_hits;
            return {nullptr, *d};
        }

        const std::size_t entry_mark = ws.mark();
        const Rank succ = ws.succedent();
        Snapshot entry = snapshot(ws);
        history.push(ws);

        Outcome out;
        auto node = std::make_shared<Skeleton>();
        std::uint64_t sat_key = entry_key;
        bool pushed_saturated = false;

        if (ws.is_axiom()) {
            node->principal = ws.contains(succ) ? succ : scope->bottom();
            out.proof = node;
        }
        else {
            node->chain = saturate(ws, &history);
            if (ws.is_axiom()) {
                node->principal = ws.contains(succ) ? succ : scope->bottom();
                out.proof = node;
            }
            else {
                if (! node->chain.empty()) {
                    history.push(ws);
                    sat_key = ws.key();
                    pushed_saturated = true;
                }
                if (scope->kind(succ) == FormulaKind::Imp)
                    out = right_implication(ws, node, succ);
                else
                    out = left_implication(ws, node, succ);
            }
        }

        if (pushed_saturated)
            history.pop();
        history.pop();
        ws.undo(entry_mark);
        ws.set_succedent(succ);

        if (out.proof)
            proofs.emplace(entry_key, ProofEntry{std::move(entry), out.proof});
        else {
            auto & deps = out.deps;
            std::erase_if(deps, [&](std::uint64_t d) { return d == entry_key || d == sat_key; });
            std::sort(deps.begin(), deps.end());
            deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
            failures.emplace(entry_key, FailureEntry{std::move(entry), deps});
        }
        return out;
    }

    Outcome right_implication(WorkingSequent & ws, const std::shared_ptr<Skeleton> & node, Rank succ)
    {
        Rank a = scope->left(succ), b = scope->right(succ);
        Rank extra[] = {a};
        if (auto k = history.find(ws, extra, b)) {
            ++stats.loop_blocks;
            return {nullptr, {*k}};
        }
        std::size_t mark = ws.mark();
        ws.add(a);
        ws.set_succedent(b);
        Outcome r = search(ws);
        ws.undo(mark);
        ws.set_succedent(succ);
        if (! r.proof)
            return r;
        node->tail = Tail::RImp;
        node->principal = succ;
        node->left = r.proof;
        return {node, {}};
    }

    Outcome left_implication(WorkingSequent & ws, const std::shared_ptr<Skeleton> & node, Rank succ)
    {
        Outcome out;
        for (Rank imp : ws.members_of(FormulaKind::Imp)) {
            Rank x = scope->left(imp), y = scope->right(imp);
            if (ws.contains(y) || x == succ)
                continue;
            if (auto k = history.find(ws, {}, x)) {
                ++stats.loop_blocks;
                out.deps.push_back(*k);
                continue;
            }
            Rank extra[] = {y};
            if (auto k = history.find(ws, extra, succ)) {
                ++stats.loop_blocks;
                out.deps.push_back(*k);
                continue;
            }

            ws.set_succedent(x);
            Outcome l = search(ws);
            ws.set_succedent(succ);
            if (! l.proof) {
                ++stats.backtracks;
                merge(out.deps, l.deps);
                continue;
            }
            std::size_t mark = ws.mark();
            ws.add(y);
            Outcome r = search(ws);
            ws.undo(mark);
            if (! r.proof) {
                ++stats.backtracks;
                merge(out.deps, r.deps);
                continue;
            }
            node->tail = Tail::LImp;
            node->principal = imp;
            node->left = l.proof;
            node->right = r.proof;
            return {node, {}};
        }
        return out;
    }

    // Keeps only the identity steps whose additions are used above them.
    // Returns the pruned skeleton and the formulas it needs from below.
    std::pair<SkeletonPtr, std::unordered_set<Rank>> prune(const Skeleton & s) const
    {
        auto out = std::make_shared<Skeleton>();
        out->tail = s.tail;
        out->principal = s.principal;
        std::unordered_set<Rank> used;
        switch (s.tail) {
        case Tail::Axiom:
            used.insert(s.principal);
            break;
        case Tail::RImp: {
            auto [child, need] = prune(*s.left);
            out->left = child;
            need.erase(scope->left(s.principal));
            used = std::move(need);
            break;
        }
        case Tail::LImp: {
            auto [l, need_l] = prune(*s.left);
            auto [r, need_r] = prune(*s.right);
            out->left = l;
            out->right = r;
            need_r.erase(scope->right(s.principal));
            used = std::move(need_l);
            used.insert(need_r.begin(), need_r.end());
            used.insert(s.principal);
            break;
        }
        }
        std::vector<Step> kept;
        for (auto it = s.chain.rbegin(); it != s.chain.rend(); ++it) {
            auto added = added_by(*scope, *it);
            bool needed = false;
            for (Rank r : added)
                if (r != no_rank && used.count(r))
                    needed = true;
            if (! needed)
                continue;
            kept.push_back(*it);
            for (Rank r : added)
                used.erase(r);
            if (it->rule != Rule::LId1)
                used.insert(it->a);
            if (it->rule == Rule::LId3)
                used.insert(it->b);
        }
        std::reverse(kept.begin(), kept.end());
        out->chain = std::move(kept);
        return {out, std::move(used)};
    }

    DerivationPtr materialise(const Sequent & s, const Skeleton & k, std::size_t step = 0) const
    {
        if (step < k.chain.size()) {
            RuleInstance i = to_instance(*scope, k.chain[step]);
            Sequent next = apply_rule(s, i).front();
            return make_node(s, i, {materialise(next, k, step + 1)});
        }
        switch (k.tail) {
        case Tail::Axiom:
            if (! is_axiom(s))
                throw std::logic_error("proof extraction produced a non-axiom leaf");
            return make_leaf(s);
        case Tail::RImp: {
            RuleInstance i{Rule::RImp};
            auto premises = apply_rule(s, i);
            return make_node(s, i, {materialise(premises[0], *k.left)});
        }
        case Tail::LImp: {
            RuleInstance i{Rule::LImp, scope->formula(k.principal)};
            auto premises = apply_rule(s, i);
            return make_node(s, i, {materialise(premises[0], *k.left), materialise(premises[1], *k.right)});
        }
        }
        throw std::logic_error("unreachable");
    }
};

ProverSession::ProverSession(ScopePtr scope, Budget & budget) : _impl(std::make_unique<Impl>(std::move(scope), budget)) {}

ProverSession::~ProverSession() = default;

const ProverStats & ProverSession::stats() const { return _impl->stats; }

const GoalScope & ProverSession::scope() const { return *_impl->scope; }

DerivationPtr ProverSession::prove_sequent(const Sequent & s)
{
    WorkingSequent ws(*_impl->scope, s);
    Outcome o = _impl->search(ws);
    if (! o.proof)
        return nullptr;
    auto [pruned, needed] = _impl->prune(*o.proof);
    for (Rank r : needed)
        if (! s.antecedent.contains(_impl->scope->formula(r)))
            throw std::logic_error("proof extraction needs a formula absent from the root");
    return remove_repetitions(_impl->materialise(s, *pruned));
}

std::vector<SaturationStep> saturate_identities(const Sequent & s, Formula goal, const std::vector<Sequent> & history)
{
    GoalScope scope(goal);
    WorkingSequent ws(scope, s);
    History h;
    for (const Sequent & past : history) {
        WorkingSequent p(scope, past);
        h.push(p);
    }
    std::vector<SaturationStep> out;
    saturate(ws, &h, [&](const Step & step) { out.push_back(SaturationStep{to_instance(scope, step), ws.sequent()}); });
    return out;
}

ProofResult prove(Formula phi, const Limits & limits)
{
    Budget budget(limits);
    ProverSession session(make_scope(phi), budget);
    ProofResult result;
    result.proof = session.prove_sequent(Sequent{{}, phi});
    result.status = result.proof ? ProofStatus::Proved : ProofStatus::NotProved;
    result.stats = session.stats();
    return result;
}

} // namespace isci
