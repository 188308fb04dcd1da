// Acceptance suite: one PASS/FAIL line per criterion.

#include <isci/countermodel.hpp>
#include <isci/export.hpp>
#include <isci/prover.hpp>
#include <isci/semantics.hpp>
#include <isci/syntax.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace isci;

namespace {

constexpr double theorem_seconds = 1.0;
constexpr double non_theorem_seconds = 5.0;
constexpr double sweep_seconds = 300.0;
constexpr std::size_t oracle_worlds = 3;

const std::vector<std::string> theorems = {
    "p -> p",
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    "p == p",
    "(p == q) -> (p -> q)",
    "(p == q) -> (q -> p)",
    "(p == q) -> ((p -> #) == (q -> #))",
    "(p == q) -> (r == s) -> ((p -> r) == (q -> s))",
    "(p == q) -> (r == s) -> ((p == r) == (q == s))",
};

const std::vector<std::string> non_theorems = {
    "((p -> q) -> p) -> p",
    "((p -> #) -> #) -> p",
    "p == q",
    "(p -> q) -> (p == q)",
    "(p -> p) == (q -> q)",
};

const std::string symmetry = "(p == q) -> (q == p)";

double seconds_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<Formula> sweep_formulas()
{
    std::vector<std::vector<Formula>> by_complexity(3);
    by_complexity[0] = {Formula::var("p"), Formula::var("q"), Formula::bottom()};
    for (unsigned c = 1; c <= 2; ++c)
        for (unsigned l = 0; l < c; ++l)
            for (Formula a : by_complexity[l])
                for (Formula b : by_complexity[c - 1 - l])
                    for (FormulaKind op : {FormulaKind::Imp, FormulaKind::Id})
                        by_complexity[c].push_back(Formula::make(op, a, b));
    std::vector<Formula> out;
    for (auto & level : by_complexity)
        out.insert(out.end(), level.begin(), level.end());
    return out;
}

// Everything observable about one decision, for the determinism and
// round-trip criteria.
struct Decision {
    Formula phi;
    bool proved = false;
    DerivationPtr proof;
    std::optional<CounterModel> model;
    std::string document;
    double seconds = 0;
};

Decision decide(Formula phi)
{
    Decision d{phi};
    auto start = std::chrono::steady_clock::now();
    ProofResult r = prove(phi);
    Json doc;
    if (r.status == ProofStatus::Proved) {
        d.proved = true;
        d.proof = r.proof;
        doc = Json{{"status", "proved"}, {"formula", print_formula(phi)}, {"proof", derivation_to_json(*r.proof)}};
    }
    else {
        d.model = countermodel(phi);
        doc = Json{{"status", "refuted"}, {"formula", print_formula(phi)}, {"model", model_to_json(*d.model)}};
    }
    d.seconds = seconds_since(start);
    doc["stats"] = Json{{"nodes", r.stats.nodes}, {"backtracks", r.stats.backtracks}, {"loop_blocks", r.stats.loop_blocks},
        {"cache_hits", r.stats.cache_hits}};
    d.document = doc.dump();
    return d;
}

struct Criterion {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string & why)
    {
        pass = false;
        if (notes.size() < 8)
            notes.push_back(why);
    }
};

struct InstrumentTotals {
    std::size_t derivations = 0, models = 0, nodes = 0;
    std::size_t inheritance = 0, exsub = 0, repetition = 0, lemma1 = 0, lemma2 = 0, cor2 = 0, eligible_outside = 0;
    std::string first;

    void add(const InvariantReport & r)
    {
        ++derivations;
        nodes += r.nodes;
        inheritance += r.inheritance_violations;
        exsub += r.exsub_violations;
        repetition += r.repetition_violations;
        if (first.empty())
            first = r.first_problem;
    }

    void add(const CounterModelAudit & a)
    {
        ++models;
        derivations += a.derivations.nodes > 0 ? 1 : 0;
        nodes += a.derivations.nodes;
        inheritance += a.derivations.inheritance_violations;
        exsub += a.derivations.exsub_violations;
        repetition += a.derivations.repetition_violations;
        lemma1 += a.provable_occurrences;
        lemma2 += a.unforced_antecedents + a.forced_succedents;
        cor2 += a.unrecorded_equations;
        if (first.empty())
            first = a.first_problem;
    }

    bool ok() const { return inheritance + exsub + repetition + lemma1 + lemma2 + cor2 + eligible_outside == 0; }
};

void instrument(InstrumentTotals & totals, const Decision & d)
{
    GoalScope scope(d.phi);
    for (Formula f : scope.eligible())
        if (! scope.in_exsub(f))
            ++totals.eligible_outside;
    if (d.proved)
        totals.add(audit_derivation(*d.proof, scope));
    else
        totals.add(audit_countermodel(*d.model));
}

void report(int number, const std::string & title, const Criterion & c)
{
    std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << "\n";
    for (auto & n : c.notes)
        std::cout << "        " << n << "\n";
}

} // namespace

int main()
{
    std::vector<Decision> all;
    InstrumentTotals totals;
    std::ostringstream timing;

    // 1. Theorems.
    Criterion c1;
    double slowest_theorem = 0;
    for (auto & text : theorems) {
        Formula phi = parse_formula(text);
        Decision d;
        try {
            d = decide(phi);
        }
        catch (const std::exception & e) {
            c1.fail(text + ": " + e.what());
            continue;
        }
        slowest_theorem = std::max(slowest_theorem, d.seconds);
        if (! d.proved)
            c1.fail(text + ": not proved");
        else if (auto r = check_proof(*d.proof, Sequent{{}, phi}); ! r)
            c1.fail(text + ": checker rejects proof: " + r.message);
        if (d.seconds > theorem_seconds)
            c1.fail(text + ": took " + std::to_string(d.seconds) + " s");
        all.push_back(d);
    }
    c1.notes.insert(c1.notes.begin(), std::to_string(theorems.size()) + " theorems, slowest " + std::to_string(slowest_theorem) + " s (limit 1 s)");
    report(1, "theorem suite proved and checked", c1);

    // 2. Non-theorems, plus the symmetry formula against the oracle.
    Criterion c2;
    double slowest_refutation = 0;
    for (auto & text : non_theorems) {
        Formula phi = parse_formula(text);
        Decision d;
        try {
            d = decide(phi);
        }
        catch (const std::exception & e) {
            c2.fail(text + ": " + e.what());
            continue;
        }
        slowest_refutation = std::max(slowest_refutation, d.seconds);
        if (d.proved)
            c2.fail(text + ": unexpectedly proved");
        else if (auto r = check_countermodel(d.model->model, d.model->designated, phi); ! r)
            c2.fail(text + ": model rejected: " + r.message);
        if (d.seconds > non_theorem_seconds)
            c2.fail(text + ": took " + std::to_string(d.seconds) + " s");
        all.push_back(d);
    }
    {
        Formula phi = parse_formula(symmetry);
        Decision d = decide(phi);
        auto hit = bounded_countermodel_search(phi, oracle_worlds);
        std::string verdict = d.proved ? "proved" : "refuted";
        if (d.proved && hit)
            c2.fail(symmetry + ": proved but the oracle finds a countermodel");
        if (! d.proved && ! check_countermodel(d.model->model, d.model->designated, phi))
            c2.fail(symmetry + ": refuted with an invalid model");
        if (d.proved && ! check_proof(*d.proof, Sequent{{}, phi}))
            c2.fail(symmetry + ": proof rejected");
        c2.notes.insert(c2.notes.begin(), symmetry + " " + verdict + ", oracle(k=3) " + (hit ? "finds a countermodel" : "finds none"));
        all.push_back(d);
    }
    c2.notes.insert(c2.notes.begin(), std::to_string(non_theorems.size()) + " non-theorems, slowest " + std::to_string(slowest_refutation) + " s (limit 5 s)");
    report(2, "non-theorems refuted with validated models", c2);

    // 3. Exhaustive sweep.
    Criterion c3;
    auto sweep = sweep_formulas();
    auto sweep_start = std::chrono::steady_clock::now();
    std::size_t proved = 0, refuted = 0, disagreements = 0;
    for (Formula phi : sweep) {
        std::string text = print_formula(phi);
        try {
            Decision d = decide(phi);
            if (d.proved) {
                ++proved;
                if (! check_proof(*d.proof, Sequent{{}, phi})) {
                    ++disagreements;
                    c3.fail(text + ": proof rejected");
                }
                if (bounded_countermodel_search(phi, oracle_worlds)) {
                    ++disagreements;
                    c3.fail(text + ": proved, but the oracle refutes it");
                }
            }
            else {
                ++refuted;
                if (auto r = check_countermodel(d.model->model, d.model->designated, phi); ! r) {
                    ++disagreements;
                    c3.fail(text + ": model rejected: " + r.message);
                }
            }
            all.push_back(d);
        }
        catch (const std::exception & e) {
            ++disagreements;
            c3.fail(text + ": " + e.what());
        }
    }
    double sweep_time = seconds_since(sweep_start);
    if (sweep.size() != 237)
        c3.fail("expected 237 formulas, enumerated " + std::to_string(sweep.size()));
    if (sweep_time > sweep_seconds)
        c3.fail("sweep took " + std::to_string(sweep_time) + " s");
    c3.notes.insert(c3.notes.begin(), std::to_string(sweep.size()) + " formulas: " + std::to_string(proved) + " proved, " + std::to_string(refuted)
            + " refuted, " + std::to_string(disagreements) + " disagreements, " + std::to_string(sweep_time) + " s (limit 300 s)");
    report(3, "exhaustive sweep agrees with the bounded oracle", c3);

    // 4. Instrumented invariants.
    Criterion c4;
    for (auto & d : all) {
        try {
            instrument(totals, d);
        }
        catch (const std::exception & e) {
            c4.fail(print_formula(d.phi) + ": " + e.what());
        }
    }
    std::ostringstream summary;
    summary << totals.derivations << " derivations (" << totals.nodes << " nodes), " << totals.models << " models; violations: inheritance "
            << totals.inheritance << ", ex.sub " << totals.exsub << ", repetition " << totals.repetition << ", eligible outside ex.sub "
            << totals.eligible_outside << ", provable branch sequents " << totals.lemma1 << ", forcing " << totals.lemma2
            << ", unrecorded equations " << totals.cor2;
    c4.notes.insert(c4.notes.begin(), summary.str());
    if (! totals.ok())
        c4.fail("first problem: " + totals.first);
    report(4, "invariants hold on every derivation and model", c4);

    // 5. Determinism.
    Criterion c5;
    std::size_t differing = 0;
    for (auto & d : all) {
        Decision again = decide(d.phi);
        if (again.document != d.document) {
            ++differing;
            c5.fail(print_formula(d.phi) + ": output differs on rerun");
        }
    }
    c5.notes.insert(c5.notes.begin(), std::to_string(all.size()) + " outputs regenerated, " + std::to_string(differing) + " differ");
    report(5, "byte-identical outputs on rerun", c5);

    // 6. Round trip through the document checkers.
    Criterion c6;
    std::size_t proofs = 0, models = 0;
    for (auto & d : all) {
        try {
            Json j = Json::parse(d.document);
            if (d.proved) {
                ++proofs;
                if (auto r = check_proof_document(j); ! r)
                    c6.fail(print_formula(d.phi) + ": " + r.message);
                if (derivation_to_json(*derivation_from_json(j["proof"])) != j["proof"])
                    c6.fail(print_formula(d.phi) + ": proof does not re-serialise identically");
            }
            else {
                ++models;
                if (auto r = check_model_document(j); ! r)
                    c6.fail(print_formula(d.phi) + ": " + r.message);
            }
        }
        catch (const std::exception & e) {
            c6.fail(print_formula(d.phi) + ": " + e.what());
        }
    }
    c6.notes.insert(c6.notes.begin(), std::to_string(proofs) + " proofs and " + std::to_string(models) + " models re-validated from JSON");
    report(6, "JSON round trip through check-proof / check-model", c6);

    bool ok = c1.pass && c2.pass && c3.pass && c4.pass && c5.pass && c6.pass;
    std::cout << (ok ? "all criteria pass" : "some criteria fail") << "\n";
    return ok ? 0 : 1;
}
