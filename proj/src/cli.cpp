#include <isci/cli.hpp>
#include <isci/countermodel.hpp>
#include <isci/export.hpp>
#include <isci/semantics.hpp>
#include <isci/syntax.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace isci {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_all(std::istream & in) { return std::string(std::istreambuf_iterator<char>(in), {}); }

std::string formula_text(const RunConfig & c, std::istream & in) { return c.input == "-" ? read_all(in) : c.input; }

std::string document_text(const RunConfig & c, std::istream & in)
{
    if (c.input == "-")
        return read_all(in);
    std::ifstream file(c.input);
    if (! file)
        throw InputError("cannot open " + c.input);
    return read_all(file);
}

Json stats_json(const ProverStats & s)
{
    return Json{{"nodes", s.nodes}, {"backtracks", s.backtracks}, {"loop_blocks", s.loop_blocks}, {"cache_hits", s.cache_hits}};
}

void emit_proof(const RunConfig & c, std::ostream & out, Formula phi, const ProofResult & r)
{
    if (c.format == "json") {
        Json j{{"status", "proved"}, {"formula", print_formula(phi)}, {"proof", derivation_to_json(*r.proof)}, {"stats", stats_json(r.stats)}};
        out << j.dump(2) << "\n";
    }
    else if (c.format == "dot")
        out << derivation_dot(*r.proof);
    else if (c.format == "latex")
        out << derivation_latex(*r.proof);
    else {
        out << "PROVED " << print_formula(phi) << "\n";
        if (! c.quiet)
            out << derivation_text(*r.proof);
    }
}

void emit_model(const RunConfig & c, std::ostream & out, const CounterModel & cm, const ProverStats & stats)
{
    if (c.format == "json") {
        Json j{{"status", "refuted"}, {"formula", print_formula(cm.formula)}, {"model", model_to_json(cm)}, {"stats", stats_json(stats)}};
        out << j.dump(2) << "\n";
    }
    else if (c.format == "dot")
        out << model_dot(cm);
    else if (c.format == "latex")
        out << "\\begin{verbatim}\n" << model_text(cm) << "\\end{verbatim}\n";
    else {
        out << "REFUTED " << print_formula(cm.formula) << "\n";
        if (! c.quiet)
            out << model_text(cm);
    }
}

void emit_not_proved(const RunConfig & c, std::ostream & out, Formula phi, const ProverStats & stats)
{
    if (c.format == "json")
        out << Json{{"status", "not_proved"}, {"formula", print_formula(phi)}, {"stats", stats_json(stats)}}.dump(2) << "\n";
    else
        out << "NOT PROVED " << print_formula(phi) << "\n";
}

// Disagreement means the prover closed a formula the oracle refutes.
int cross_check(const RunConfig & c, std::ostream & out, std::ostream & err, Formula phi, bool proved)
{
    if (! c.oracle_worlds)
        return proved ? exit_proved : exit_refuted;
    auto hit = bounded_countermodel_search(phi, *c.oracle_worlds);
    if (proved && hit) {
        err << "oracle disagreement: bounded search refutes a proved formula\n";
        return exit_internal;
    }
    if (! c.quiet && c.format == "text")
        out << "oracle(" << *c.oracle_worlds << "): " << (hit ? "countermodel found" : "no countermodel") << "\n";
    return proved ? exit_proved : exit_refuted;
}

int decide(const RunConfig & c, std::istream & in, std::ostream & out, std::ostream & err, bool always_model)
{
    Formula phi = parse_formula(formula_text(c, in));
    ProofResult r = prove(phi, c.limits);
    if (r.status == ProofStatus::Proved) {
        if (always_model && c.format == "text")
            out << "PROVED " << print_formula(phi) << " (no countermodel exists)\n";
        else
            emit_proof(c, out, phi, r);
        return cross_check(c, out, err, phi, true);
    }
    CounterModel cm = countermodel(phi, c.limits);
    emit_model(c, out, cm, r.stats);
    return cross_check(c, out, err, phi, false);
}

int run_command(const RunConfig & c, std::istream & in, std::ostream & out, std::ostream & err)
{
    if (c.format != "text" && c.format != "json" && c.format != "dot" && c.format != "latex")
        throw InputError("unknown format '" + c.format + "'");

    if (c.command == "prove") {
        Formula phi = parse_formula(formula_text(c, in));
        ProofResult r = prove(phi, c.limits);
        if (r.status == ProofStatus::Proved) {
            emit_proof(c, out, phi, r);
            return exit_proved;
        }
        emit_not_proved(c, out, phi, r.stats);
        return exit_refuted;
    }
    if (c.command == "decide")
        return decide(c, in, out, err, false);
    if (c.command == "countermodel")
        return decide(c, in, out, err, true);
    if (c.command == "check-proof") {
        ProofCheck r = check_proof_document(Json::parse(document_text(c, in)));
        out << (r ? "valid proof" : "invalid proof: " + r.message) << "\n";
        return r ? exit_proved : exit_refuted;
    }
    if (c.command == "check-model") {
        CheckReport r = check_model_document(Json::parse(document_text(c, in)));
        out << (r ? "valid countermodel" : "invalid countermodel: " + r.message) << "\n";
        return r ? exit_proved : exit_refuted;
    }
    if (c.command == "exsub") {
        Formula phi = parse_formula(formula_text(c, in));
        FormulaSet ex = extended_subformulas(phi);
        if (c.format == "json") {
            Json list = Json::array();
            for (Formula f : ex)
                list.push_back(Json{{"formula", print_formula(f)}, {"complexity", f.complexity()}});
            out << Json{{"formula", print_formula(phi)}, {"bound", phi.complexity()}, {"members", list}}.dump(2) << "\n";
        }
        else {
            out << ex.size() << " extended subformulas of " << print_formula(phi) << " (bound " << phi.complexity() << ")\n";
            if (! c.quiet)
                for (Formula f : ex)
                    out << f.complexity() << "  " << print_formula(f) << "\n";
        }
        return exit_proved;
    }
    throw InputError("unknown command '" + c.command + "'");
}

} // namespace

int run(const RunConfig & config, std::istream & in, std::ostream & out, std::ostream & err)
{
    try {
        return run_command(config, in, out, err);
    }
    catch (const SyntaxError & e) {
        err << "syntax error at " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const InputError & e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const Json::exception & e) {
        err << "malformed document: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const std::invalid_argument & e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const std::out_of_range & e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_input_error;
    }
    catch (const ResourceExhausted & e) {
        err << "resources exhausted: " << e.what() << "\n";
        return exit_resources;
    }
    catch (const ValidationFailure & e) {
        err << "internal validation failure: " << e.what() << "\n";
        return exit_internal;
    }
    catch (const std::exception & e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

} // namespace isci
