#include <isci/export.hpp>
#include <isci/syntax.hpp>

#include <functional>
#include <sstream>
#include <stdexcept>

namespace isci {

namespace {

std::string rule_label(const Derivation & d)
{
    if (d.is_leaf())
        return d.leaf == LeafStatus::Axiom ? "axiom" : "open";
    const RuleInstance & r = *d.rule;
    std::string out = rule_name(r.rule);
    switch (r.rule) {
    case Rule::RImp: break;
    case Rule::LImp:
    case Rule::LId1:
    case Rule::LId2: out += " " + print_formula(r.first); break;
    case Rule::LId3:
        out += " " + print_formula(r.first) + "; " + print_formula(r.second) + "; " + (r.op == FormulaKind::Imp ? "->" : "==");
        break;
    }
    return out;
}

const char * latex_rule(Rule r)
{
    switch (r) {
    case Rule::LId1: return "L_{\\equiv 1}";
    case Rule::LId2: return "L_{\\equiv 2}";
    case Rule::LId3: return "L_{\\equiv 3}";
    case Rule::RImp: return "R_{\\supset}";
    case Rule::LImp: return "L_{\\supset}";
    }
    return "?";
}

std::string dot_escape(const std::string & s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

std::string join(const FormulaSet & s)
{
    std::string out;
    for (Formula f : s) {
        if (! out.empty())
            out += ", ";
        out += print_formula(f);
    }
    return out;
}

std::string true_atoms(const CounterModel & cm, World w)
{
    std::string out;
    for (Formula f : cm.model.valuation.base()) {
        if (f.is_reflexive_eq() || ! cm.model.valuation.stored(f, w).value_or(false))
            continue;
        if (! out.empty())
            out += ", ";
        out += print_formula(f);
    }
    return out;
}

// Strict pairs a < b with no world strictly between them.
std::vector<std::pair<World, World>> covering_pairs(const Frame & f)
{
    auto equivalent = [&](World a, World b) { return f.leq(a, b) && f.leq(b, a); };
    std::vector<std::pair<World, World>> out;
    for (World a = 0; a < f.size(); ++a)
        for (World b = 0; b < f.size(); ++b) {
            if (a == b || ! f.leq(a, b))
                continue;
            bool covered = true;
            for (World c = 0; c < f.size() && covered; ++c)
                if (c != a && c != b && f.leq(a, c) && f.leq(c, b) && ! equivalent(a, c) && ! equivalent(c, b))
                    covered = false;
            if (covered)
                out.emplace_back(a, b);
        }
    return out;
}

} // namespace

std::string derivation_text(const Derivation & d)
{
    std::string out;
    std::function<void(const Derivation &, std::size_t)> walk = [&](const Derivation & n, std::size_t depth) {
        out.append(2 * depth, ' ');
        out += print_sequent(n.sequent) + "  [" + rule_label(n) + "]\n";
        for (auto & p : n.premises)
            walk(*p, depth + 1);
    };
    walk(d, 0);
    return out;
}

std::string derivation_latex(const Derivation & d)
{
    std::string out = "\\begin{prooftree}\n";
    std::function<void(const Derivation &)> walk = [&](const Derivation & n) {
        for (auto & p : n.premises)
            walk(*p);
        std::string seq = "$" + latex_sequent(n.sequent) + "$";
        if (n.is_leaf()) {
            out += "\\AxiomC{" + seq + (n.leaf == LeafStatus::Open ? " (open)" : "") + "}\n";
            return;
        }
        out += "\\RightLabel{\\scriptsize $" + std::string(latex_rule(n.rule->rule)) + "$}\n";
        out += (n.premises.size() == 2 ? "\\BinaryInfC{" : "\\UnaryInfC{") + seq + "}\n";
    };
    walk(d);
    out += "\\end{prooftree}\n";
    return out;
}

std::string derivation_dot(const Derivation & d)
{
    std::string out = "digraph derivation {\n  node [shape=box, fontname=\"monospace\"];\n";
    std::size_t next = 0;
    std::function<std::size_t(const Derivation &)> walk = [&](const Derivation & n) {
        std::size_t id = next++;
        out += "  n" + std::to_string(id) + " [label=\"" + dot_escape(print_sequent(n.sequent)) + "\\n[" + dot_escape(rule_label(n)) + "]\"];\n";
        for (auto & p : n.premises) {
            std::size_t child = walk(*p);
            out += "  n" + std::to_string(id) + " -> n" + std::to_string(child) + ";\n";
        }
        return id;
    };
    walk(d);
    out += "}\n";
    return out;
}

std::string model_text(const CounterModel & cm)
{
    std::ostringstream out;
    out << "refuted: " << print_formula(cm.formula) << "\n";
    out << "worlds: " << cm.worlds.size() << ", designated w" << cm.designated << "\n";
    for (World w = 0; w < cm.worlds.size(); ++w) {
        out << "w" << w << "  gamma: {" << join(cm.worlds[w].gamma) << "}\n";
        out << "    true: {" << true_atoms(cm, w) << "}\n";
    }
    out << "order:";
    bool any = false;
    for (auto [a, b] : covering_pairs(cm.model.frame)) {
        out << (any ? ", " : " ") << "w" << a << " <= w" << b;
        any = true;
    }
    out << (any ? "\n" : " (discrete)\n");
    return out.str();
}

std::string model_dot(const CounterModel & cm)
{
    std::string out = "digraph model {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (World w = 0; w < cm.worlds.size(); ++w) {
        std::string label = "w" + std::to_string(w) + "\\n" + dot_escape(true_atoms(cm, w));
        out += "  w" + std::to_string(w) + " [label=\"" + label + "\"" + (w == cm.designated ? ", peripheries=2" : "") + "];\n";
    }
    for (auto [a, b] : covering_pairs(cm.model.frame))
        out += "  w" + std::to_string(a) + " -> w" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

Json derivation_to_json(const Derivation & d)
{
    Json j;
    j["sequent"] = print_sequent(d.sequent);
    if (d.is_leaf()) {
        j["rule"] = d.leaf == LeafStatus::Axiom ? "axiom" : "open";
        j["principal"] = Json::array();
    }
    else {
        const RuleInstance & r = *d.rule;
        j["rule"] = rule_name(r.rule);
        Json principal = Json::array();
        if (r.rule != Rule::RImp)
            principal.push_back(print_formula(r.first));
        if (r.rule == Rule::LId3) {
            principal.push_back(print_formula(r.second));
            j["connective"] = r.op == FormulaKind::Imp ? "->" : "==";
        }
        j["principal"] = principal;
    }
    Json premises = Json::array();
    for (auto & p : d.premises)
        premises.push_back(derivation_to_json(*p));
    j["premises"] = premises;
    return j;
}

namespace {

Rule parse_rule(const std::string & name)
{
    for (Rule r : {Rule::LId1, Rule::LId2, Rule::LId3, Rule::RImp, Rule::LImp})
        if (name == rule_name(r))
            return r;
    throw std::invalid_argument("unknown rule '" + name + "'");
}

const Json & field(const Json & j, const char * key)
{
    if (! j.is_object() || ! j.contains(key))
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

DerivationPtr derivation_from_json(const Json & j)
{
    auto d = std::make_shared<Derivation>();
    d->sequent = parse_sequent(field(j, "sequent").get<std::string>());
    std::string rule = field(j, "rule").get<std::string>();
    std::vector<Formula> principal;
    if (j.contains("principal"))
        for (auto & p : j.at("principal"))
            principal.push_back(parse_formula(p.get<std::string>()));
    if (rule == "axiom" || rule == "open") {
        d->leaf = rule == "axiom" ? LeafStatus::Axiom : LeafStatus::Open;
    }
    else {
        RuleInstance r{parse_rule(rule)};
        std::size_t want = r.rule == Rule::RImp ? 0 : r.rule == Rule::LId3 ? 2 : 1;
        if (principal.size() != want)
            throw std::invalid_argument("rule " + rule + " expects " + std::to_string(want) + " principal formulas");
        if (want > 0)
            r.first = principal[0];
        if (want > 1)
            r.second = principal[1];
        if (r.rule == Rule::LId3) {
            std::string c = field(j, "connective").get<std::string>();
            if (c != "->" && c != "==")
                throw std::invalid_argument("connective must be '->' or '=='");
            r.op = c == "->" ? FormulaKind::Imp : FormulaKind::Id;
        }
        d->rule = r;
    }
    if (j.contains("premises"))
        for (auto & p : j.at("premises"))
            d->premises.push_back(derivation_from_json(p));
    if (d->is_leaf() && ! d->premises.empty())
        throw std::invalid_argument("leaf with premises");
    return d;
}

Json model_to_json(const CounterModel & cm)
{
    Json j;
    j["formula"] = print_formula(cm.formula);
    Json worlds = Json::array();
    for (World w = 0; w < cm.worlds.size(); ++w) {
        Json gamma = Json::array();
        for (Formula f : cm.worlds[w].gamma)
            gamma.push_back(print_formula(f));
        worlds.push_back(Json{{"id", w}, {"gamma", gamma}});
    }
    j["worlds"] = worlds;
    Json pairs = Json::array();
    for (auto [a, b] : cm.model.frame.pairs())
        pairs.push_back(Json::array({a, b}));
    j["order_pairs"] = pairs;
    Json valuation = Json::array();
    for (Formula f : cm.model.valuation.base())
        for (World w = 0; w < cm.worlds.size(); ++w)
            valuation.push_back(Json::array({print_formula(f), w, *cm.model.valuation.stored(f, w) ? 1 : 0}));
    j["valuation"] = valuation;
    j["designated_world"] = cm.designated;
    return j;
}

ModelDocument model_from_json(const Json & j)
{
    const Json & worlds = field(j, "worlds");
    std::size_t n = worlds.size();
    for (std::size_t i = 0; i < n; ++i)
        if (field(worlds[i], "id").get<std::size_t>() != i)
            throw std::invalid_argument("world ids must be 0, 1, ... in order");

    std::vector<std::pair<World, World>> pairs;
    for (auto & p : field(j, "order_pairs")) {
        if (! p.is_array() || p.size() != 2)
            throw std::invalid_argument("order pair must be [a, b]");
        pairs.emplace_back(p[0].get<World>(), p[1].get<World>());
    }
    Frame frame = Frame::from_pairs(n, pairs);

    struct Entry {
        Formula f;
        World w;
        bool v;
    };
    std::vector<Entry> entries;
    std::vector<Formula> base;
    std::unordered_map<Formula, std::size_t> seen;
    for (auto & t : field(j, "valuation")) {
        if (! t.is_array() || t.size() != 3)
            throw std::invalid_argument("valuation entry must be [formula, world, value]");
        Formula f = parse_formula(t[0].get<std::string>());
        World w = t[1].get<World>();
        int v = t[2].get<int>();
        if (w >= n || (v != 0 && v != 1))
            throw std::invalid_argument("valuation entry out of range");
        if (seen.emplace(f, base.size()).second)
            base.push_back(f);
        entries.push_back(Entry{f, w, v == 1});
    }
    if (entries.size() != base.size() * n)
        throw std::invalid_argument("valuation must list every base formula at every world exactly once");
    Assignment valuation(base, n);
    std::vector<bool> covered(base.size() * n, false);
    for (auto & e : entries) {
        std::size_t slot = seen[e.f] * n + e.w;
        if (covered[slot])
            throw std::invalid_argument("duplicate valuation entry");
        covered[slot] = true;
        valuation.set(e.f, e.w, e.v);
    }
    World designated = field(j, "designated_world").get<World>();
    if (designated >= n)
        throw std::invalid_argument("designated world does not exist");
    return ModelDocument{KripkeModel{std::move(frame), std::move(valuation)}, designated};
}

ProofCheck check_proof_document(const Json & j)
{
    if (j.contains("proof")) {
        Sequent claim{{}, parse_formula(field(j, "formula").get<std::string>())};
        return check_proof(*derivation_from_json(j.at("proof")), claim);
    }
    if (j.contains("sequent")) {
        DerivationPtr d = derivation_from_json(j);
        return check_proof(*d, d->sequent);
    }
    throw std::invalid_argument("document holds no proof");
}

CheckReport check_model_document(const Json & j)
{
    const Json * model = &j;
    if (j.contains("model"))
        model = &j.at("model");
    std::string text;
    if (j.contains("formula"))
        text = j.at("formula").get<std::string>();
    else
        text = field(*model, "formula").get<std::string>();
    Formula phi = parse_formula(text);
    ModelDocument doc = model_from_json(*model);
    return check_countermodel(doc.model, doc.designated, phi);
}

} // namespace isci
