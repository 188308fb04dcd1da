#pragma once

#include <isci/calculus.hpp>
#include <isci/countermodel.hpp>
#include <isci/semantics.hpp>

#include <json.hpp>

#include <string>

namespace isci {

using Json = nlohmann::ordered_json;

// One node per line, premises indented below their conclusion.
std::string derivation_text(const Derivation & d);
// bussproofs source.
std::string derivation_latex(const Derivation & d);
// Graphviz digraph, conclusions pointing at premises.
std::string derivation_dot(const Derivation & d);

std::string model_text(const CounterModel & cm);
std::string model_dot(const CounterModel & cm);

// Node schema: {"sequent", "rule", "principal": [...], "connective"?, "premises": [...]}
// with rule one of "axiom", "open", "L->", "R->", "L==1", "L==2", "L==3".
Json derivation_to_json(const Derivation & d);
DerivationPtr derivation_from_json(const Json & j);

// {"worlds": [{"id", "gamma"}], "order_pairs": [[a, b]], "valuation": [[formula, world, 0|1]],
//  "designated_world"}; order_pairs lists the whole preorder.
Json model_to_json(const CounterModel & cm);

struct ModelDocument {
    KripkeModel model;
    World designated;
};

ModelDocument model_from_json(const Json & j);

// Validates a verdict document (or a bare proof / model) as check-proof and
// check-model do. Throws std::invalid_argument on malformed input.
ProofCheck check_proof_document(const Json & j);
CheckReport check_model_document(const Json & j);

} // namespace isci
