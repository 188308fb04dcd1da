#include <isci/calculus.hpp>
#include <isci/syntax.hpp>

#include <doctest.h>

#include <algorithm>

using namespace isci;

namespace {

Formula F(const char * text) { return parse_formula(text); }
Sequent S(const char * text) { return parse_sequent(text); }

bool has(const std::vector<RuleInstance> & v, const RuleInstance & r) { return std::find(v.begin(), v.end(), r) != v.end(); }

RuleInstance lid1(Formula f) { return {Rule::LId1, f, {}, FormulaKind::Imp}; }
RuleInstance lid2(Formula f) { return {Rule::LId2, f, {}, FormulaKind::Imp}; }
RuleInstance rimp() { return {Rule::RImp, {}, {}, FormulaKind::Imp}; }

} // namespace

TEST_CASE("axioms")
{
    CHECK(is_axiom(S("p == q, r |- p == q")));
    CHECK(is_axiom(S("#, p |- q")));
    CHECK_FALSE(is_axiom(S("p |- q")));
    CHECK_FALSE(is_axiom(S("|- p -> p")));
}

TEST_CASE("rule names")
{
    CHECK(std::string(rule_name(Rule::LImp)) == "L->");
    CHECK(std::string(rule_name(Rule::RImp)) == "R->");
    CHECK(std::string(rule_name(Rule::LId1)) == "L==1");
    CHECK(std::string(rule_name(Rule::LId2)) == "L==2");
    CHECK(std::string(rule_name(Rule::LId3)) == "L==3");
}

TEST_CASE("apply_rule")
{
    SUBCASE("R->")
    {
        auto p = apply_rule(S("|- p -> q"), rimp());
        REQUIRE(p.size() == 1);
        CHECK(p[0] == S("p |- q"));
    }
    SUBCASE("L==1")
    {
        auto p = apply_rule(S("|- p == p"), lid1(F("p")));
        REQUIRE(p.size() == 1);
        CHECK(p[0] == S("p == p |- p == p"));
    }
    SUBCASE("L==2")
    {
        auto p = apply_rule(S("p == q |- r"), lid2(F("p == q")));
        REQUIRE(p.size() == 1);
        CHECK(p[0] == S("p == q, p -> q, q -> p |- r"));
    }
    SUBCASE("L->")
    {
        auto p = apply_rule(S("p -> q, p |- q"), {Rule::LImp, F("p -> q"), {}, FormulaKind::Imp});
        REQUIRE(p.size() == 2);
        CHECK(p[0] == S("p -> q, p |- p"));
        CHECK(p[1] == S("q, p -> q, p |- q"));
        CHECK(is_axiom(p[0]));
        CHECK(is_axiom(p[1]));
    }
    SUBCASE("L==3")
    {
        auto p = apply_rule(S("p == q, r == s |- t"), {Rule::LId3, F("p == q"), F("r == s"), FormulaKind::Imp});
        REQUIRE(p.size() == 1);
        CHECK(p[0] == S("(p -> r) == (q -> s), p == q, r == s |- t"));
        auto e = apply_rule(S("p == q, r == s |- t"), {Rule::LId3, F("p == q"), F("r == s"), FormulaKind::Id});
        CHECK(e[0].antecedent.contains(F("(p == r) == (q == s)")));
    }
    SUBCASE("inapplicable")
    {
        CHECK_THROWS_AS(apply_rule(S("p |- q"), rimp()), InapplicableRule);
        CHECK_THROWS_AS(apply_rule(S("p |- q"), lid2(F("p == q"))), InapplicableRule);
        CHECK_THROWS_AS(apply_rule(S("p |- q"), {Rule::LImp, F("p -> q"), {}, FormulaKind::Imp}), InapplicableRule);
        CHECK_THROWS_AS(apply_rule(S("p == q |- t"), {Rule::LId3, F("p == q"), F("r == s"), FormulaKind::Imp}), InapplicableRule);
    }
}

TEST_CASE("applicable instances")
{
    CHECK(applicable_instances(S("|- p"), F("p")).empty());

    auto a = applicable_instances(S("p == q |- r"), F("(p == q) -> r"));
    CHECK(has(a, lid2(F("p == q"))));
    CHECK(has(a, lid1(F("p"))));
    CHECK(has(a, lid1(F("q"))));
    CHECK(has(a, lid1(F("r"))));
    CHECK_FALSE(has(a, rimp()));

    auto b = applicable_instances(S("|- p -> q"), F("p -> q"));
    CHECK(has(b, rimp()));
    CHECK(has(b, lid1(F("p"))));
    CHECK(has(b, lid1(F("q"))));
    // Identity rules come first.
    REQUIRE_FALSE(b.empty());
    CHECK(b.back().rule == Rule::RImp);
    CHECK(b.size() == 3);
}

TEST_CASE("check_proof")
{
    Sequent root = S("|- p == p");
    Sequent top = S("p == p |- p == p");
    DerivationPtr proof = make_node(root, lid1(F("p")), {make_leaf(top)});
    CHECK(check_proof(*proof, root));
    CHECK(is_closed(*proof));
    CHECK(derivation_size(*proof) == 2);
    CHECK(derivation_height(*proof) == 2);

    DerivationPtr altered = make_node(root, lid1(F("p")), {make_leaf(S("p == p |- q == q"))});
    CHECK_FALSE(check_proof(*altered, root));

    CHECK_FALSE(check_proof(*make_leaf(S("|- p")), S("|- p")));
    CHECK_FALSE(check_proof(*proof, S("|- q == q")));
}

TEST_CASE("audit and repetition removal")
{
    GoalScope scope(F("p == q -> p -> q"));
    Sequent a = S("p == q |- p -> q");
    Sequent b = S("p == q, p -> q, q -> p |- p -> q");
    // Re-applying L==2 to b leaves b unchanged: a repetition.
    DerivationPtr inner = make_node(b, {Rule::LId2, F("p == q"), {}, FormulaKind::Imp}, {make_leaf(b)});
    DerivationPtr d = make_node(a, lid2(F("p == q")), {inner});
    InvariantReport r = audit_derivation(*d, scope);
    CHECK(r.repetition_violations == 1);
    CHECK_FALSE(r.ok());

    DerivationPtr cleaned = remove_repetitions(d);
    CHECK(audit_derivation(*cleaned, scope).ok());
    CHECK(derivation_size(*cleaned) == 2);

    DerivationPtr shrinking = make_node(S("p, q |- p"), rimp(), {make_leaf(S("p |- p"))});
    CHECK(audit_derivation(*shrinking, GoalScope(F("p -> q -> p"))).inheritance_violations == 1);

    DerivationPtr outside = make_leaf(S("r |- p"));
    CHECK(audit_derivation(*outside, GoalScope(F("p -> p"))).exsub_violations == 1);
}
