#include <isci/calculus.hpp>
#include <isci/syntax.hpp>

namespace isci {

namespace {

struct Notation {
    const char * bottom;
    const char * imp;
    const char * eq;
    const char * turnstile;
    const char * empty_antecedent;
};

constexpr Notation plain{"#", " -> ", " == ", "|- ", ""};
constexpr Notation latex{"\\bot", " \\supset ", " \\equiv ", "\\Rightarrow ", ""};

void print(std::string & out, Formula f, const Notation & n, bool wrap)
{
    switch (f.kind()) {
    case FormulaKind::Bottom:
        out += n.bottom;
        return;
    case FormulaKind::Var:
        out += f.name();
        return;
    case FormulaKind::Imp:
        if (wrap)
            out += '(';
        print(out, f.left(), n, f.left().is_imp());
        out += n.imp;
        print(out, f.right(), n, false);
        if (wrap)
            out += ')';
        return;
    case FormulaKind::Id:
        if (wrap)
            out += '(';
        print(out, f.left(), n, f.left().is_composite());
        out += n.eq;
        print(out, f.right(), n, f.right().is_composite());
        if (wrap)
            out += ')';
        return;
    }
}

std::string print_sequent_with(const Sequent & s, const Notation & n)
{
    std::string out;
    bool first = true;
    for (Formula f : s.antecedent) {
        if (! first)
            out += ", ";
        first = false;
        print(out, f, n, false);
    }
    if (! first)
        out += ' ';
    out += n.turnstile;
    print(out, s.succedent, n, false);
    return out;
}

} // namespace

std::string print_formula(Formula f)
{
    std::string out;
    print(out, f, plain, false);
    return out;
}

std::string latex_formula(Formula f)
{
    std::string out;
    print(out, f, latex, false);
    return out;
}

std::string print_sequent(const Sequent & s) { return print_sequent_with(s, plain); }

std::string latex_sequent(const Sequent & s) { return print_sequent_with(s, latex); }

} // namespace isci
