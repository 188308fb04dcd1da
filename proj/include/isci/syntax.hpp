#pragma once

#include <isci/formula.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace isci {

struct Sequent;

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string & message, std::size_t line, std::size_t column);

    std::size_t line() const { return _line; }
    std::size_t column() const { return _column; }
    const std::string & detail() const { return _detail; }

private:
    std::size_t _line, _column;
    std::string _detail;
};

// Grammar, loosest binding first:
//   formula := eqn ( "->" formula )?          right associative
//   eqn     := unary ( "==" unary )?          non-associative
//   unary   := "~" unary | atom               ~x abbreviates x -> #
//   atom    := identifier | "#" | "bot" | "(" formula ")"
// The symbols U+2283, U+2261, U+22A5 and U+00AC are accepted as aliases.
Formula parse_formula(std::string_view text);

// "f1, ..., fn |- g"; the antecedent may be empty, the succedent may not.
Sequent parse_sequent(std::string_view text);

std::string print_formula(Formula f);
std::string print_sequent(const Sequent & s);

std::string latex_formula(Formula f);
std::string latex_sequent(const Sequent & s);

} // namespace isci
