#include <isci/calculus.hpp>
#include <isci/syntax.hpp>

#include <cctype>
#include <vector>

namespace isci {

SyntaxError::SyntaxError(const std::string & message, std::size_t line, std::size_t column) :
    std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
    _line(line),
    _column(column),
    _detail(message)
{
}

namespace {

enum class Tok { Ident, Bottom, Arrow, Equiv, Tilde, LParen, RParen, Comma, Turnstile, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

const char * describe(Tok t)
{
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Bottom: return "'#'";
    case Tok::Arrow: return "'->'";
    case Tok::Equiv: return "'=='";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Turnstile: return "'|-'";
    case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto push = [&](Tok k, std::size_t len, std::string text = {}) {
        out.push_back(Token{k, std::move(text), line, col});
        i += len;
        col += 1;
        // Multi-byte aliases count as a single column.
        if (len > 1 && static_cast<unsigned char>(s[i - len]) < 0x80)
            col += len - 1;
    };
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };

    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        }
        else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
        }
        else if (starts("->"))
            push(Tok::Arrow, 2);
        else if (starts("=="))
            push(Tok::Equiv, 2);
        else if (starts("|-"))
            push(Tok::Turnstile, 2);
        else if (starts("⊃"))
            push(Tok::Arrow, 3);
        else if (starts("≡"))
            push(Tok::Equiv, 3);
        else if (starts("⊥"))
            push(Tok::Bottom, 3);
        else if (starts("¬"))
            push(Tok::Tilde, 2);
        else if (c == '#')
            push(Tok::Bottom, 1);
        else if (c == '~')
            push(Tok::Tilde, 1);
        else if (c == '(')
            push(Tok::LParen, 1);
        else if (c == ')')
            push(Tok::RParen, 1);
        else if (c == ',')
            push(Tok::Comma, 1);
        else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            std::string word(s.substr(i, j - i));
            Tok k = word == "bot" ? Tok::Bottom : Tok::Ident;
            out.push_back(Token{k, word, line, col});
            col += j - i;
            i = j;
        }
        else
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(Token{Tok::End, {}, line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : _tokens(tokenize(text)) {}

    Formula formula()
    {
        Formula lhs = equation();
        if (accept(Tok::Arrow))
            return Formula::imp(lhs, formula());
        return lhs;
    }

    Sequent sequent()
    {
        Sequent s;
        if (! at(Tok::Turnstile)) {
            s.antecedent.insert(formula());
            while (accept(Tok::Comma))
                s.antecedent.insert(formula());
        }
        expect(Tok::Turnstile);
        if (at(Tok::End))
            fail("a sequent needs a succedent");
        s.succedent = formula();
        return s;
    }

    void finish() { expect(Tok::End); }

private:
    Formula equation()
    {
        Formula lhs = unary();
        if (accept(Tok::Equiv)) {
            Formula rhs = unary();
            if (at(Tok::Equiv))
                fail("'==' is non-associative; add parentheses");
            return Formula::eq(lhs, rhs);
        }
        return lhs;
    }

    Formula unary()
    {
        if (accept(Tok::Tilde))
            return Formula::imp(unary(), Formula::bottom());
        return atom();
    }

    Formula atom()
    {
        const Token & t = peek();
        switch (t.kind) {
        case Tok::Ident: {
            Formula v = Formula::var(t.text);
            ++_pos;
            return v;
        }
        case Tok::Bottom:
            ++_pos;
            return Formula::bottom();
        case Tok::LParen: {
            ++_pos;
            Formula f = formula();
            expect(Tok::RParen);
            return f;
        }
        default:
            fail(std::string("expected a formula, found ") + describe(t.kind));
        }
    }

    const Token & peek() const { return _tokens[_pos]; }
    bool at(Tok k) const { return peek().kind == k; }

    bool accept(Tok k)
    {
        if (! at(k))
            return false;
        ++_pos;
        return true;
    }

    void expect(Tok k)
    {
        if (! accept(k))
            fail(std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
    }

    [[noreturn]] void fail(const std::string & message) const
    {
        throw SyntaxError(message, peek().line, peek().column);
    }

    std::vector<Token> _tokens;
    std::size_t _pos = 0;
};

} // namespace

Formula parse_formula(std::string_view text)
{
    Parser p(text);
    Formula f = p.formula();
    p.finish();
    return f;
}

Sequent parse_sequent(std::string_view text)
{
    Parser p(text);
    Sequent s = p.sequent();
    p.finish();
    return s;
}

} // namespace isci
