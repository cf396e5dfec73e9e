#ifndef PROJCONN_EXPR_HPP_
#define PROJCONN_EXPR_HPP_

#include "projconn/diff_poly.hpp"
#include "projconn/error.hpp"
#include "projconn/symbol.hpp"

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace projconn
{

/// Declared identifiers of one spec: coordinates, parameters and functions.
class SymbolTable
{
public:
    SymbolTable() = default;

    SymbolTable& add_coordinate(std::string const& name)
    {
        declare(Symbol::coordinate(name));
        m_coordinates.push_back(name);
        return *this;
    }

    SymbolTable& add_parameter(std::string const& name)
    {
        declare(Symbol::parameter(name));
        return *this;
    }

    SymbolTable& add_function(std::string const& name, std::vector<std::string> const& depends_on)
    {
        for (auto const& c : depends_on)
        {
            auto const it = m_symbols.find(c);
            if (it == m_symbols.end() || !it->second.is_coordinate())
                throw ConstructionError("function '" + name + "' depends on undeclared coordinate '" + c + "'");
        }
        declare(Symbol::function(name, depends_on));
        return *this;
    }

    std::optional<Symbol> lookup(std::string const& name) const
    {
        if (auto it = m_symbols.find(name); it != m_symbols.end())
            return it->second;
        return std::nullopt;
    }

    std::vector<std::string> const& coordinates() const noexcept { return m_coordinates; }

    std::vector<Symbol> symbols() const
    {
        std::vector<Symbol> out;
        for (auto const& [name, s] : m_symbols)
            out.push_back(s);
        return out;
    }

private:
    void declare(Symbol s)
    {
        if (s.name() == "i")
            throw ConstructionError("'i' is reserved for the imaginary unit");
        if (!m_symbols.emplace(s.name(), s).second)
            throw ConstructionError("identifier '" + s.name() + "' declared twice");
    }

    std::map<std::string, Symbol> m_symbols;
    std::vector<std::string> m_coordinates;
};

namespace detail
{

/// Recursive-descent parser for
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := ['-'] atom ('^' nonneg-int)? ('/' posint)*
///   atom   := integer | 'i' | ident | d[k] '(' ident (',' coord)+ ')' | '(' expr ')'
class ExprParser
{
public:
    ExprParser(std::string_view text, SymbolTable const& table) : m_text(text), m_table(table) {}

    DiffPoly parse()
    {
        DiffPoly result = expr();
        skip_space();
        if (m_pos != m_text.size())
            throw ParseError("unexpected '" + std::string(1, m_text[m_pos]) + "'", m_pos);
        return result;
    }

private:
    DiffPoly expr()
    {
        skip_space();
        bool negate = false;
        if (peek() == '+' || peek() == '-')
            negate = m_text[m_pos++] == '-';
        DiffPoly acc = term();
        if (negate)
            acc = -acc;
        for (;;)
        {
            skip_space();
            char const c = peek();
            if (c != '+' && c != '-')
                break;
            ++m_pos;
            DiffPoly rhs = term();
            if (c == '+')
                acc += rhs;
            else
                acc -= rhs;
        }
        return acc;
    }

    DiffPoly term()
    {
        DiffPoly acc = factor();
        for (;;)
        {
            skip_space();
            if (peek() != '*')
                break;
            ++m_pos;
            acc *= factor();
        }
        return acc;
    }

    DiffPoly factor()
    {
        skip_space();
        if (peek() == '-')
        {
            ++m_pos;
            return -factor();
        }
        DiffPoly base = atom();
        skip_space();
        if (peek() == '^')
        {
            ++m_pos;
            skip_space();
            std::size_t const at = m_pos;
            if (!is_digit(peek()))
                throw ParseError("expected a non-negative integer exponent", at);
            base = base.pow(static_cast<unsigned>(integer_literal().get_ui()));
            skip_space();
        }
        while (peek() == '/')
        {
            ++m_pos;
            skip_space();
            std::size_t const at = m_pos;
            if (!is_digit(peek()))
                throw ParseError("division is only allowed by a positive integer", at);
            mpz_class const divisor = integer_literal();
            if (divisor == 0)
                throw ParseError("division by zero", at);
            base /= GaussianRational(Rational(divisor));
            skip_space();
        }
        return base;
    }

    DiffPoly atom()
    {
        skip_space();
        std::size_t const at = m_pos;
        char const c = peek();
        if (c == '(')
        {
            ++m_pos;
            DiffPoly inner = expr();
            skip_space();
            if (peek() != ')')
                throw ParseError("expected ')'", m_pos);
            ++m_pos;
            return inner;
        }
        if (is_digit(c))
            return DiffPoly(GaussianRational(Rational(integer_literal())));
        if (is_ident_start(c))
        {
            std::string const name = identifier();
            if (name == "i")
                return DiffPoly(GaussianRational::i());
            if (auto order = derivative_marker(name))
            {
                std::size_t const save = m_pos;
                skip_space();
                if (peek() == '(')
                    return derivative_call(*order, at);
                m_pos = save;
            }
            auto const s = m_table.lookup(name);
            if (!s)
                throw UndeclaredIdentifierError("undeclared identifier '" + name + "'", at);
            return DiffPoly(*s);
        }
        if (c == '\0')
            throw ParseError("unexpected end of expression", at);
        throw ParseError("unexpected '" + std::string(1, c) + "'", at);
    }

    // "d" -> 0 (order implied by the argument count), "d2" -> 2, ...
    static std::optional<unsigned> derivative_marker(std::string const& name)
    {
        if (name.empty() || name[0] != 'd')
            return std::nullopt;
        if (name.size() == 1)
            return 0u;
        for (std::size_t k = 1; k < name.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(name[k])))
                return std::nullopt;
        return static_cast<unsigned>(std::stoul(name.substr(1)));
    }

    DiffPoly derivative_call(unsigned order, std::size_t at)
    {
        ++m_pos; // '('
        skip_space();
        std::size_t const fn_at = m_pos;
        if (!is_ident_start(peek()))
            throw ParseError("expected a function name", fn_at);
        std::string const fn = identifier();
        auto s = m_table.lookup(fn);
        if (!s)
            throw UndeclaredIdentifierError("undeclared identifier '" + fn + "'", fn_at);
        if (!s->is_function())
            throw ParseError("'" + fn + "' is not a function symbol", fn_at);
        unsigned count = 0;
        for (;;)
        {
            skip_space();
            if (peek() == ')')
                break;
            if (peek() != ',')
                throw ParseError("expected ',' or ')'", m_pos);
            ++m_pos;
            skip_space();
            std::size_t const c_at = m_pos;
            if (!is_ident_start(peek()))
                throw ParseError("expected a coordinate name", c_at);
            std::string const coord = identifier();
            auto const cs = m_table.lookup(coord);
            if (!cs)
                throw UndeclaredIdentifierError("undeclared identifier '" + coord + "'", c_at);
            if (!cs->is_coordinate())
                throw ParseError("'" + coord + "' is not a coordinate", c_at);
            if (!s->depends_on(coord))
                throw ParseError("'" + fn + "' does not depend on '" + coord + "'", c_at);
            s = s->derivative(coord);
            ++count;
        }
        ++m_pos; // ')'
        if (count == 0)
            throw ParseError("derivative needs at least one coordinate", at);
        if (order != 0 && order != count)
            throw ParseError("derivative order does not match the coordinate count", at);
        return DiffPoly(*s);
    }

    mpz_class integer_literal()
    {
        std::size_t const start = m_pos;
        while (is_digit(peek()))
            ++m_pos;
        return mpz_class(std::string(m_text.substr(start, m_pos - start)));
    }

    std::string identifier()
    {
        std::size_t const start = m_pos;
        while (is_ident_char(peek()))
            ++m_pos;
        return std::string(m_text.substr(start, m_pos - start));
    }

    void skip_space()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos])))
            ++m_pos;
    }

    char peek() const { return m_pos < m_text.size() ? m_text[m_pos] : '\0'; }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    // Bytes >= 0x80 are accepted so UTF-8 names such as "τ" work.
    static bool is_ident_start(char c)
    {
        auto const u = static_cast<unsigned char>(c);
        return std::isalpha(u) || c == '_' || u >= 0x80;
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

    std::string_view m_text;
    SymbolTable const& m_table;
    std::size_t m_pos = 0;
};

} // namespace detail

/// Parses an expression over the identifiers declared in `table`.
inline DiffPoly parse_expr(std::string_view text, SymbolTable const& table)
{
    return detail::ExprParser(text, table).parse();
}

} // namespace projconn
#endif // PROJCONN_EXPR_HPP_
