#ifndef PROJCONN_SYMBOL_HPP_
#define PROJCONN_SYMBOL_HPP_

#include "projconn/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

/// Ordering of kinds is part of the canonical monomial order.
enum class SymbolKind
{
    parameter = 0,
    coordinate = 1,
    function = 2,
};

inline char const* to_string(SymbolKind kind)
{
    switch (kind)
    {
    case SymbolKind::parameter: return "parameter";
    case SymbolKind::coordinate: return "coordinate";
    case SymbolKind::function: return "function";
    }
    return "?";
}

/// A named indeterminate. Function symbols carry the ordered list of
/// coordinates they depend on and a derivative multi-index parallel to it;
/// the underived symbol has an all-zero multi-index.
class Symbol
{
public:
    static Symbol parameter(std::string name)
    {
        return Symbol(SymbolKind::parameter, std::move(name), {}, {});
    }

    static Symbol coordinate(std::string name)
    {
        return Symbol(SymbolKind::coordinate, std::move(name), {}, {});
    }

    static Symbol function(std::string name, std::vector<std::string> depends_on)
    {
        std::vector<unsigned> deriv(depends_on.size(), 0u);
        return Symbol(SymbolKind::function, std::move(name), std::move(depends_on), std::move(deriv));
    }

    SymbolKind kind() const noexcept { return m_kind; }
    std::string const& name() const noexcept { return m_name; }
    std::vector<std::string> const& depends_on() const noexcept { return m_depends_on; }
    std::vector<unsigned> const& deriv() const noexcept { return m_deriv; }

    bool is_parameter() const noexcept { return m_kind == SymbolKind::parameter; }
    bool is_coordinate() const noexcept { return m_kind == SymbolKind::coordinate; }
    bool is_function() const noexcept { return m_kind == SymbolKind::function; }

    bool depends_on(std::string const& coord) const
    {
        return std::find(m_depends_on.begin(), m_depends_on.end(), coord) != m_depends_on.end();
    }

    /// Total derivative order; zero for non-function symbols.
    unsigned order() const
    {
        unsigned total = 0;
        for (unsigned d : m_deriv)
            total += d;
        return total;
    }

    bool is_derived() const { return order() != 0; }

    /// The underived function symbol this one was obtained from.
    Symbol base() const
    {
        Symbol b = *this;
        std::fill(b.m_deriv.begin(), b.m_deriv.end(), 0u);
        return b;
    }

    /// One more derivative with respect to `coord`. Requires function kind
    /// and `coord` in depends_on.
    Symbol derivative(std::string const& coord) const
    {
        if (!is_function())
            throw KindError("cannot attach a derivative to " + std::string(to_string(m_kind)) + " '" + m_name + "'");
        auto const it = std::find(m_depends_on.begin(), m_depends_on.end(), coord);
        if (it == m_depends_on.end())
            throw KindError("function '" + m_name + "' does not depend on '" + coord + "'");
        Symbol d = *this;
        ++d.m_deriv[static_cast<std::size_t>(it - m_depends_on.begin())];
        return d;
    }

    /// Coordinates of the derivative multi-index, repeated by multiplicity,
    /// in depends_on order.
    std::vector<std::string> derivative_coordinates() const
    {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < m_deriv.size(); ++k)
            for (unsigned r = 0; r < m_deriv[k]; ++r)
                out.push_back(m_depends_on[k]);
        return out;
    }

    /// Printed form: plain name, or d(A, tau), d2(A, tau, tau), ...
    std::string str() const
    {
        if (!is_derived())
            return m_name;
        unsigned const n = order();
        std::string out = n == 1 ? "d(" : "d" + std::to_string(n) + "(";
        out += m_name;
        for (auto const& c : derivative_coordinates())
            out += ", " + c;
        out += ")";
        return out;
    }

    friend auto operator<=>(Symbol const& a, Symbol const& b)
    {
        if (auto c = a.m_kind <=> b.m_kind; c != 0)
            return c;
        if (auto c = a.m_name.compare(b.m_name); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = a.m_deriv <=> b.m_deriv; c != 0)
            return c;
        return a.m_depends_on <=> b.m_depends_on;
    }

    friend bool operator==(Symbol const& a, Symbol const& b)
    {
        return a.m_kind == b.m_kind && a.m_name == b.m_name && a.m_deriv == b.m_deriv &&
               a.m_depends_on == b.m_depends_on;
    }

private:
    Symbol(SymbolKind kind, std::string name, std::vector<std::string> depends_on, std::vector<unsigned> deriv)
        : m_kind(kind), m_name(std::move(name)), m_depends_on(std::move(depends_on)), m_deriv(std::move(deriv))
    {}

    SymbolKind m_kind;
    std::string m_name;
    std::vector<std::string> m_depends_on;
    std::vector<unsigned> m_deriv;
};

} // namespace projconn
#endif // PROJCONN_SYMBOL_HPP_
