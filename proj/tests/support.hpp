#ifndef PROJCONN_TESTS_SUPPORT_HPP_
#define PROJCONN_TESTS_SUPPORT_HPP_

#include "projconn/projconn.hpp"

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace testing_support
{

using namespace projconn;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(20240601);
    return engine;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational random_rational(long max_num = 9, long max_den = 5)
{
    return make_rational(uniform(-max_num, max_num), uniform(1, max_den));
}

inline GaussianRational random_gaussian(long max_num = 9, long max_den = 5)
{
    return {random_rational(max_num, max_den), uniform(0, 2) == 0 ? Rational(0) : random_rational(max_num, max_den)};
}

inline GaussianRational random_nonzero(long max_num = 9, long max_den = 5)
{
    GaussianRational g;
    while (g.is_zero())
        g = random_gaussian(max_num, max_den);
    return g;
}

/// Random polynomial in `vars` with at most `terms` terms of total degree <= max_degree.
inline DiffPoly random_poly(std::vector<Symbol> const& vars, unsigned max_degree, std::size_t terms)
{
    DiffPoly out;
    for (std::size_t t = 0; t < terms; ++t)
    {
        DiffPoly mono(random_gaussian());
        unsigned const deg = static_cast<unsigned>(uniform(0, max_degree));
        for (unsigned d = 0; d < deg && !vars.empty(); ++d)
            mono = mono * DiffPoly(vars[static_cast<std::size_t>(uniform(0, static_cast<long>(vars.size()) - 1))]);
        out += mono;
    }
    return out;
}

inline std::vector<Symbol> coordinate_symbols(std::vector<std::string> const& names)
{
    std::vector<Symbol> out;
    for (auto const& n : names)
        out.push_back(Symbol::coordinate(n));
    return out;
}

inline std::vector<std::string> default_coords(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k)
        out.push_back("x" + std::to_string(k + 1));
    return out;
}

/// Symmetric random table in dimension n with polynomial entries in `vars`.
inline Connection random_connection(std::vector<std::string> const& coords, std::vector<Symbol> const& vars,
                                    unsigned max_degree, std::size_t terms)
{
    Connection c(coordinate_symbols(coords));
    std::size_t const n = coords.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                c.set_gamma(k, i, j, random_poly(vars, max_degree, terms));
    return c;
}

inline OneForm random_one_form(std::size_t n, std::vector<Symbol> const& vars, unsigned max_degree, std::size_t terms)
{
    OneForm f = OneForm::zero(n);
    for (auto& c : f.components)
        c = random_poly(vars, max_degree, terms);
    return f;
}

inline SymbolTable torus_table()
{
    SymbolTable t;
    t.add_coordinate("tau").add_coordinate("z1").add_coordinate("z2");
    for (char const* p : {"A", "B", "C", "D", "E"})
        t.add_parameter(p);
    return t;
}

inline DiffPoly P(std::string const& text, SymbolTable const& table)
{
    return parse_expr(text, table);
}

inline Symbol par(std::string const& name)
{
    return Symbol::parameter(name);
}

} // namespace testing_support
#endif // PROJCONN_TESTS_SUPPORT_HPP_
