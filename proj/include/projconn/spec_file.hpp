#ifndef PROJCONN_SPEC_FILE_HPP_
#define PROJCONN_SPEC_FILE_HPP_

// Line-oriented connection spec files:
//
//   # comment
//   title = Torus family
//   tag = torus3
//   dim = 3
//   coords = tau, z1, z2
//   params = A, B, C, D, E
//   functions = F(tau), G(tau, z1)
//   [gamma]
//   z1.tau.tau = A
//   tau.tau.z1 = C/2
//
// Gamma keys are "k.i.j" for Gamma^k_{ij} using coordinate names (or
// 1-based indices). Unlisted entries are zero; the (j,i) mirror is implied.

#include "projconn/connection.hpp"
#include "projconn/error.hpp"
#include "projconn/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

/// Spec-file failure with its location; `column` is the byte offset in the line.
class SpecError : public Error
{
public:
    SpecError(std::string const& file, std::size_t line, std::size_t column, std::string const& what)
        : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what), m_line(line),
          m_column(column)
    {}

    std::size_t line() const noexcept { return m_line; }
    std::size_t column() const noexcept { return m_column; }

private:
    std::size_t m_line;
    std::size_t m_column;
};

struct FunctionDecl
{
    std::string name;
    std::vector<std::string> depends_on;
};

struct GammaLine
{
    std::string key;
    std::string expression;
    std::size_t line = 0;
    std::size_t expr_column = 0;
};

struct ConnectionSpec
{
    std::string source = "<input>";
    std::string title;
    std::string tag;
    std::size_t dim = 0;
    std::vector<std::string> coords;
    std::vector<std::string> params;
    std::vector<FunctionDecl> functions;
    std::vector<GammaLine> gamma;

    SymbolTable symbol_table() const
    {
        SymbolTable t;
        for (auto const& c : coords)
            t.add_coordinate(c);
        for (auto const& p : params)
            t.add_parameter(p);
        for (auto const& f : functions)
            t.add_function(f.name, f.depends_on);
        return t;
    }

    /// Parses every gamma expression and assembles the connection.
    Connection to_connection() const
    {
        SymbolTable table;
        try
        {
            table = symbol_table();
        }
        catch (Error const& e)
        {
            throw SpecError(source, 0, 0, e.what());
        }
        std::vector<Symbol> coord_symbols;
        for (auto const& c : coords)
            coord_symbols.push_back(Symbol::coordinate(c));

        std::vector<GammaEntry> entries;
        for (auto const& g : gamma)
        {
            auto const idx = parse_key(g);
            DiffPoly value;
            try
            {
                value = parse_expr(g.expression, table);
            }
            catch (ParseError const& e)
            {
                throw SpecError(source, g.line, g.expr_column + e.offset(), e.message());
            }
            entries.push_back({idx[0], idx[1], idx[2], std::move(value)});
        }
        try
        {
            return Connection::from_table(coord_symbols, entries);
        }
        catch (Error const& e)
        {
            throw SpecError(source, 0, 0, e.what());
        }
    }

private:
    std::array<std::size_t, 3> parse_key(GammaLine const& g) const
    {
        std::array<std::size_t, 3> out{};
        std::stringstream ss(g.key);
        std::string part;
        std::size_t n = 0;
        while (std::getline(ss, part, '.'))
        {
            if (n == 3)
                throw SpecError(source, g.line, 0, "gamma key '" + g.key + "' needs exactly three indices");
            out[n++] = resolve_index(part, g);
        }
        if (n != 3)
            throw SpecError(source, g.line, 0, "gamma key '" + g.key + "' needs exactly three indices");
        return out;
    }

    std::size_t resolve_index(std::string const& part, GammaLine const& g) const
    {
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (coords[k] == part)
                return k;
        if (!part.empty() && std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); }))
        {
            std::size_t const k = std::stoul(part);
            if (k >= 1 && k <= coords.size())
                return k - 1;
        }
        throw SpecError(source, g.line, 0, "unknown index '" + part + "' in gamma key '" + g.key + "'");
    }
};

namespace detail
{

inline std::string trim(std::string const& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_list(std::string const& s)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s)
    {
        if (c == '(')
            ++depth;
        if (c == ')')
            --depth;
        if (c == ',' && depth == 0)
        {
            out.push_back(trim(cur));
            cur.clear();
        }
        else
            cur += c;
    }
    if (!trim(cur).empty() || !out.empty())
        out.push_back(trim(cur));
    return out;
}

inline bool valid_identifier(std::string const& s)
{
    if (s.empty())
        return false;
    auto const start = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(start) || s[0] == '_' || start >= 0x80))
        return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        auto const u = static_cast<unsigned char>(ch);
        return std::isalnum(u) || ch == '_' || u >= 0x80;
    });
}

} // namespace detail

inline ConnectionSpec parse_spec(std::string const& text, std::string const& source = "<input>")
{
    ConnectionSpec spec;
    spec.source = source;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool in_gamma = false;
    bool have_dim = false;
    std::set<std::string> seen_keys;

    while (std::getline(in, raw))
    {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        std::string const line = detail::trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.front() == '[')
        {
            if (line != "[gamma]")
                throw SpecError(source, line_no, 0, "unknown section '" + line + "'");
            if (in_gamma)
                throw SpecError(source, line_no, 0, "duplicate [gamma] section");
            in_gamma = true;
            continue;
        }
        std::size_t const eq = raw.find('=');
        if (eq == std::string::npos)
            throw SpecError(source, line_no, 0, "expected 'key = value'");
        std::string const key = detail::trim(raw.substr(0, eq));
        std::string const value = raw.substr(eq + 1);
        std::size_t value_col = eq + 1;

        if (in_gamma)
        {
            spec.gamma.push_back({key, value, line_no, value_col});
            continue;
        }
        if (!seen_keys.insert(key).second)
            throw SpecError(source, line_no, 0, "duplicate header key '" + key + "'");
        std::string const v = detail::trim(value);
        if (key == "title")
            spec.title = v;
        else if (key == "tag")
            spec.tag = v;
        else if (key == "dim")
        {
            if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
                throw SpecError(source, line_no, value_col, "dim must be a positive integer");
            spec.dim = std::stoul(v);
            if (spec.dim == 0)
                throw SpecError(source, line_no, value_col, "dim must be a positive integer");
            have_dim = true;
        }
        else if (key == "coords" || key == "params")
        {
            auto names = detail::split_list(v);
            for (auto const& n : names)
                if (!detail::valid_identifier(n))
                    throw SpecError(source, line_no, value_col, "invalid identifier '" + n + "'");
            (key == "coords" ? spec.coords : spec.params) = std::move(names);
        }
        else if (key == "functions")
        {
            for (auto const& item : detail::split_list(v))
            {
                std::size_t const open = item.find('('), close = item.rfind(')');
                if (open == std::string::npos || close == std::string::npos || close < open ||
                    close != item.size() - 1)
                    throw SpecError(source, line_no, value_col, "function declaration '" + item +
                                                                    "' must look like F(x, y)");
                FunctionDecl f{detail::trim(item.substr(0, open)),
                               detail::split_list(item.substr(open + 1, close - open - 1))};
                if (!detail::valid_identifier(f.name) || f.depends_on.empty())
                    throw SpecError(source, line_no, value_col, "invalid function declaration '" + item + "'");
                spec.functions.push_back(std::move(f));
            }
        }
        else
            throw SpecError(source, line_no, 0, "unknown header key '" + key + "'");
    }

    if (!have_dim)
        throw SpecError(source, line_no, 0, "missing 'dim'");
    if (spec.coords.size() != spec.dim)
        throw SpecError(source, 0, 0, "dim = " + std::to_string(spec.dim) + " but " +
                                          std::to_string(spec.coords.size()) + " coordinates declared");
    return spec;
}

inline ConnectionSpec load_spec(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SpecError(path, 0, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path);
}

/// Spec text for a connection. Parameters and function symbols are
/// collected from the entries; only the upper triangle i <= j is written.
inline std::string format_spec(Connection const& c, std::string const& title = {}, std::string const& tag = {},
                               std::vector<std::string> extra_params = {})
{
    std::set<std::string> params(extra_params.begin(), extra_params.end());
    std::map<std::string, std::vector<std::string>> functions;
    std::size_t const n = c.dim();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                for (auto const& s : c.gamma(k, i, j).symbols())
                {
                    if (s.is_parameter())
                        params.insert(s.name());
                    else if (s.is_function())
                        functions[s.name()] = s.depends_on();
                }

    std::ostringstream os;
    if (!title.empty())
        os << "title = " << title << "\n";
    if (!tag.empty())
        os << "tag = " << tag << "\n";
    os << "dim = " << n << "\n";
    auto const join = [](auto const& items) {
        std::string out;
        for (auto const& s : items)
            out += (out.empty() ? "" : ", ") + s;
        return out;
    };
    os << "coords = " << join(c.coord_names()) << "\n";
    if (!params.empty())
        os << "params = " << join(params) << "\n";
    if (!functions.empty())
    {
        std::vector<std::string> decls;
        for (auto const& [name, deps] : functions)
            decls.push_back(name + "(" + join(deps) + ")");
        os << "functions = " << join(decls) << "\n";
    }
    os << "[gamma]\n";
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (!c.gamma(k, i, j).is_zero())
                    os << c.coords()[k].name() << "." << c.coords()[i].name() << "." << c.coords()[j].name()
                       << " = " << c.gamma(k, i, j).str() << "\n";
    return os.str();
}

} // namespace projconn
#endif // PROJCONN_SPEC_FILE_HPP_
