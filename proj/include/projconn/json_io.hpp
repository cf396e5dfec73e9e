#ifndef PROJCONN_JSON_IO_HPP_
#define PROJCONN_JSON_IO_HPP_

#include "projconn/connection.hpp"
#include "projconn/expr.hpp"
#include "projconn/projective.hpp"
#include "projconn/tensor.hpp"

#include <json.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace projconn
{

using json = nlohmann::json;

/// "z1.tau.tau" from coordinate names, or "2.1.1" (1-based) without them.
inline std::string index_key(MultiIndex const& idx, std::vector<std::string> const& names)
{
    std::string key;
    for (std::size_t s = 0; s < idx.size(); ++s)
    {
        if (s != 0)
            key += ".";
        key += names.empty() ? std::to_string(idx[s] + 1) : names.at(idx[s]);
    }
    return key;
}

/// {"variance": ["up","down",...], "entries": {"k.i.j": "poly"}}, zero entries omitted.
inline json tensor_to_json(Tensor const& t, std::vector<std::string> const& names = {})
{
    json variance = json::array();
    for (Slot s : t.variance())
        variance.push_back(s == Slot::up ? "up" : "down");
    json entries = json::object();
    for (std::size_t f = 0; f < t.entries().size(); ++f)
        if (!t.entry(f).is_zero())
            entries[index_key(t.index_of(f), names)] = t.entry(f).str();
    return {{"variance", variance}, {"entries", entries}};
}

/// Inverse of tensor_to_json; entries are parsed against `table`.
inline Tensor tensor_from_json(json const& j, std::size_t dim, SymbolTable const& table,
                               std::vector<std::string> const& names = {})
{
    Variance variance;
    for (auto const& s : j.at("variance"))
    {
        std::string const v = s.get<std::string>();
        if (v != "up" && v != "down")
            throw ShapeError("variance entries must be \"up\" or \"down\"");
        variance.push_back(v == "up" ? Slot::up : Slot::down);
    }
    Tensor t(dim, variance);
    for (auto const& [key, value] : j.at("entries").items())
    {
        MultiIndex idx;
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, '.'))
        {
            std::size_t k = dim;
            for (std::size_t c = 0; c < names.size(); ++c)
                if (names[c] == part)
                    k = c;
            if (k == dim)
                k = std::stoul(part) - 1;
            idx.push_back(k);
        }
        t(idx) = parse_expr(value.get<std::string>(), table);
    }
    return t;
}

inline json one_form_to_json(OneForm const& f, std::vector<std::string> const& names)
{
    json out = json::object();
    for (std::size_t k = 0; k < f.dim(); ++k)
        out[names.at(k)] = f.components[k].str();
    return out;
}

inline json polys_to_json(std::vector<DiffPoly> const& polys)
{
    json out = json::array();
    for (auto const& p : polys)
        out.push_back(p.str());
    return out;
}

} // namespace projconn
#endif // PROJCONN_JSON_IO_HPP_
