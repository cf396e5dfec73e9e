#ifndef PROJCONN_CONNECTION_HPP_
#define PROJCONN_CONNECTION_HPP_

#include "projconn/diff_poly.hpp"
#include "projconn/error.hpp"
#include "projconn/symbol.hpp"
#include "projconn/tensor.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

/// One Christoffel entry Gamma^k_{ij} (0-based indices).
struct GammaEntry
{
    std::size_t k;
    std::size_t i;
    std::size_t j;
    DiffPoly value;
};

/// Torsionfree affine connection given by its Christoffel table in a fixed
/// coordinate chart: nabla_{d_i} d_j = sum_k Gamma^k_{ij} d_k.
class Connection
{
public:
    Connection() = default;

    /// Flat standard connection (all symbols zero) on the given chart.
    explicit Connection(std::vector<Symbol> coords)
        : m_coords(std::move(coords)), m_gamma(m_coords.size() * m_coords.size() * m_coords.size())
    {
        if (m_coords.empty())
            throw ConstructionError("a connection needs at least one coordinate");
        for (auto const& c : m_coords)
            if (!c.is_coordinate())
                throw KindError("'" + c.name() + "' is not a coordinate symbol");
    }

    /// Builds a table from a partial list of entries. Missing entries are
    /// zero; each entry also fills its (j,i) mirror. Giving both orders with
    /// different values is an error.
    static Connection from_table(std::vector<Symbol> coords, std::vector<GammaEntry> const& entries)
    {
        Connection c(std::move(coords));
        std::size_t const n = c.dim();
        std::vector<bool> set(n * n * n, false);
        for (auto const& e : entries)
        {
            if (e.k >= n || e.i >= n || e.j >= n)
                throw ConstructionError("Christoffel index out of range");
            std::size_t const a = c.flat(e.k, e.i, e.j);
            std::size_t const b = c.flat(e.k, e.j, e.i);
            if ((set[a] && c.m_gamma[a] != e.value) || (set[b] && c.m_gamma[b] != e.value))
                throw ConstructionError("conflicting values for Gamma^" + c.m_coords[e.k].name() + "_{" +
                                        c.m_coords[e.i].name() + " " + c.m_coords[e.j].name() + "}");
            c.m_gamma[a] = e.value;
            c.m_gamma[b] = e.value;
            set[a] = set[b] = true;
        }
        c.validate();
        return c;
    }

    std::size_t dim() const noexcept { return m_coords.size(); }
    std::vector<Symbol> const& coords() const noexcept { return m_coords; }

    std::vector<std::string> coord_names() const
    {
        std::vector<std::string> out;
        for (auto const& c : m_coords)
            out.push_back(c.name());
        return out;
    }

    std::optional<std::size_t> coord_index(std::string const& name) const
    {
        for (std::size_t k = 0; k < m_coords.size(); ++k)
            if (m_coords[k].name() == name)
                return k;
        return std::nullopt;
    }

    DiffPoly const& gamma(std::size_t k, std::size_t i, std::size_t j) const { return m_gamma[flat(k, i, j)]; }

    /// Sets Gamma^k_{ij} and Gamma^k_{ji} together.
    void set_gamma(std::size_t k, std::size_t i, std::size_t j, DiffPoly value)
    {
        m_gamma[flat(k, i, j)] = value;
        m_gamma[flat(k, j, i)] = std::move(value);
    }

    /// The table as a (1,2) tensor with slots (k, i, j).
    Tensor gamma_tensor() const
    {
        Tensor t(dim(), {Slot::up, Slot::down, Slot::down});
        for (std::size_t f = 0; f < m_gamma.size(); ++f)
            t.entry(f) = m_gamma[f];
        return t;
    }

    Connection subst(std::map<Symbol, DiffPoly> const& bindings) const
    {
        Connection out = *this;
        for (auto& g : out.m_gamma)
            g = g.subst(bindings);
        return out;
    }

    friend bool operator==(Connection const& a, Connection const& b)
    {
        return a.m_coords == b.m_coords && a.m_gamma == b.m_gamma;
    }

private:
    std::size_t flat(std::size_t k, std::size_t i, std::size_t j) const
    {
        std::size_t const n = dim();
        return (k * n + i) * n + j;
    }

    void validate() const
    {
        for (auto const& g : m_gamma)
            for (auto const& s : g.symbols())
            {
                if (s.is_coordinate() && !coord_index(s.name()))
                    throw ConstructionError("entry uses coordinate '" + s.name() + "' outside the chart");
                if (s.is_function())
                    for (auto const& c : s.depends_on())
                        if (!coord_index(c))
                            throw ConstructionError("function '" + s.name() + "' depends on '" + c +
                                                    "', which is not a chart coordinate");
            }
    }

    std::vector<Symbol> m_coords;
    std::vector<DiffPoly> m_gamma;
};

/// Polynomial vector field X = sum_k X^k d_k.
struct VectorFieldPoly
{
    std::vector<DiffPoly> components;
};

/// Curvature R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
/// as a (1,3) tensor R^l_{ijk} with slots (l; i=X, j=Y, k=Z):
///   R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + sum_m (G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}).
inline Tensor curvature(Connection const& c)
{
    std::size_t const n = c.dim();
    Tensor r(n, {Slot::up, Slot::down, Slot::down, Slot::down});
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                {
                    DiffPoly v = c.gamma(l, j, k).diff(c.coords()[i]) - c.gamma(l, i, k).diff(c.coords()[j]);
                    for (std::size_t m = 0; m < n; ++m)
                    {
                        v += c.gamma(l, i, m) * c.gamma(m, j, k);
                        v -= c.gamma(l, j, m) * c.gamma(m, i, k);
                    }
                    r.at({l, j, i, k}) = -v;
                    r.at({l, i, j, k}) = std::move(v);
                }
    return r;
}

/// Ricci(Y,Z) = trace of xi -> R(xi,Y)Z, i.e. Ricci_{jk} = sum_i R^i_{ijk}.
inline Tensor ricci_from_curvature(Tensor const& r)
{
    return contract(r, 0, 1);
}

/// TrR(X,Y) = trace of xi -> R(X,Y)xi, i.e. TrR_{ij} = sum_k R^k_{ijk}.
inline Tensor trace_r_from_curvature(Tensor const& r)
{
    return contract(r, 0, 3);
}

inline Tensor ricci(Connection const& c)
{
    return ricci_from_curvature(curvature(c));
}

inline Tensor trace_r(Connection const& c)
{
    return trace_r_from_curvature(curvature(c));
}

namespace detail
{

// W(X,Y)Z = R(X,Y)Z - 1/4 TrR(X,Y)Z - 1/2 (Ric(Y,Z)X - Ric(X,Z)Y)
//           - 1/8 (TrR(Y,Z)X - TrR(X,Z)Y)
inline Tensor weyl3_trace_form(Tensor const& r, Tensor const& ric, Tensor const& tr)
{
    GaussianRational const q4 = make_rational(1, 4), q2 = make_rational(1, 2), q8 = make_rational(1, 8);
    Tensor w = r;
    std::size_t const n = r.dim();
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                {
                    DiffPoly& e = w.at({l, x, y, z});
                    if (l == z)
                        e -= tr.at({x, y}) * q4;
                    if (l == x)
                        e -= ric.at({y, z}) * q2 + tr.at({y, z}) * q8;
                    if (l == y)
                        e += ric.at({x, z}) * q2 + tr.at({x, z}) * q8;
                }
    return w;
}

// W(X,Y)Z = R(X,Y)Z + 1/4 (Ric(X,Y) - Ric(Y,X)) Z
//           + 1/8 [(3 Ric(X,Z) + Ric(Z,X)) Y - (3 Ric(Y,Z) + Ric(Z,Y)) X]
inline Tensor weyl3_ricci_form(Tensor const& r, Tensor const& ric)
{
    GaussianRational const q4 = make_rational(1, 4), q8 = make_rational(1, 8), three(3);
    Tensor w = r;
    std::size_t const n = r.dim();
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                {
                    DiffPoly& e = w.at({l, x, y, z});
                    if (l == z)
                        e += (ric.at({x, y}) - ric.at({y, x})) * q4;
                    if (l == y)
                        e += (ric.at({x, z}) * three + ric.at({z, x})) * q8;
                    if (l == x)
                        e -= (ric.at({y, z}) * three + ric.at({z, y})) * q8;
                }
    return w;
}

} // namespace detail

/// Weyl projective curvature in dimension three. Both the TrR form and the
/// Ricci-only rewriting are evaluated; a mismatch is an internal error.
inline Tensor weyl3(Connection const& c)
{
    if (c.dim() != 3)
        throw DimensionError("the Weyl projective tensor formula needs dimension 3, got " + std::to_string(c.dim()));
    Tensor const r = curvature(c);
    Tensor const ric = ricci_from_curvature(r);
    Tensor const tr = trace_r_from_curvature(r);
    Tensor w = detail::weyl3_trace_form(r, ric, tr);
    if (w != detail::weyl3_ricci_form(r, ric))
        throw std::logic_error("Weyl tensor: trace form and Ricci form disagree");
    return w;
}

/// First Bianchi identity T(X,Y)Z + T(Y,Z)X + T(Z,X)Y = 0 for a (1,3)
/// tensor in the curvature slot layout.
inline bool bianchi_check(Tensor const& t)
{
    if (t.arity() != 4)
        throw ShapeError("Bianchi check needs a (1,3) tensor");
    std::size_t const n = t.dim();
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (!(t.at({l, x, y, z}) + t.at({l, y, z, x}) + t.at({l, z, x, y})).is_zero())
                        return false;
    return true;
}

/// Symmetric Ricci tensor (equivalently TrR = 0).
inline bool equiaffine_check(Connection const& c)
{
    return symmetry_check(ricci(c), {0, 1}, SymmetryMode::symmetric);
}

/// Lie derivative of the connection along X, as a (1,2) tensor (k; i, j):
///   (L_X G)^k_{ij} = d_i d_j X^k + X^m d_m G^k_{ij} + G^k_{mj} d_i X^m
///                    + G^k_{im} d_j X^m - G^m_{ij} d_m X^k.
/// This is the standard coordinate formula; it vanishes exactly when the
/// local flow of X preserves the connection (X is an affine Killing field).
inline Tensor lie_derivative(Connection const& c, VectorFieldPoly const& x)
{
    std::size_t const n = c.dim();
    if (x.components.size() != n)
        throw ShapeError("vector field has " + std::to_string(x.components.size()) + " components, expected " +
                         std::to_string(n));
    auto const& coord = c.coords();
    // dx[m][i] = d_i X^m
    std::vector<std::vector<DiffPoly>> dx(n, std::vector<DiffPoly>(n));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            dx[m][i] = x.components[m].diff(coord[i]);

    Tensor out(n, {Slot::up, Slot::down, Slot::down});
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
            {
                DiffPoly v = dx[k][j].diff(coord[i]);
                for (std::size_t m = 0; m < n; ++m)
                {
                    v += x.components[m] * c.gamma(k, i, j).diff(coord[m]);
                    v += c.gamma(k, m, j) * dx[m][i];
                    v += c.gamma(k, i, m) * dx[m][j];
                    v -= c.gamma(m, i, j) * dx[k][m];
                }
                out.at({k, j, i}) = v;
                out.at({k, i, j}) = std::move(v);
            }
    return out;
}

inline bool is_affine_killing(Connection const& c, VectorFieldPoly const& x)
{
    return lie_derivative(c, x).is_zero();
}

/// Induced connection on the coordinate subspace spanned by `keep` (in the
/// given order). The subspace must be totally geodesic: no kept pair may
/// produce a dropped direction, and kept entries must not involve dropped
/// coordinates.
inline Connection totally_geodesic_restrict(Connection const& c, std::vector<std::string> const& keep)
{
    std::vector<std::size_t> idx;
    for (auto const& name : keep)
    {
        auto const k = c.coord_index(name);
        if (!k)
            throw ShapeError("unknown coordinate '" + name + "'");
        if (std::find(idx.begin(), idx.end(), *k) != idx.end())
            throw ShapeError("coordinate '" + name + "' listed twice");
        idx.push_back(*k);
    }
    if (idx.empty())
        throw ShapeError("nothing to keep");

    std::size_t const n = c.dim();
    auto const kept = [&](std::size_t k) { return std::find(idx.begin(), idx.end(), k) != idx.end(); };
    for (std::size_t k = 0; k < n; ++k)
    {
        if (kept(k))
            continue;
        for (std::size_t i : idx)
            for (std::size_t j : idx)
                if (!c.gamma(k, i, j).is_zero())
                    throw NotTotallyGeodesicError("Gamma^" + c.coords()[k].name() + "_{" + c.coords()[i].name() +
                                                  " " + c.coords()[j].name() + "} = " + c.gamma(k, i, j).str() +
                                                  " is nonzero");
    }

    std::vector<Symbol> sub_coords;
    for (std::size_t k : idx)
        sub_coords.push_back(c.coords()[k]);
    Connection out(sub_coords);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            for (std::size_t d = b; d < idx.size(); ++d)
            {
                DiffPoly const& g = c.gamma(idx[a], idx[b], idx[d]);
                for (auto const& s : g.symbols())
                {
                    bool bad = false;
                    if (s.is_coordinate())
                        bad = !kept(*c.coord_index(s.name()));
                    else if (s.is_function())
                        for (auto const& dep : s.depends_on())
                            bad = bad || !kept(*c.coord_index(dep));
                    if (bad)
                        throw NotTotallyGeodesicError("entry " + g.str() + " depends on a dropped coordinate");
                }
                out.set_gamma(a, b, d, g);
            }
    return out;
}

} // namespace projconn
#endif // PROJCONN_CONNECTION_HPP_
