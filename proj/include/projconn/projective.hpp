#ifndef PROJCONN_PROJECTIVE_HPP_
#define PROJCONN_PROJECTIVE_HPP_

#include "projconn/connection.hpp"
#include "projconn/diff_poly.hpp"
#include "projconn/error.hpp"
#include "projconn/tensor.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

/// Holomorphic one-form sum_i theta_i dx^i.
struct OneForm
{
    std::vector<DiffPoly> components;

    static OneForm zero(std::size_t dim) { return OneForm{std::vector<DiffPoly>(dim)}; }

    std::size_t dim() const noexcept { return components.size(); }

    bool is_zero() const
    {
        for (auto const& c : components)
            if (!c.is_zero())
                return false;
        return true;
    }

    OneForm operator-() const
    {
        OneForm out = *this;
        for (auto& c : out.components)
            c = -c;
        return out;
    }

    friend OneForm operator+(OneForm a, OneForm const& b)
    {
        if (a.dim() != b.dim())
            throw ShapeError("one-form dimensions differ");
        for (std::size_t k = 0; k < a.dim(); ++k)
            a.components[k] += b.components[k];
        return a;
    }

    friend OneForm operator*(OneForm a, GaussianRational const& s)
    {
        for (auto& c : a.components)
            c *= s;
        return a;
    }

    friend bool operator==(OneForm const&, OneForm const&) = default;
};

/// Section of S^2 T* (x) T: components Theta^k_{ij}, symmetric in (i, j).
/// Differences of torsionfree connections live here.
class ThetaField
{
public:
    explicit ThetaField(std::size_t dim) : m_t(dim, {Slot::up, Slot::down, Slot::down}) {}

    /// Wraps a (1,2) tensor; rejects one that is not symmetric in its lower slots.
    static ThetaField from_tensor(Tensor t)
    {
        if (t.variance() != Variance{Slot::up, Slot::down, Slot::down})
            throw ShapeError("a Theta field is a (1,2) tensor");
        if (!symmetry_check(t, {1, 2}, SymmetryMode::symmetric))
            throw ConstructionError("Theta field must be symmetric in its lower indices");
        ThetaField f(t.dim());
        f.m_t = std::move(t);
        return f;
    }

    /// The difference c - base.
    static ThetaField difference(Connection const& c, Connection const& base)
    {
        if (c.coords() != base.coords())
            throw ShapeError("connections live on different charts");
        return from_tensor(c.gamma_tensor() - base.gamma_tensor());
    }

    /// Theta := c - nabla_0, where nabla_0 is the flat standard connection.
    static ThetaField of(Connection const& c) { return from_tensor(c.gamma_tensor()); }

    std::size_t dim() const noexcept { return m_t.dim(); }
    Tensor const& tensor() const noexcept { return m_t; }

    DiffPoly const& operator()(std::size_t k, std::size_t i, std::size_t j) const { return m_t.at({k, i, j}); }

    void set(std::size_t k, std::size_t i, std::size_t j, DiffPoly v)
    {
        m_t.at({k, i, j}) = v;
        m_t.at({k, j, i}) = std::move(v);
    }

    bool is_zero() const { return m_t.is_zero(); }

    friend ThetaField operator+(ThetaField a, ThetaField const& b)
    {
        a.m_t += b.m_t;
        return a;
    }
    friend ThetaField operator-(ThetaField a, ThetaField const& b)
    {
        a.m_t -= b.m_t;
        return a;
    }
    friend ThetaField operator*(ThetaField a, GaussianRational const& s)
    {
        a.m_t *= DiffPoly(s);
        return a;
    }
    friend bool operator==(ThetaField const& a, ThetaField const& b) { return a.m_t == b.m_t; }

private:
    Tensor m_t;
};

/// c + Theta.
inline Connection operator+(Connection const& c, ThetaField const& t)
{
    if (c.dim() != t.dim())
        throw ShapeError("dimension mismatch between connection and Theta field");
    Connection out = c;
    std::size_t const n = c.dim();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                out.set_gamma(k, i, j, c.gamma(k, i, j) + t(k, i, j));
    return out;
}

/// (div Theta)_j = sum_k Theta^k_{kj}.
inline OneForm divergence(ThetaField const& t)
{
    OneForm out = OneForm::zero(t.dim());
    for (std::size_t j = 0; j < t.dim(); ++j)
        for (std::size_t k = 0; k < t.dim(); ++k)
            out.components[j] += t(k, k, j);
    return out;
}

/// J(theta)(u, v) = theta(u) v + theta(v) u, i.e.
/// J(theta)^k_{ij} = theta_i delta^k_j + theta_j delta^k_i.
inline ThetaField inject_J(OneForm const& theta)
{
    std::size_t const n = theta.dim();
    ThetaField out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
            {
                DiffPoly v;
                if (k == j)
                    v += theta.components[i];
                if (k == i)
                    v += theta.components[j];
                out.set(k, i, j, std::move(v));
            }
    return out;
}

/// Projection onto ker(div) along Im(J): Theta - J(div Theta)/(n+1).
inline ThetaField trace_free_project(ThetaField const& t)
{
    GaussianRational const inv = GaussianRational(static_cast<long>(t.dim() + 1)).inverse();
    return t - inject_J(divergence(t) * inv);
}

inline bool is_trace_free(ThetaField const& t)
{
    return divergence(t).is_zero();
}

/// Decides whether c1 = c2 + J(theta) for some one-form theta. The only
/// candidate is theta = div(c1 - c2)/(n+1); it is returned when J(theta)
/// reproduces the difference exactly.
inline std::optional<OneForm> projective_equiv(Connection const& c1, Connection const& c2)
{
    if (c1.dim() != c2.dim())
        throw ShapeError("connections have dimensions " + std::to_string(c1.dim()) + " and " +
                         std::to_string(c2.dim()));
    if (c1.coords() != c2.coords())
        throw ShapeError("connections live on different charts");
    ThetaField const diff = ThetaField::difference(c1, c2);
    OneForm const theta = divergence(diff) * GaussianRational(static_cast<long>(c1.dim() + 1)).inverse();
    if (inject_J(theta) != diff)
        return std::nullopt;
    return theta;
}

/// The projectively equivalent connection for which dx^1 ^ ... ^ dx^n is
/// parallel, i.e. sum_k Gamma^k_{ik} = 0 for every i.
inline Connection volume_normalize(Connection const& c)
{
    ThetaField const t = ThetaField::of(c);
    GaussianRational const inv = GaussianRational(static_cast<long>(c.dim() + 1)).inverse();
    return c + inject_J(-(divergence(t) * inv));
}

inline bool is_projectively_flat3(Connection const& c)
{
    return weyl3(c).is_zero();
}

/// Scaled so the leading coefficient (canonical order) is 1.
inline DiffPoly normalize_scalar(DiffPoly const& p)
{
    if (p.is_zero())
        return p;
    return p / p.leading_coefficient();
}

/// The distinct nonzero components of the Weyl tensor, each scaled to a
/// unit leading coefficient and deduplicated, in first-occurrence order
/// of the tensor's storage layout.
inline std::vector<DiffPoly> flatness_conditions(Connection const& c)
{
    Tensor const w = weyl3(c);
    std::vector<DiffPoly> out;
    std::set<std::string> seen;
    for (auto const& e : w.entries())
    {
        if (e.is_zero())
            continue;
        DiffPoly n = normalize_scalar(e);
        if (seen.insert(n.str()).second)
            out.push_back(std::move(n));
    }
    return out;
}

} // namespace projconn
#endif // PROJCONN_PROJECTIVE_HPP_
