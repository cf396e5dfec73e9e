#ifndef PROJCONN_TENSOR_HPP_
#define PROJCONN_TENSOR_HPP_

#include "projconn/diff_poly.hpp"
#include "projconn/error.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

enum class Slot
{
    up,   ///< contravariant
    down, ///< covariant
};

using Variance = std::vector<Slot>;
using MultiIndex = std::vector<std::size_t>;

enum class SymmetryMode
{
    symmetric,
    antisymmetric,
};

/// Dense tensor of DiffPoly entries. Indices are 0-based and stored
/// row-major in slot order: for the curvature, slot 0 is the output
/// (contravariant) index and slots 1..3 are X, Y, Z in R(X,Y)Z.
class Tensor
{
public:
    Tensor() = default;

    Tensor(std::size_t dim, Variance variance)
        : m_dim(dim), m_variance(std::move(variance)), m_entries(power(dim, m_variance.size()))
    {
        if (dim == 0)
            throw ShapeError("tensor dimension must be positive");
    }

    std::size_t dim() const noexcept { return m_dim; }
    std::size_t arity() const noexcept { return m_variance.size(); }
    Variance const& variance() const noexcept { return m_variance; }
    std::vector<DiffPoly> const& entries() const noexcept { return m_entries; }

    DiffPoly const& operator()(std::span<std::size_t const> idx) const { return m_entries[offset(idx)]; }
    DiffPoly& operator()(std::span<std::size_t const> idx) { return m_entries[offset(idx)]; }
    DiffPoly const& at(std::initializer_list<std::size_t> idx) const
    {
        return m_entries[offset({idx.begin(), idx.size()})];
    }
    DiffPoly& at(std::initializer_list<std::size_t> idx) { return m_entries[offset({idx.begin(), idx.size()})]; }

    DiffPoly const& entry(std::size_t flat) const { return m_entries[flat]; }
    DiffPoly& entry(std::size_t flat) { return m_entries[flat]; }

    /// Multi-index of a flat storage position.
    MultiIndex index_of(std::size_t flat) const
    {
        MultiIndex idx(arity());
        for (std::size_t s = arity(); s-- > 0;)
        {
            idx[s] = flat % m_dim;
            flat /= m_dim;
        }
        return idx;
    }

    std::size_t offset(std::span<std::size_t const> idx) const
    {
        if (idx.size() != arity())
            throw ShapeError("index arity " + std::to_string(idx.size()) + " does not match tensor arity " +
                             std::to_string(arity()));
        std::size_t off = 0;
        for (std::size_t k : idx)
        {
            if (k >= m_dim)
                throw ShapeError("index " + std::to_string(k) + " out of range for dimension " +
                                 std::to_string(m_dim));
            off = off * m_dim + k;
        }
        return off;
    }

    Tensor& operator+=(Tensor const& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < m_entries.size(); ++k)
            m_entries[k] += o.m_entries[k];
        return *this;
    }

    Tensor& operator-=(Tensor const& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < m_entries.size(); ++k)
            m_entries[k] -= o.m_entries[k];
        return *this;
    }

    Tensor& operator*=(DiffPoly const& s)
    {
        for (auto& e : m_entries)
            e = e * s;
        return *this;
    }

    friend Tensor operator+(Tensor a, Tensor const& b) { return a += b; }
    friend Tensor operator-(Tensor a, Tensor const& b) { return a -= b; }
    friend Tensor operator*(Tensor a, DiffPoly const& s) { return a *= s; }
    friend Tensor operator*(DiffPoly const& s, Tensor a) { return a *= s; }

    friend bool operator==(Tensor const& a, Tensor const& b)
    {
        return a.m_dim == b.m_dim && a.m_variance == b.m_variance && a.m_entries == b.m_entries;
    }

    bool is_zero() const
    {
        for (auto const& e : m_entries)
            if (!e.is_zero())
                return false;
        return true;
    }

    /// Entry-wise substitution.
    Tensor subst(std::map<Symbol, DiffPoly> const& bindings) const
    {
        Tensor out = *this;
        for (auto& e : out.m_entries)
            e = e.subst(bindings);
        return out;
    }

    void require_same_shape(Tensor const& o) const
    {
        if (m_dim != o.m_dim || m_variance != o.m_variance)
            throw ShapeError("tensor shapes differ");
    }

private:
    static std::size_t power(std::size_t base, std::size_t exp)
    {
        std::size_t out = 1;
        for (std::size_t k = 0; k < exp; ++k)
            out *= base;
        return out;
    }

    std::size_t m_dim = 0;
    Variance m_variance;
    std::vector<DiffPoly> m_entries;
};

inline bool is_zero(Tensor const& t)
{
    return t.is_zero();
}

/// Trace over one contravariant and one covariant slot. Contracting a
/// (1,1) tensor yields an arity-0 tensor holding the scalar.
inline Tensor contract(Tensor const& t, std::size_t up, std::size_t down)
{
    if (up >= t.arity() || down >= t.arity())
        throw SlotError("contraction slot out of range");
    if (up == down)
        throw SlotError("cannot contract a slot with itself");
    if (t.variance()[up] != Slot::up || t.variance()[down] != Slot::down)
        throw SlotError("contraction needs a contravariant and a covariant slot");

    Variance rest;
    for (std::size_t s = 0; s < t.arity(); ++s)
        if (s != up && s != down)
            rest.push_back(t.variance()[s]);

    Tensor out(t.dim(), rest);
    for (std::size_t flat = 0; flat < out.entries().size(); ++flat)
    {
        MultiIndex const r = out.index_of(flat);
        MultiIndex full(t.arity());
        std::size_t pos = 0;
        for (std::size_t s = 0; s < t.arity(); ++s)
            if (s != up && s != down)
                full[s] = r[pos++];
        DiffPoly sum;
        for (std::size_t k = 0; k < t.dim(); ++k)
        {
            full[up] = k;
            full[down] = k;
            sum += t(full);
        }
        out.entry(flat) = std::move(sum);
    }
    return out;
}

/// Tensor with slots `a` and `b` exchanged (same variance required).
inline Tensor swap_slots(Tensor const& t, std::size_t a, std::size_t b)
{
    if (a >= t.arity() || b >= t.arity())
        throw SlotError("slot out of range");
    if (t.variance()[a] != t.variance()[b])
        throw SlotError("slots of different variance cannot be swapped");
    Tensor out(t.dim(), t.variance());
    for (std::size_t flat = 0; flat < out.entries().size(); ++flat)
    {
        MultiIndex idx = out.index_of(flat);
        std::swap(idx[a], idx[b]);
        out.entry(flat) = t(idx);
    }
    return out;
}

inline bool symmetry_check(Tensor const& t, std::pair<std::size_t, std::size_t> slots, SymmetryMode mode)
{
    Tensor const swapped = swap_slots(t, slots.first, slots.second);
    for (std::size_t flat = 0; flat < t.entries().size(); ++flat)
    {
        DiffPoly const& e = t.entry(flat);
        DiffPoly const& s = swapped.entry(flat);
        if (mode == SymmetryMode::symmetric ? e != s : e != -s)
            return false;
    }
    return true;
}

/// Mixed (1,1) identity tensor delta^k_i.
inline Tensor identity_tensor(std::size_t dim)
{
    Tensor t(dim, {Slot::up, Slot::down});
    for (std::size_t k = 0; k < dim; ++k)
        t.at({k, k}) = DiffPoly(1);
    return t;
}

} // namespace projconn
#endif // PROJCONN_TENSOR_HPP_
