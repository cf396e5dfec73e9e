#ifndef PROJCONN_DIFF_POLY_HPP_
#define PROJCONN_DIFF_POLY_HPP_

#include "projconn/error.hpp"
#include "projconn/gaussian_rational.hpp"
#include "projconn/symbol.hpp"

#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

/// Power product of symbols: sorted by Symbol, exponents strictly positive.
using Monomial = std::vector<std::pair<Symbol, unsigned>>;

/// Lexicographic order on monomials with larger exponents first. Walking the
/// symbols in increasing order, the monomial carrying the higher power of the
/// first differing symbol sorts first; the constant monomial sorts last.
struct MonomialOrder
{
    bool operator()(Monomial const& a, Monomial const& b) const
    {
        std::size_t const n = std::min(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k)
        {
            if (a[k].first != b[k].first)
                return a[k].first < b[k].first;
            if (a[k].second != b[k].second)
                return a[k].second > b[k].second;
        }
        return a.size() > b.size();
    }
};

inline Monomial monomial_product(Monomial const& a, Monomial const& b)
{
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size())
    {
        if (a[i].first < b[j].first)
            out.push_back(a[i++]);
        else if (b[j].first < a[i].first)
            out.push_back(b[j++]);
        else
        {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

/// Polynomial over Q(i) in parameters, coordinates and formal function
/// symbols (with derivatives). The term map never holds a zero coefficient,
/// so structural equality is algebraic equality.
class DiffPoly
{
public:
    using TermMap = std::map<Monomial, GaussianRational, MonomialOrder>;

    DiffPoly() = default;
    DiffPoly(long value) : DiffPoly(GaussianRational(value)) {}
    DiffPoly(GaussianRational const& value)
    {
        if (!value.is_zero())
            m_terms.emplace(Monomial{}, value);
    }
    explicit DiffPoly(Symbol const& s) { m_terms.emplace(Monomial{{s, 1u}}, GaussianRational(1)); }

    static DiffPoly constant(GaussianRational const& value) { return DiffPoly(value); }
    static DiffPoly variable(Symbol const& s) { return DiffPoly(s); }

    static DiffPoly from_term(Monomial mono, GaussianRational const& coeff)
    {
        DiffPoly p;
        p.add_term(std::move(mono), coeff);
        return p;
    }

    TermMap const& terms() const noexcept { return m_terms; }
    std::size_t size() const noexcept { return m_terms.size(); }
    bool is_zero() const noexcept { return m_terms.empty(); }

    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1 && m_terms.begin()->first.empty());
    }

    /// Value of a constant polynomial; throws if symbols remain.
    GaussianRational constant_value() const
    {
        if (m_terms.empty())
            return GaussianRational();
        if (!is_constant())
            throw EvaluationError("polynomial is not constant: " + str());
        return m_terms.begin()->second;
    }

    /// Coefficient of the first term in canonical order (zero for 0).
    GaussianRational leading_coefficient() const
    {
        return m_terms.empty() ? GaussianRational() : m_terms.begin()->second;
    }

    unsigned total_degree() const
    {
        unsigned best = 0;
        for (auto const& [mono, coeff] : m_terms)
        {
            unsigned d = 0;
            for (auto const& [s, e] : mono)
                d += e;
            best = std::max(best, d);
        }
        return best;
    }

    std::set<Symbol> symbols() const
    {
        std::set<Symbol> out;
        for (auto const& [mono, coeff] : m_terms)
            for (auto const& [s, e] : mono)
                out.insert(s);
        return out;
    }

    bool contains(Symbol const& s) const
    {
        for (auto const& [mono, coeff] : m_terms)
            for (auto const& [t, e] : mono)
                if (t == s)
                    return true;
        return false;
    }

    DiffPoly operator-() const
    {
        DiffPoly out = *this;
        for (auto& [mono, coeff] : out.m_terms)
            coeff = -coeff;
        return out;
    }

    DiffPoly& operator+=(DiffPoly const& o)
    {
        for (auto const& [mono, coeff] : o.m_terms)
            add_term(mono, coeff);
        return *this;
    }

    DiffPoly& operator-=(DiffPoly const& o)
    {
        for (auto const& [mono, coeff] : o.m_terms)
            add_term(mono, -coeff);
        return *this;
    }

    DiffPoly& operator*=(DiffPoly const& o)
    {
        *this = *this * o;
        return *this;
    }

    DiffPoly& operator*=(GaussianRational const& s)
    {
        if (s.is_zero())
        {
            m_terms.clear();
            return *this;
        }
        for (auto& [mono, coeff] : m_terms)
            coeff *= s;
        return *this;
    }

    DiffPoly& operator/=(GaussianRational const& s) { return *this *= s.inverse(); }

    friend DiffPoly operator+(DiffPoly a, DiffPoly const& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, DiffPoly const& b) { return a -= b; }

    friend DiffPoly operator*(DiffPoly const& a, DiffPoly const& b)
    {
        DiffPoly out;
        for (auto const& [ma, ca] : a.m_terms)
            for (auto const& [mb, cb] : b.m_terms)
                out.add_term(monomial_product(ma, mb), ca * cb);
        return out;
    }

    friend DiffPoly operator*(DiffPoly a, GaussianRational const& s) { return a *= s; }
    friend DiffPoly operator*(GaussianRational const& s, DiffPoly a) { return a *= s; }
    friend DiffPoly operator/(DiffPoly a, GaussianRational const& s) { return a /= s; }

    DiffPoly pow(unsigned exponent) const
    {
        DiffPoly result(1);
        DiffPoly base = *this;
        while (exponent != 0)
        {
            if (exponent & 1u)
                result *= base;
            exponent >>= 1u;
            if (exponent != 0)
                base = base * base;
        }
        return result;
    }

    friend bool operator==(DiffPoly const& a, DiffPoly const& b) { return a.m_terms == b.m_terms; }
    friend bool operator!=(DiffPoly const& a, DiffPoly const& b) { return !(a == b); }

    /// Formal partial derivative. Parameters are constants; a function symbol
    /// gains one derivative when it depends on `x`, and is constant otherwise.
    DiffPoly diff(Symbol const& x) const
    {
        if (!x.is_coordinate())
            throw KindError("cannot differentiate with respect to " + std::string(to_string(x.kind())) + " '" +
                            x.name() + "'");
        DiffPoly out;
        for (auto const& [mono, coeff] : m_terms)
        {
            for (std::size_t k = 0; k < mono.size(); ++k)
            {
                Symbol const& s = mono[k].first;
                unsigned const e = mono[k].second;
                Monomial rest = mono;
                if (e == 1)
                    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
                else
                    rest[k].second = e - 1;
                GaussianRational const c = coeff * GaussianRational(static_cast<long>(e));
                if (s.is_coordinate())
                {
                    if (s == x)
                        out.add_term(std::move(rest), c);
                }
                else if (s.is_function() && s.depends_on(x.name()))
                {
                    out.add_term(monomial_product(rest, Monomial{{s.derivative(x.name()), 1u}}), c);
                }
            }
        }
        return out;
    }

    /// Simultaneous substitution. A binding for an underived function symbol
    /// also determines its derivatives (by differentiating the bound value),
    /// unless the derivative is bound explicitly. Binding a derivative whose
    /// base is not bound is rejected.
    DiffPoly subst(std::map<Symbol, DiffPoly> const& bindings) const
    {
        for (auto const& [s, value] : bindings)
            if (s.is_derived() && bindings.find(s.base()) == bindings.end())
                throw ConsistencyError("binding for derivative " + s.str() + " without a binding for its base " +
                                       s.base().str());

        std::map<Symbol, DiffPoly> cache;
        auto image = [&](Symbol const& s) -> DiffPoly const* {
            if (auto it = bindings.find(s); it != bindings.end())
                return &it->second;
            if (!s.is_derived())
                return nullptr;
            auto const base_it = bindings.find(s.base());
            if (base_it == bindings.end())
                return nullptr;
            if (auto it = cache.find(s); it != cache.end())
                return &it->second;
            DiffPoly value = base_it->second;
            for (auto const& c : s.derivative_coordinates())
                value = value.diff(Symbol::coordinate(c));
            return &cache.emplace(s, std::move(value)).first->second;
        };

        DiffPoly out;
        for (auto const& [mono, coeff] : m_terms)
        {
            DiffPoly term(coeff);
            Monomial kept;
            for (auto const& [s, e] : mono)
            {
                if (DiffPoly const* v = image(s))
                    term *= v->pow(e);
                else
                    kept.emplace_back(s, e);
            }
            if (!kept.empty())
                term *= DiffPoly::from_term(std::move(kept), GaussianRational(1));
            out += term;
        }
        return out;
    }

    /// Exact value at a point that binds every symbol occurring in the
    /// polynomial (derivative symbols must be bound explicitly).
    GaussianRational eval(std::map<Symbol, GaussianRational> const& point) const
    {
        GaussianRational total;
        for (auto const& [mono, coeff] : m_terms)
        {
            GaussianRational term = coeff;
            for (auto const& [s, e] : mono)
            {
                auto const it = point.find(s);
                if (it == point.end())
                    throw EvaluationError("unbound symbol '" + s.str() + "'");
                term *= it->second.pow(e);
            }
            total += term;
        }
        return total;
    }

    /// Printed form accepted by the expression parser, e.g.
    /// "1/8*C^2 - 1/4*C*D + 1/8*D^2". The zero polynomial prints as "0".
    std::string str() const
    {
        if (m_terms.empty())
            return "0";
        std::string out;
        bool first = true;
        for (auto const& [mono, coeff] : m_terms)
        {
            bool negative = false;
            GaussianRational shown = coeff;
            if (coeff.is_real() && sgn(coeff.re()) < 0)
            {
                negative = true;
                shown = -coeff;
            }
            else if (sgn(coeff.re()) == 0 && sgn(coeff.im()) < 0)
            {
                negative = true;
                shown = -coeff;
            }
            if (first)
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            first = false;

            std::string factors;
            for (auto const& [s, e] : mono)
            {
                if (!factors.empty())
                    factors += "*";
                factors += s.str();
                if (e != 1)
                    factors += "^" + std::to_string(e);
            }
            if (factors.empty())
                out += shown.str();
            else if (shown.is_one())
                out += factors;
            else
                out += shown.str() + "*" + factors;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, DiffPoly const& p) { return os << p.str(); }

private:
    void add_term(Monomial mono, GaussianRational const& coeff)
    {
        if (coeff.is_zero())
            return;
        auto [it, inserted] = m_terms.try_emplace(std::move(mono), coeff);
        if (!inserted)
        {
            it->second += coeff;
            if (it->second.is_zero())
                m_terms.erase(it);
        }
    }

    TermMap m_terms;
};

} // namespace projconn
#endif // PROJCONN_DIFF_POLY_HPP_
