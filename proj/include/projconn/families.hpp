#ifndef PROJCONN_FAMILIES_HPP_
#define PROJCONN_FAMILIES_HPP_

#include "projconn/connection.hpp"
#include "projconn/diff_poly.hpp"
#include "projconn/error.hpp"
#include "projconn/gaussian_rational.hpp"
#include "projconn/projective.hpp"
#include "projconn/symbol.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace projconn
{

// ---------------------------------------------------------------------------
// Translation-invariant family on the 3-torus and its n-dimensional extension
// ---------------------------------------------------------------------------

/// Parameters of the five-parameter torus family, as polynomials so that
/// both symbolic and numeric members can be built.
struct TorusParameters
{
    DiffPoly A, B, C, D, E;

    /// A, B, C, D, E as free parameter symbols.
    static TorusParameters symbolic()
    {
        return {DiffPoly(Symbol::parameter("A")), DiffPoly(Symbol::parameter("B")),
                DiffPoly(Symbol::parameter("C")), DiffPoly(Symbol::parameter("D")),
                DiffPoly(Symbol::parameter("E"))};
    }
};

namespace detail
{

// Fills the torus-family table on the given (tau, z1, z2) positions.
inline void fill_torus_entries(Connection& c, std::size_t tau, std::size_t z1, std::size_t z2,
                               TorusParameters const& p)
{
    GaussianRational const half = make_rational(1, 2);
    c.set_gamma(z1, tau, tau, p.A);
    c.set_gamma(z2, tau, tau, p.B);
    c.set_gamma(z1, z1, z1, p.C);
    c.set_gamma(tau, tau, z1, p.C * half);
    c.set_gamma(z1, z1, z2, p.C * half);
    c.set_gamma(z2, z2, z2, p.D);
    c.set_gamma(tau, tau, z2, p.D * half);
    c.set_gamma(z2, z1, z2, p.D * half);
    c.set_gamma(tau, tau, tau, p.E);
    c.set_gamma(z1, z1, tau, p.E * half);
    c.set_gamma(z2, z2, tau, p.E * half);
}

} // namespace detail

/// Constant-coefficient connection on the 3-torus, coordinates (tau, z1, z2):
///   G^{z1}_{tau tau} = A,  G^{z2}_{tau tau} = B,
///   G^{z1}_{z1 z1} = 2 G^{tau}_{tau z1} = 2 G^{z1}_{z1 z2} = C,
///   G^{z2}_{z2 z2} = 2 G^{tau}_{tau z2} = 2 G^{z2}_{z1 z2} = D,
///   G^{tau}_{tau tau} = 2 G^{z1}_{z1 tau} = 2 G^{z2}_{z2 tau} = E,
/// all other symbols zero.
inline Connection torus3(TorusParameters const& p)
{
    Connection c({Symbol::coordinate("tau"), Symbol::coordinate("z1"), Symbol::coordinate("z2")});
    detail::fill_torus_entries(c, 0, 1, 2, p);
    return c;
}

inline Connection torus3()
{
    return torus3(TorusParameters::symbolic());
}

/// The same symbols on the n-torus with coordinates (z1, z2, tau, z4, ..., zn);
/// every symbol involving z4..zn vanishes, so {z4 = ... = zn = 0} is totally
/// geodesic and carries torus3.
inline Connection torus_n(std::size_t n, TorusParameters const& p)
{
    if (n < 4)
        throw RangeError("torus_n needs n >= 4, got " + std::to_string(n));
    std::vector<Symbol> coords{Symbol::coordinate("z1"), Symbol::coordinate("z2"), Symbol::coordinate("tau")};
    for (std::size_t k = 4; k <= n; ++k)
        coords.push_back(Symbol::coordinate("z" + std::to_string(k)));
    Connection c(coords);
    detail::fill_torus_entries(c, 2, 0, 1, p);
    return c;
}

inline Connection torus_n(std::size_t n)
{
    return torus_n(n, TorusParameters::symbolic());
}

/// The E-part of the torus family: phi_tau with phi_tau(d_tau) = E/2.
inline OneForm torus_phi_tau(DiffPoly const& E)
{
    OneForm f = OneForm::zero(3);
    f.components[0] = E * make_rational(1, 2);
    return f;
}

// ---------------------------------------------------------------------------
// Kuga-Shimura family
// ---------------------------------------------------------------------------

inline Symbol ks_coefficient(std::string const& name)
{
    return Symbol::function(name, {"tau"});
}

/// Connection nabla_0 + Theta_{A,B,C} on H x C^2 with coordinates (tau, z1, z2)
/// and coefficients A(tau), B(tau), C(tau):
///   G^{z1}_{tau tau} = A,  G^{z2}_{tau tau} = B,
///   G^{tau}_{tau tau} = 2 G^{z1}_{z1 tau} = 2 G^{z2}_{z2 tau} = C.
/// Without the trace part C is absent (the trace-free representative).
inline Connection kuga_shimura(bool with_trace)
{
    Connection c({Symbol::coordinate("tau"), Symbol::coordinate("z1"), Symbol::coordinate("z2")});
    c.set_gamma(1, 0, 0, DiffPoly(ks_coefficient("A")));
    c.set_gamma(2, 0, 0, DiffPoly(ks_coefficient("B")));
    if (with_trace)
    {
        DiffPoly const C(ks_coefficient("C"));
        c.set_gamma(0, 0, 0, C);
        c.set_gamma(1, 1, 0, C * make_rational(1, 2));
        c.set_gamma(2, 2, 0, C * make_rational(1, 2));
    }
    return c;
}

/// Modular weight of a coefficient f: f(tau) (d tau)^w descends to the
/// quotient curve. Only 1/2, 1 and 3/2 occur.
enum class Weight
{
    half,
    one,
    three_halves,
};

/// 2w, the power of (c tau + d) in the transport rule.
inline unsigned twice(Weight w)
{
    switch (w)
    {
    case Weight::half: return 1;
    case Weight::one: return 2;
    case Weight::three_halves: return 3;
    }
    return 0;
}

struct WeightedCoefficient
{
    Symbol symbol;
    Weight weight;
};

/// A and B are sections of K^{3/2}; C (the G^tau_{tau tau} slot) of K.
inline std::vector<WeightedCoefficient> kuga_shimura_weights(bool with_trace)
{
    std::vector<WeightedCoefficient> out{{ks_coefficient("A"), Weight::three_halves},
                                         {ks_coefficient("B"), Weight::three_halves}};
    if (with_trace)
        out.push_back({ks_coefficient("C"), Weight::one});
    return out;
}

/// Element (gamma, lambda) with gamma = (a b; c d), ad - bc = 1, and
/// lambda = (m, n, k, l).
class GroupElement
{
public:
    GroupElement(GaussianRational a, GaussianRational b, GaussianRational c, GaussianRational d,
                 GaussianRational m = 0, GaussianRational n = 0, GaussianRational k = 0, GaussianRational l = 0)
        : a(std::move(a)), b(std::move(b)), c(std::move(c)), d(std::move(d)), m(std::move(m)), n(std::move(n)),
          k(std::move(k)), l(std::move(l))
    {
        if (this->a * this->d - this->b * this->c != GaussianRational(1))
            throw ConstructionError("group element needs ad - bc = 1");
    }

    static GroupElement identity() { return GroupElement(1, 0, 0, 1); }

    GaussianRational a, b, c, d;
    GaussianRational m, n, k, l;
};

using Point3 = std::array<GaussianRational, 3>;
using Matrix3 = std::array<std::array<GaussianRational, 3>, 3>;

inline Matrix3 inverse(Matrix3 const& m)
{
    auto const cof = [&](std::size_t r, std::size_t c) {
        std::size_t const r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
        return m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1];
    };
    GaussianRational const det = m[0][0] * cof(0, 0) + m[0][1] * cof(0, 1) + m[0][2] * cof(0, 2);
    if (det.is_zero())
        throw EvaluationError("singular Jacobian");
    GaussianRational const inv = det.inverse();
    Matrix3 out;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            out[r][c] = cof(c, r) * inv;
    return out;
}

/// The action of (gamma, lambda) on H x C^2:
///   (tau, z1, z2) -> ((a tau + b)/(c tau + d), (z1 + m tau + n)/(c tau + d),
///                     (z2 + k tau + l)/(c tau + d)).
class ActionMap
{
public:
    explicit ActionMap(GroupElement g) : m_g(std::move(g)) {}

    GroupElement const& element() const noexcept { return m_g; }

    /// c tau + d; throws at the pole.
    GaussianRational automorphy_factor(GaussianRational const& tau) const
    {
        GaussianRational q = m_g.c * tau + m_g.d;
        if (q.is_zero())
            throw PoleError("c*tau + d vanishes at tau = " + tau.str());
        return q;
    }

    Point3 operator()(Point3 const& p) const
    {
        GaussianRational const inv = automorphy_factor(p[0]).inverse();
        return {(m_g.a * p[0] + m_g.b) * inv, (p[1] + m_g.m * p[0] + m_g.n) * inv,
                (p[2] + m_g.k * p[0] + m_g.l) * inv};
    }

    /// J[r][s] = d(image_r)/d(x_s), rows and columns ordered (tau, z1, z2).
    Matrix3 jacobian(Point3 const& p) const
    {
        GaussianRational const q = automorphy_factor(p[0]);
        GaussianRational const inv = q.inverse();
        GaussianRational const inv2 = inv * inv;
        Matrix3 j;
        j[0] = {inv2, 0, 0};
        // d/dtau of (z + u tau + v)/q = (u d - c z - c v)/q^2
        j[1] = {(m_g.m * m_g.d - m_g.c * p[1] - m_g.c * m_g.n) * inv2, inv, 0};
        j[2] = {(m_g.k * m_g.d - m_g.c * p[2] - m_g.c * m_g.l) * inv2, 0, inv};
        return j;
    }

private:
    GroupElement m_g;
};

inline ActionMap action_map(GroupElement const& g)
{
    return ActionMap(g);
}

/// Value of a weight-w coefficient at gamma(tau) given its value at tau:
/// (c tau + d)^{2w} * value.
inline GaussianRational transport(Weight w, GroupElement const& g, GaussianRational const& tau,
                                  GaussianRational const& value)
{
    return ActionMap(g).automorphy_factor(tau).pow(twice(w)) * value;
}

/// Coefficient values at one sample point, both at tau and at gamma(tau).
struct CoefficientSample
{
    Point3 point;
    std::map<Symbol, GaussianRational> at_source;
    std::map<Symbol, GaussianRational> at_image;
};

/// Builds a sample whose image values follow the weight rule.
inline CoefficientSample make_sample(Point3 const& point, GroupElement const& g,
                                     std::vector<WeightedCoefficient> const& weights,
                                     std::map<Symbol, GaussianRational> const& at_source)
{
    CoefficientSample s{point, at_source, {}};
    for (auto const& wc : weights)
    {
        auto const it = at_source.find(wc.symbol);
        if (it == at_source.end())
            throw ConsistencyError("no value for coefficient " + wc.symbol.str());
        s.at_image[wc.symbol] = transport(wc.weight, g, point[0], it->second);
    }
    return s;
}

namespace detail
{

inline std::array<std::array<std::array<GaussianRational, 3>, 3>, 3> evaluate_field(
    ThetaField const& field, Point3 const& p, std::map<Symbol, GaussianRational> const& coeffs)
{
    std::map<Symbol, GaussianRational> point = coeffs;
    point[Symbol::coordinate("tau")] = p[0];
    point[Symbol::coordinate("z1")] = p[1];
    point[Symbol::coordinate("z2")] = p[2];
    std::array<std::array<std::array<GaussianRational, 3>, 3>, 3> out;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                out[k][i][j] = field(k, i, j).eval(point);
    return out;
}

} // namespace detail

/// Checks, exactly and pointwise, that the Theta field on H x C^2 (chart
/// (tau, z1, z2)) is invariant under (gamma, lambda):
///   Theta^k_{ij}(p) = sum (J^-1)^k_l Theta^l_{ab}(g p) J^a_i J^b_j,
/// where the coefficients at g p take the supplied image values. Every
/// image value must agree with the weight rule.
inline bool invariance_check(ThetaField const& field, GroupElement const& g,
                             std::vector<CoefficientSample> const& samples,
                             std::vector<WeightedCoefficient> const& weights)
{
    if (field.dim() != 3)
        throw DimensionError("invariance check works on H x C^2 (dimension 3)");
    ActionMap const act(g);
    for (auto const& s : samples)
    {
        for (auto const& wc : weights)
        {
            auto const src = s.at_source.find(wc.symbol);
            auto const img = s.at_image.find(wc.symbol);
            if (src == s.at_source.end() || img == s.at_image.end())
                throw ConsistencyError("coefficient " + wc.symbol.str() + " needs values at tau and gamma(tau)");
            if (transport(wc.weight, g, s.point[0], src->second) != img->second)
                throw ConsistencyError("value of " + wc.symbol.str() + " at gamma(tau) violates its weight rule");
        }

        Point3 const image = act(s.point);
        Matrix3 const jac = act.jacobian(s.point);
        Matrix3 const jinv = inverse(jac);
        auto const here = detail::evaluate_field(field, s.point, s.at_source);
        auto const there = detail::evaluate_field(field, image, s.at_image);

        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i; j < 3; ++j)
                {
                    GaussianRational pulled;
                    for (std::size_t l = 0; l < 3; ++l)
                    {
                        if (jinv[k][l].is_zero())
                            continue;
                        for (std::size_t a = 0; a < 3; ++a)
                            for (std::size_t b = 0; b < 3; ++b)
                                if (!there[l][a][b].is_zero())
                                    pulled += jinv[k][l] * there[l][a][b] * jac[a][i] * jac[b][j];
                    }
                    if (pulled != here[k][i][j])
                        return false;
                }
    }
    return true;
}

} // namespace projconn
#endif // PROJCONN_FAMILIES_HPP_
