#include "support.hpp"

#include <gtest/gtest.h>

using namespace projconn;
using namespace testing_support;

namespace
{

Point3 random_point()
{
    // Upper half plane: imaginary part of tau strictly positive.
    GaussianRational const tau(random_rational(), make_rational(uniform(1, 9), uniform(1, 4)));
    return {tau, random_gaussian(), random_gaussian()};
}

std::map<Symbol, GaussianRational> random_values(bool with_trace)
{
    std::map<Symbol, GaussianRational> v{{ks_coefficient("A"), random_gaussian()},
                                         {ks_coefficient("B"), random_gaussian()}};
    if (with_trace)
        v[ks_coefficient("C")] = random_gaussian();
    return v;
}

bool check(GroupElement const& g, bool with_trace, std::size_t points)
{
    auto const weights = kuga_shimura_weights(with_trace);
    std::vector<CoefficientSample> samples;
    for (std::size_t p = 0; p < points; ++p)
        samples.push_back(make_sample(random_point(), g, weights, random_values(with_trace)));
    return invariance_check(ThetaField::of(kuga_shimura(with_trace)), g, samples, weights);
}

std::size_t nonzero_entries(Connection const& c, bool upper_only)
{
    std::size_t count = 0;
    for (std::size_t k = 0; k < c.dim(); ++k)
        for (std::size_t i = 0; i < c.dim(); ++i)
            for (std::size_t j = upper_only ? i : 0; j < c.dim(); ++j)
                count += c.gamma(k, i, j).is_zero() ? 0 : 1;
    return count;
}

} // namespace

TEST(Families, Torus3Table)
{
    EXPECT_EQ(torus3({0, 0, 0, 0, 0}), Connection(coordinate_symbols({"tau", "z1", "z2"})));
    Connection const c = torus3();
    SymbolTable const t = torus_table();
    EXPECT_EQ(c.gamma(0, 0, 1), P("C/2", t));
    EXPECT_EQ(c.gamma(1, 1, 1), P("C", t));
    EXPECT_EQ(c.gamma(1, 0, 0), P("A", t));
    EXPECT_EQ(c.gamma(2, 2, 0), P("E/2", t));
    EXPECT_EQ(nonzero_entries(c, true), 11u);
    EXPECT_EQ(nonzero_entries(c, false), 17u);
}

TEST(Families, TorusN)
{
    EXPECT_THROW(torus_n(3), RangeError);
    Connection const c4 = torus_n(4);
    EXPECT_EQ(c4.coord_names(), (std::vector<std::string>{"z1", "z2", "tau", "z4"}));
    EXPECT_EQ(totally_geodesic_restrict(c4, {"tau", "z1", "z2"}), torus3());

    Connection const sample = totally_geodesic_restrict(torus_n(4, {1, 2, 5, 6, 0}), {"tau", "z1", "z2"});
    EXPECT_FALSE(is_projectively_flat3(sample));
    EXPECT_TRUE(curvature(torus_n(5, {0, 0, 0, 0, 0})).is_zero());
}

TEST(Families, KugaShimuraCurvature)
{
    Connection const c = kuga_shimura(false);
    Tensor const r = curvature(c);
    EXPECT_TRUE(r.is_zero());

    // The derivative terms d_i G^l_{jk} - d_j G^l_{ik} cancel before any product terms are added.
    std::size_t const n = c.dim();
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                {
                    DiffPoly const d = c.gamma(l, j, k).diff(c.coords()[i]) - c.gamma(l, i, k).diff(c.coords()[j]);
                    EXPECT_TRUE(d.is_zero());
                }

    EXPECT_TRUE(weyl3(kuga_shimura(true)).is_zero());
    EXPECT_FALSE(curvature(kuga_shimura(true)).is_zero());
}

TEST(Families, KugaShimuraTraceAndEquivalence)
{
    EXPECT_TRUE(is_trace_free(ThetaField::of(kuga_shimura(false))));
    EXPECT_FALSE(is_trace_free(ThetaField::of(kuga_shimura(true))));
    auto const theta = projective_equiv(kuga_shimura(true), kuga_shimura(false));
    ASSERT_TRUE(theta.has_value());
    EXPECT_EQ(theta->components[0], DiffPoly(ks_coefficient("C")) / GaussianRational(2));
    EXPECT_TRUE(theta->components[1].is_zero());
    EXPECT_TRUE(theta->components[2].is_zero());

    auto const w = kuga_shimura_weights(true);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(twice(w[0].weight), 3u);
    EXPECT_EQ(twice(w[2].weight), 2u);
}

TEST(Families, GroupElement)
{
    EXPECT_THROW(GroupElement(1, 1, 1, 1), ConstructionError);
    EXPECT_NO_THROW(GroupElement(2, 3, 1, 2));
    GaussianRational const i = GaussianRational::i();
    EXPECT_NO_THROW(GroupElement(i, 0, 0, -i));
}

TEST(ActionMap, Examples)
{
    GaussianRational const i = GaussianRational::i();
    Point3 const p{i, make_rational(1, 3), -2};
    ActionMap const id = action_map(GroupElement::identity());
    EXPECT_EQ(id(p), p);
    Matrix3 const jid = id.jacobian(p);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            EXPECT_EQ(jid[r][c], GaussianRational(r == c ? 1 : 0));

    ActionMap const t = action_map(GroupElement(1, 1, 0, 1));
    Point3 const q = t({i, 0, 0});
    EXPECT_EQ(q[0], i + GaussianRational(1));
    EXPECT_TRUE(q[1].is_zero());
    EXPECT_EQ(t.jacobian({i, 0, 0})[0][0], GaussianRational(1));

    ActionMap const s = action_map(GroupElement(0, -1, 1, 0));
    EXPECT_EQ(s({i, 0, 0})[0], i);
    EXPECT_EQ(s.jacobian({i, 0, 0})[0][0], GaussianRational(-1));
    EXPECT_THROW(s({0, 1, 1}), PoleError);
    EXPECT_THROW(s.jacobian({0, 1, 1}), EvaluationError);
}

TEST(ActionMap, JacobianStructure)
{
    // Block structure of the Jacobian; in the z-directions the map is affine.
    GroupElement const g(2, 1, 1, 1, 1, make_rational(1, 2), -1, 3);
    ActionMap const act(g);
    Point3 const p{GaussianRational(make_rational(1, 3), 1), 2, -1};
    Matrix3 const j = act.jacobian(p);
    GaussianRational const q = act.automorphy_factor(p[0]);
    EXPECT_EQ(j[0][0], q.pow(2).inverse());
    EXPECT_EQ(j[1][1], q.inverse());
    EXPECT_EQ(j[2][2], q.inverse());
    EXPECT_TRUE(j[0][1].is_zero() && j[0][2].is_zero() && j[1][2].is_zero() && j[2][1].is_zero());
    GaussianRational const h(make_rational(1, 7));
    Point3 const moved = act({p[0], p[1] + h, p[2]});
    EXPECT_EQ(moved[1] - act(p)[1], j[1][1] * h);
}

TEST(Invariance, ZeroFieldAlwaysInvariant)
{
    GroupElement const g(2, 1, 1, 1, 1, 2, 3, 4);
    auto const weights = kuga_shimura_weights(true);
    std::map<Symbol, GaussianRational> zero{{ks_coefficient("A"), 0}, {ks_coefficient("B"), 0}, {ks_coefficient("C"), 0}};
    std::vector<CoefficientSample> samples{make_sample(random_point(), g, weights, zero)};
    EXPECT_TRUE(invariance_check(ThetaField::of(kuga_shimura(true)), g, samples, weights));
}

TEST(Invariance, LatticeAndUnipotentElements)
{
    for (int trial = 0; trial < 10; ++trial)
    {
        GroupElement const lambda(1, 0, 0, 1, random_rational(), random_rational(), random_rational(),
                                  random_rational());
        EXPECT_TRUE(check(lambda, false, 10));
        EXPECT_TRUE(check(lambda, true, 10));
        GroupElement const unipotent(1, random_rational(), 0, 1, random_rational(), random_rational(),
                                     random_rational(), random_rational());
        EXPECT_TRUE(check(unipotent, true, 10));
    }
}

TEST(Invariance, OrderFourElement)
{
    GroupElement const s(0, -1, 1, 0);
    GaussianRational const tau(0, 2);
    auto const weights = kuga_shimura_weights(false);
    GaussianRational const v(3, -1);
    CoefficientSample sample = make_sample({tau, 1, make_rational(1, 2)}, s, weights,
                                           {{ks_coefficient("A"), v}, {ks_coefficient("B"), 5}});
    EXPECT_EQ(sample.at_image.at(ks_coefficient("A")), tau.pow(3) * v);
    EXPECT_TRUE(invariance_check(ThetaField::of(kuga_shimura(false)), s, {sample}, weights));
    EXPECT_TRUE(check(s, true, 10));
    EXPECT_TRUE(check(GroupElement(2, 1, 1, 1), true, 10));
}

TEST(Invariance, WeightRuleIsPinned)
{
    GroupElement const s(0, -1, 1, 0);
    // Coefficients declared with the wrong weight: self-consistent data, but not invariant.
    std::vector<WeightedCoefficient> const wrong{{ks_coefficient("A"), Weight::one}, {ks_coefficient("B"), Weight::one}};
    std::vector<CoefficientSample> samples{
        make_sample({GaussianRational(0, 2), 1, 1}, s, wrong, {{ks_coefficient("A"), 1}, {ks_coefficient("B"), 2}})};
    EXPECT_FALSE(invariance_check(ThetaField::of(kuga_shimura(false)), s, samples, wrong));

    // Image values that contradict the declared weights are rejected.
    auto const weights = kuga_shimura_weights(false);
    CoefficientSample bad = make_sample({GaussianRational(0, 2), 1, 1}, s, weights,
                                        {{ks_coefficient("A"), 1}, {ks_coefficient("B"), 2}});
    bad.at_image[ks_coefficient("A")] = 1;
    EXPECT_THROW(invariance_check(ThetaField::of(kuga_shimura(false)), s, {bad}, weights), ConsistencyError);
    EXPECT_THROW(invariance_check(ThetaField(2), s, {}, weights), DimensionError);
}
