#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace projconn;
using namespace testing_support;

namespace
{

SymbolTable ks_table()
{
    SymbolTable t;
    t.add_coordinate("tau").add_coordinate("z1").add_coordinate("z2");
    t.add_parameter("C").add_parameter("D");
    t.add_function("A", {"tau"}).add_function("F", {"tau", "z1"});
    return t;
}

} // namespace

TEST(GaussianRational, ReducedAndStructural)
{
    GaussianRational const a(make_rational(6, -8), make_rational(2, 4));
    EXPECT_EQ(a.re(), make_rational(-3, 4));
    EXPECT_EQ(a.im(), make_rational(1, 2));
    EXPECT_EQ(a.re().get_den(), 4);
    EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
    EXPECT_EQ((a * a.inverse()), GaussianRational(1));
    EXPECT_THROW(GaussianRational().inverse(), EvaluationError);
}

TEST(GaussianRational, Printing)
{
    EXPECT_EQ(GaussianRational(make_rational(3, 4)).str(), "3/4");
    EXPECT_EQ(GaussianRational::i().str(), "i");
    EXPECT_EQ((-GaussianRational::i()).str(), "-i");
    EXPECT_EQ(GaussianRational(0, make_rational(1, 2)).str(), "1/2*i");
    EXPECT_EQ(GaussianRational(make_rational(3, 4), make_rational(1, 4)).str(), "(3/4 + 1/4*i)");
    EXPECT_EQ(GaussianRational().str(), "0");
}

TEST(GaussianRational, PowAndConj)
{
    GaussianRational const z(1, 1);
    EXPECT_EQ(z.pow(2), GaussianRational(0, 2));
    EXPECT_EQ(z.pow(0), GaussianRational(1));
    EXPECT_EQ(z * z.conj(), GaussianRational(z.norm()));
}

TEST(Symbol, DerivativeBookkeeping)
{
    Symbol const a = Symbol::function("A", {"tau"});
    Symbol const a1 = a.derivative("tau");
    EXPECT_EQ(a1.order(), 1u);
    EXPECT_EQ(a1.base(), a);
    EXPECT_EQ(a1.str(), "d(A, tau)");
    EXPECT_EQ(a1.derivative("tau").str(), "d2(A, tau, tau)");
    EXPECT_THROW(Symbol::parameter("C").derivative("tau"), KindError);
    EXPECT_THROW(a.derivative("z1"), KindError);
    EXPECT_LT(Symbol::parameter("Z"), Symbol::coordinate("a"));
}

TEST(DiffPoly, ArithmeticExamples)
{
    SymbolTable const t = torus_table();
    DiffPoly const C(par("C")), D(par("D"));
    EXPECT_EQ((C + D) * (C + D), P("C^2 + 2*C*D + D^2", t));
    EXPECT_EQ((C - D) * (C - D), P("C^2 - 2*C*D + D^2", t));
    DiffPoly const q = (C * C + D * D) / GaussianRational(4);
    EXPECT_EQ(q.eval({{par("C"), 2}, {par("D"), 2}}), GaussianRational(2));
    EXPECT_EQ(DiffPoly().str(), "0");
    EXPECT_TRUE(DiffPoly().terms().empty());
    EXPECT_TRUE((C - C).is_zero());
}

TEST(DiffPoly, Derivatives)
{
    SymbolTable const t = ks_table();
    Symbol const tau = Symbol::coordinate("tau");
    EXPECT_TRUE(P("C", t).diff(tau).is_zero());
    EXPECT_EQ(P("A*z1", t).diff(tau), P("d(A, tau)*z1", t));
    EXPECT_EQ(P("tau^2*C", t).diff(tau), P("2*tau*C", t));
    EXPECT_TRUE(P("A", t).diff(Symbol::coordinate("z1")).is_zero());
    EXPECT_EQ(P("F", t).diff(tau).diff(Symbol::coordinate("z1")), P("d2(F, tau, z1)", t));
    EXPECT_EQ(P("d2(F, z1, tau)", t), P("d2(F, tau, z1)", t));
    EXPECT_THROW(P("C", t).diff(par("C")), KindError);
}

TEST(DiffPoly, Substitution)
{
    SymbolTable const t = torus_table();
    EXPECT_TRUE(P("(C - D)^2", t).subst({{par("C"), P("D", t)}}).is_zero());
    EXPECT_TRUE(P("C^2", t).subst({{par("C"), DiffPoly()}}).is_zero());
    DiffPoly const v = P("(A + B)*(D - C)", t).subst(
        {{par("A"), DiffPoly(1)}, {par("B"), DiffPoly(2)}, {par("C"), DiffPoly(1)}, {par("D"), DiffPoly(4)}});
    EXPECT_EQ(v, DiffPoly(9));
    // Simultaneous, not sequential.
    EXPECT_EQ(P("C - D", t).subst({{par("C"), P("D", t)}, {par("D"), P("C", t)}}), P("D - C", t));
}

TEST(DiffPoly, SubstitutionOfFunctions)
{
    SymbolTable const t = ks_table();
    Symbol const a = Symbol::function("A", {"tau"});
    // Binding the base determines the derivative symbols.
    DiffPoly const p = P("d(A, tau) + A*z1", t);
    EXPECT_EQ(p.subst({{a, P("tau^2", t)}}), P("2*tau + tau^2*z1", t));
    EXPECT_EQ(p.subst({{a, DiffPoly(3)}}), P("3*z1", t));
    EXPECT_THROW(p.subst({{a.derivative("tau"), DiffPoly(1)}}), ConsistencyError);
}

TEST(DiffPoly, Evaluation)
{
    SymbolTable const t = torus_table();
    EXPECT_EQ(DiffPoly().eval({}), GaussianRational(0));
    EXPECT_EQ(P("(C^2 + D^2)/4", t).eval({{par("C"), 1}, {par("D"), 3}}), GaussianRational(make_rational(5, 2)));
    EXPECT_EQ(P("i*tau", t).eval({{Symbol::coordinate("tau"), GaussianRational::i()}}), GaussianRational(-1));
    EXPECT_THROW(P("C*D", t).eval({{par("C"), 1}}), EvaluationError);
}

TEST(Parser, Examples)
{
    SymbolTable const t = ks_table();
    DiffPoly const p = P("(C - D)^2 / 8", t);
    EXPECT_EQ(p.str(), "1/8*C^2 - 1/4*C*D + 1/8*D^2");
    EXPECT_EQ(P("d(A, tau) * z1", t).str(), "z1*d(A, tau)");
    DiffPoly const c = P("3/4 + 1/4*i", t);
    ASSERT_TRUE(c.is_constant());
    EXPECT_EQ(c.constant_value(), GaussianRational(make_rational(3, 4), make_rational(1, 4)));
    EXPECT_EQ(P("-C^2", t), -(P("C", t) * P("C", t)));
    EXPECT_EQ(P("2^3", t), DiffPoly(8));
    EXPECT_EQ(P("-(C + 1) - -2", t), P("1 - C", t));
}

TEST(Parser, ErrorsCarryOffsets)
{
    SymbolTable const t = torus_table();
    auto const offset_of = [&](std::string const& text) -> std::size_t {
        try
        {
            parse_expr(text, t);
        }
        catch (ParseError const& e)
        {
            return e.offset();
        }
        return static_cast<std::size_t>(-1);
    };
    EXPECT_EQ(offset_of("C + * D"), 4u);
    EXPECT_EQ(offset_of("(C + D"), 6u);
    EXPECT_EQ(offset_of("C / 0"), 4u);
    EXPECT_EQ(offset_of("C / D"), 4u);
    EXPECT_EQ(offset_of(""), 0u);
    EXPECT_EQ(offset_of("C D"), 2u);
    EXPECT_THROW(parse_expr("C + Q", t), UndeclaredIdentifierError);
    try
    {
        parse_expr("C + Q", t);
    }
    catch (UndeclaredIdentifierError const& e)
    {
        EXPECT_EQ(e.offset(), 4u);
    }
    EXPECT_THROW(parse_expr("d(C, tau)", t), ParseError);
    EXPECT_THROW(parse_expr("d2(A, tau)", ks_table()), ParseError);
}

TEST(Parser, Utf8Identifiers)
{
    SymbolTable t;
    t.add_coordinate("τ").add_parameter("α");
    EXPECT_EQ(parse_expr("α*τ^2", t).str(), "α*τ^2");
    EXPECT_THROW(t.add_parameter("i"), ConstructionError);
    EXPECT_THROW(t.add_parameter("α"), ConstructionError);
    EXPECT_THROW(t.add_function("F", {"x"}), ConstructionError);
}

// Properties over random polynomials.

namespace
{

std::vector<Symbol> property_vars()
{
    return {par("C"), par("D"), Symbol::coordinate("tau"), Symbol::coordinate("z1"),
            Symbol::function("A", {"tau"}), Symbol::function("F", {"tau", "z1"}),
            Symbol::function("F", {"tau", "z1"}).derivative("z1")};
}

} // namespace

TEST(DiffPolyProperty, CanonicalFormUnderRebracketing)
{
    auto const vars = property_vars();
    for (int trial = 0; trial < 200; ++trial)
    {
        DiffPoly const a = random_poly(vars, 3, 4), b = random_poly(vars, 3, 4), c = random_poly(vars, 2, 3);
        EXPECT_EQ((a + b) + c, c + (b + a));
        EXPECT_EQ((a * b) * c, b * (c * a));
        EXPECT_EQ(a * (b + c), c * a + a * b);
        EXPECT_EQ(((a + b) * (a - b)).terms(), (a * a - b * b).terms());
        DiffPoly const ab = a * b;
        for (auto const& [mono, coeff] : ab.terms())
            EXPECT_FALSE(coeff.is_zero());
    }
}

TEST(DiffPolyProperty, PartialDerivativesCommute)
{
    auto const vars = property_vars();
    Symbol const tau = Symbol::coordinate("tau"), z1 = Symbol::coordinate("z1");
    for (int trial = 0; trial < 200; ++trial)
    {
        DiffPoly const p = random_poly(vars, 4, 5);
        EXPECT_EQ(p.diff(tau).diff(z1), p.diff(z1).diff(tau));
        DiffPoly const q = random_poly(vars, 3, 3);
        EXPECT_EQ((p * q).diff(tau), p.diff(tau) * q + p * q.diff(tau));
    }
}

TEST(DiffPolyProperty, EvaluationIsRingHomomorphism)
{
    auto const vars = property_vars();
    for (int trial = 0; trial < 200; ++trial)
    {
        std::map<Symbol, GaussianRational> point;
        for (auto const& v : vars)
            point[v] = random_gaussian();
        DiffPoly const p = random_poly(vars, 3, 5), q = random_poly(vars, 3, 5);
        EXPECT_EQ((p * q).eval(point), p.eval(point) * q.eval(point));
        EXPECT_EQ((p + q).eval(point), p.eval(point) + q.eval(point));
        EXPECT_EQ((p - q).eval(point), p.eval(point) - q.eval(point));
    }
}

TEST(DiffPolyProperty, ParsePrintRoundTrip)
{
    SymbolTable const t = ks_table();
    auto const vars = property_vars();
    for (int trial = 0; trial < 200; ++trial)
    {
        DiffPoly const p = random_poly(vars, 4, 6);
        EXPECT_EQ(parse_expr(p.str(), t), p) << p.str();
    }
}
