#ifndef PROJCONN_GEODESIC_HPP_
#define PROJCONN_GEODESIC_HPP_

#include "projconn/connection.hpp"
#include "projconn/error.hpp"
#include "projconn/gaussian_rational.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace projconn
{

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

/// Constant Christoffel table with complex double entries.
class NumericConnection
{
public:
    explicit NumericConnection(std::size_t dim) : m_dim(dim), m_gamma(dim * dim * dim) {}

    /// Evaluates every entry of `c` at `assignment`; all symbols occurring in
    /// the table must be bound, which leaves constant coefficients.
    static NumericConnection from(Connection const& c, std::map<Symbol, GaussianRational> const& assignment = {})
    {
        std::size_t const n = c.dim();
        NumericConnection out(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    out.m_gamma[out.flat(k, i, j)] = c.gamma(k, i, j).eval(assignment).to_complex();
        return out;
    }

    std::size_t dim() const noexcept { return m_dim; }
    cdouble gamma(std::size_t k, std::size_t i, std::size_t j) const { return m_gamma[flat(k, i, j)]; }

    void set_gamma(std::size_t k, std::size_t i, std::size_t j, cdouble v)
    {
        m_gamma[flat(k, i, j)] = v;
        m_gamma[flat(k, j, i)] = v;
    }

    /// Acceleration -Gamma^k_{ij} v^i v^j.
    CVector acceleration(CVector const& v) const
    {
        CVector a(m_dim);
        for (std::size_t k = 0; k < m_dim; ++k)
        {
            cdouble s = 0;
            for (std::size_t i = 0; i < m_dim; ++i)
                for (std::size_t j = 0; j < m_dim; ++j)
                    s += m_gamma[flat(k, i, j)] * v[i] * v[j];
            a[k] = -s;
        }
        return a;
    }

private:
    std::size_t flat(std::size_t k, std::size_t i, std::size_t j) const { return (k * m_dim + i) * m_dim + j; }

    std::size_t m_dim;
    std::vector<cdouble> m_gamma;
};

struct GeodesicSample
{
    double t;
    CVector position;
    CVector velocity;
};

struct GeodesicPath
{
    std::vector<GeodesicSample> samples;
};

namespace detail
{

inline bool all_finite(CVector const& v)
{
    return std::all_of(v.begin(), v.end(),
                       [](cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

inline CVector axpy(CVector const& x, double h, CVector const& y)
{
    CVector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = x[k] + h * y[k];
    return out;
}

} // namespace detail

/// Integrates x'' + Gamma(x', x') = 0 along real time with the classical
/// fixed-step fourth-order Runge-Kutta scheme. Returns count + 1 samples.
inline GeodesicPath integrate(NumericConnection const& c, CVector const& x0, CVector const& v0, double step,
                              std::size_t count)
{
    std::size_t const n = c.dim();
    if (x0.size() != n || v0.size() != n)
        throw ShapeError("initial data must have " + std::to_string(n) + " components");
    if (!(step > 0.0) || count == 0)
        throw RangeError("step must be positive and count at least 1");
    if (step * static_cast<double>(count) > 10.0 + 1e-12)
        throw RangeError("integration horizon step*count exceeds 10");
    if (!detail::all_finite(x0) || !detail::all_finite(v0))
        throw RangeError("initial data must be finite");

    GeodesicPath path;
    path.samples.reserve(count + 1);
    path.samples.push_back({0.0, x0, v0});
    CVector x = x0, v = v0;
    for (std::size_t s = 1; s <= count; ++s)
    {
        // State (x, v); dx/dt = v, dv/dt = a(v).
        CVector const k1x = v;
        CVector const k1v = c.acceleration(v);
        CVector const k2x = detail::axpy(v, step / 2, k1v);
        CVector const k2v = c.acceleration(k2x);
        CVector const k3x = detail::axpy(v, step / 2, k2v);
        CVector const k3v = c.acceleration(k3x);
        CVector const k4x = detail::axpy(v, step, k3v);
        CVector const k4v = c.acceleration(k4x);
        for (std::size_t k = 0; k < n; ++k)
        {
            x[k] += step / 6 * (k1x[k] + 2.0 * k2x[k] + 2.0 * k3x[k] + k4x[k]);
            v[k] += step / 6 * (k1v[k] + 2.0 * k2v[k] + 2.0 * k3v[k] + k4v[k]);
        }
        if (!detail::all_finite(x) || !detail::all_finite(v))
            throw DivergenceError("geodesic state became non-finite", path.samples.back().t);
        path.samples.push_back({static_cast<double>(s) * step, x, v});
    }
    return path;
}

namespace detail
{

// Euclidean distance in C^n = R^{2n} from p to the segment [a, b].
inline double distance_to_segment(CVector const& p, CVector const& a, CVector const& b)
{
    double ab2 = 0, ap_ab = 0;
    for (std::size_t k = 0; k < p.size(); ++k)
    {
        cdouble const ab = b[k] - a[k];
        cdouble const ap = p[k] - a[k];
        ab2 += std::norm(ab);
        ap_ab += (std::conj(ab) * ap).real();
    }
    double const t = ab2 > 0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
    double d2 = 0;
    for (std::size_t k = 0; k < p.size(); ++k)
        d2 += std::norm(p[k] - (a[k] + t * (b[k] - a[k])));
    return std::sqrt(d2);
}

} // namespace detail

/// Max over the samples of `p` of the distance to the polyline through the
/// positions of `q`.
inline double unparametrized_deviation(GeodesicPath const& p, GeodesicPath const& q)
{
    if (p.samples.empty() || q.samples.empty())
        throw ShapeError("cannot compare an empty path");
    double worst = 0;
    for (auto const& s : p.samples)
    {
        double best = std::numeric_limits<double>::infinity();
        if (q.samples.size() == 1)
            best = detail::distance_to_segment(s.position, q.samples[0].position, q.samples[0].position);
        for (std::size_t k = 0; k + 1 < q.samples.size(); ++k)
            best = std::min(best, detail::distance_to_segment(s.position, q.samples[k].position,
                                                              q.samples[k + 1].position));
        worst = std::max(worst, best);
    }
    return worst;
}

struct MatchResult
{
    double deviation;
    bool within;
};

inline MatchResult unparametrized_match(GeodesicPath const& p, GeodesicPath const& q, double tol)
{
    double const d = unparametrized_deviation(p, q);
    return {d, d < tol};
}

/// Deviation between two traces started at the same point in the same
/// direction. Reparametrized geodesics cover different lengths of the same
/// curve in equal time, so the shorter trace is measured against the longer.
inline double trace_deviation(GeodesicPath const& p, GeodesicPath const& q)
{
    return std::min(unparametrized_deviation(p, q), unparametrized_deviation(q, p));
}

namespace detail
{

// Shortest text that reads back to the same double.
inline std::string shortest(double v)
{
    std::array<char, 32> buf{};
    auto const res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

} // namespace detail

/// CSV with columns t, re/im of each position component, then velocity.
inline void write_csv(std::ostream& os, GeodesicPath const& path, std::vector<std::string> const& names)
{
    os << "t";
    for (auto const& n : names)
        os << ",re_" << n << ",im_" << n;
    for (auto const& n : names)
        os << ",re_v" << n << ",im_v" << n;
    os << "\n";
    for (auto const& s : path.samples)
    {
        os << detail::shortest(s.t);
        for (auto const& z : s.position)
            os << "," << detail::shortest(z.real()) << "," << detail::shortest(z.imag());
        for (auto const& z : s.velocity)
            os << "," << detail::shortest(z.real()) << "," << detail::shortest(z.imag());
        os << "\n";
    }
}

} // namespace projconn
#endif // PROJCONN_GEODESIC_HPP_
