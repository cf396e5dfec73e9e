#ifndef PROJCONN_GAUSSIAN_RATIONAL_HPP_
#define PROJCONN_GAUSSIAN_RATIONAL_HPP_

#include "projconn/error.hpp"

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>
#include <utility>

namespace projconn
{

using Rational = mpq_class;

/// Reduced fraction from numerator/denominator; throws on a zero denominator.
inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw EvaluationError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(Rational const& q)
{
    return q.get_str();
}

/// Exact element re + im*i of Q(i). Both parts are kept in lowest terms with
/// positive denominators, so equality is structural.
class GaussianRational
{
public:
    GaussianRational() = default;
    GaussianRational(long value) : m_re(value) {}
    GaussianRational(Rational re) : m_re(std::move(re)) { m_re.canonicalize(); }
    GaussianRational(Rational re, Rational im)
        : m_re(std::move(re)), m_im(std::move(im))
    {
        m_re.canonicalize();
        m_im.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    Rational const& re() const noexcept { return m_re; }
    Rational const& im() const noexcept { return m_im; }

    bool is_zero() const { return sgn(m_re) == 0 && sgn(m_im) == 0; }
    bool is_one() const { return m_re == 1 && sgn(m_im) == 0; }
    bool is_real() const { return sgn(m_im) == 0; }

    GaussianRational conj() const { return {m_re, -m_im}; }
    Rational norm() const { return m_re * m_re + m_im * m_im; }

    GaussianRational inverse() const
    {
        if (is_zero())
            throw EvaluationError("division by zero in Q(i)");
        Rational const n = norm();
        return {m_re / n, -m_im / n};
    }

    GaussianRational pow(unsigned exponent) const
    {
        GaussianRational result(1);
        GaussianRational base = *this;
        while (exponent != 0)
        {
            if (exponent & 1u)
                result *= base;
            base *= base;
            exponent >>= 1u;
        }
        return result;
    }

    std::complex<double> to_complex() const
    {
        return {m_re.get_d(), m_im.get_d()};
    }

    GaussianRational operator-() const { return {-m_re, -m_im}; }

    GaussianRational& operator+=(GaussianRational const& o)
    {
        m_re += o.m_re;
        m_im += o.m_im;
        return *this;
    }
    GaussianRational& operator-=(GaussianRational const& o)
    {
        m_re -= o.m_re;
        m_im -= o.m_im;
        return *this;
    }
    GaussianRational& operator*=(GaussianRational const& o)
    {
        Rational re = m_re * o.m_re - m_im * o.m_im;
        Rational im = m_re * o.m_im + m_im * o.m_re;
        m_re = std::move(re);
        m_im = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(GaussianRational const& o)
    {
        return *this *= o.inverse();
    }

    friend GaussianRational operator+(GaussianRational a, GaussianRational const& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, GaussianRational const& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, GaussianRational const& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, GaussianRational const& b) { return a /= b; }

    friend bool operator==(GaussianRational const& a, GaussianRational const& b)
    {
        return a.m_re == b.m_re && a.m_im == b.m_im;
    }
    friend bool operator!=(GaussianRational const& a, GaussianRational const& b) { return !(a == b); }

    /// Total order (re first, then im); only used for canonical containers.
    friend bool operator<(GaussianRational const& a, GaussianRational const& b)
    {
        if (a.m_re != b.m_re)
            return a.m_re < b.m_re;
        return a.m_im < b.m_im;
    }

    /// "3/4", "-i", "1/2*i", "(3/4 + 1/4*i)". The output is accepted by the
    /// expression parser.
    std::string str() const
    {
        if (is_real())
            return m_re.get_str();
        std::string im_part;
        if (m_im == 1)
            im_part = "i";
        else if (m_im == -1)
            im_part = "-i";
        else
            im_part = m_im.get_str() + "*i";
        if (sgn(m_re) == 0)
            return im_part;
        Rational const abs_im = abs(m_im);
        std::string const mag = abs_im == 1 ? "i" : abs_im.get_str() + "*i";
        return "(" + m_re.get_str() + (sgn(m_im) < 0 ? " - " : " + ") + mag + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, GaussianRational const& q)
    {
        return os << q.str();
    }

private:
    Rational m_re{0};
    Rational m_im{0};
};

} // namespace projconn
#endif // PROJCONN_GAUSSIAN_RATIONAL_HPP_
