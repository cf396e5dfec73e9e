#ifndef PROJCONN_ERROR_HPP_
#define PROJCONN_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projconn
{

/// Base of every error raised by the library. Each subclass names one
/// failure category so callers (and the CLI) can map it to a diagnostic.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An operation received a symbol of the wrong kind (e.g. differentiating
/// with respect to a parameter).
class KindError : public Error
{
public:
    using Error::Error;
};

/// Inconsistent inputs: a derivative bound without its base symbol, a
/// coefficient sample that violates its weight rule, and similar.
class ConsistencyError : public Error
{
public:
    using Error::Error;
};

/// Exact evaluation could not complete (unbound symbol, division by zero).
class EvaluationError : public Error
{
public:
    using Error::Error;
};

/// A Mobius-type map was evaluated at its pole.
class PoleError : public EvaluationError
{
public:
    using EvaluationError::EvaluationError;
};

class ParseError : public Error
{
public:
    ParseError(std::string const& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), m_message(what), m_offset(offset)
    {}

    std::size_t offset() const noexcept { return m_offset; }
    /// The message without the offset suffix.
    std::string const& message() const noexcept { return m_message; }

private:
    std::string m_message;
    std::size_t m_offset;
};

class UndeclaredIdentifierError : public ParseError
{
public:
    using ParseError::ParseError;
};

/// Contraction or symmetry requested on slots with the wrong variance.
class SlotError : public Error
{
public:
    using Error::Error;
};

class ConstructionError : public Error
{
public:
    using Error::Error;
};

class DimensionError : public Error
{
public:
    using Error::Error;
};

class ShapeError : public Error
{
public:
    using Error::Error;
};

class RangeError : public Error
{
public:
    using Error::Error;
};

class NotTotallyGeodesicError : public Error
{
public:
    using Error::Error;
};

/// Numerical integration produced a non-finite state.
class DivergenceError : public Error
{
public:
    DivergenceError(std::string const& what, double last_valid_time)
        : Error(what), m_last_valid_time(last_valid_time)
    {}

    double last_valid_time() const noexcept { return m_last_valid_time; }

private:
    double m_last_valid_time;
};

} // namespace projconn
#endif // PROJCONN_ERROR_HPP_
