#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace secnet {

// Exact arbitrary-precision rational. mpq_class keeps values in canonical
// form (gcd(|num|,den)=1, den>=1) as long as they are produced by its own
// operators or by the helpers below. Arithmetic never rounds or overflows.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "a" or "a/b" with optional sign. Whitespace is not accepted.
inline Rational rat_parse(const std::string& s)
{
    Rational r;
    if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    r.canonicalize();
    return r;
}

// Reduced textual form: "a/b", or plain "a" when the value is an integer.
inline std::string rat_str(const Rational& r)
{
    return r.get_str();
}

inline bool rat_is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

// Internal consistency failure (e.g. a solver certificate that does not
// check out). Distinct from bad input so the CLI can map it to exit 3.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace secnet
