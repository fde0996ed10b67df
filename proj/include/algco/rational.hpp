#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace algco {

/// Arbitrary-precision integer / rational scalars.  All exact kernels in this
/// library run over Rational; doubles only appear in the numeric flow module.
using Int      = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Canonical "p/q" (or "p" when q == 1) form used by every JSON surface.
inline std::string rational_to_string(const Rational& r) {
    std::string s = numer(r).str();
    if (denom(r) != 1) s += "/" + denom(r).str();
    return s;
}

/// Accepts "p", "-p", "p/q" with optional sign on p; q must be nonzero.
inline Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        if (q < 0) { p = -p; q = -q; }
        return Rational(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
}

} // namespace algco
