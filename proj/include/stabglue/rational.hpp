#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stabglue {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const Rational& r) { return r.sign(); }

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Canonical "p/q" rendering, also used in JSON fixtures.
inline std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p", "p/q", optional sign, no whitespace.
inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw std::invalid_argument("bad rational literal '" + s + "': " + e.what());
    }
}

}  // namespace stabglue
