#pragma once

#include "stabglue/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace stabglue {

/// Element a + b*sqrt(3) of the real quadratic field Q(sqrt 3).
/// Components are stored reduced (cpp_rational normalizes); equality is
/// component-wise.
struct QuadRat {
    Rational a;
    Rational b;

    QuadRat() : a(0), b(0) {}
    QuadRat(int x) : a(x), b(0) {}  // NOLINT: implicit by design, Eigen needs Scalar(int)
    QuadRat(long x) : a(x), b(0) {}
    explicit QuadRat(Rational x) : a(std::move(x)), b(0) {}
    QuadRat(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    static QuadRat sqrt3() { return {Rational(0), Rational(1)}; }

    bool isZero() const { return a == 0 && b == 0; }
    bool isRational() const { return b == 0; }

    friend QuadRat operator+(const QuadRat& x, const QuadRat& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadRat operator-(const QuadRat& x, const QuadRat& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadRat operator*(const QuadRat& x, const QuadRat& y) {
        return {x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    QuadRat operator-() const { return {-a, -b}; }

    /// Field norm a^2 - 3 b^2; zero iff the element is zero (3 is not a square).
    Rational fieldNorm() const { return a * a - 3 * b * b; }

    QuadRat inverse() const {
        if (isZero()) throw std::domain_error("QuadRat: inverse of zero");
        Rational n = fieldNorm();
        return {a / n, -b / n};
    }
    friend QuadRat operator/(const QuadRat& x, const QuadRat& y) { return x * y.inverse(); }

    QuadRat& operator+=(const QuadRat& o) { a += o.a; b += o.b; return *this; }
    QuadRat& operator-=(const QuadRat& o) { a -= o.a; b -= o.b; return *this; }
    QuadRat& operator*=(const QuadRat& o) { *this = *this * o; return *this; }
    QuadRat& operator/=(const QuadRat& o) { *this = *this / o; return *this; }

    friend bool operator==(const QuadRat& x, const QuadRat& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadRat& x, const QuadRat& y) { return !(x == y); }
};

/// Exact sign of a + b*sqrt(3).
inline int sign(const QuadRat& q) {
    int sa = sign(q.a), sb = sign(q.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 3 b^2.
    int cmp = sign(Rational(q.a * q.a - 3 * q.b * q.b));
    return cmp == 0 ? 0 : cmp * sa;
}

inline bool operator<(const QuadRat& x, const QuadRat& y) { return sign(x - y) < 0; }
inline bool operator>(const QuadRat& x, const QuadRat& y) { return sign(x - y) > 0; }
inline bool operator<=(const QuadRat& x, const QuadRat& y) { return sign(x - y) <= 0; }
inline bool operator>=(const QuadRat& x, const QuadRat& y) { return sign(x - y) >= 0; }

/// Fixture serialization "p/q+r/s*sqrt3".
inline std::string to_string(const QuadRat& q) {
    return to_string(q.a) + "+" + to_string(q.b) + "*sqrt3";
}

inline std::ostream& operator<<(std::ostream& os, const QuadRat& q) { return os << to_string(q); }

inline QuadRat quadrat_from_string(const std::string& s) {
    auto star = s.find("*sqrt3");
    if (star == std::string::npos) return QuadRat(rational_from_string(s));
    // Split at the '+' (or '-') that separates the two terms: it is the last
    // sign character before the start of the sqrt3 coefficient.
    auto plus = s.rfind('+', star);
    auto minus = s.rfind('-', star);
    size_t cut = std::string::npos;
    for (size_t c : {plus, minus})
        if (c != std::string::npos && c > 0 && (cut == std::string::npos || c > cut)) cut = c;
    if (cut == std::string::npos)
        throw std::invalid_argument("bad QuadRat literal '" + s + "'");
    Rational a = rational_from_string(s.substr(0, cut));
    std::string btxt = s.substr(cut, star - cut);
    if (!btxt.empty() && btxt.front() == '+') btxt.erase(0, 1);
    Rational b = rational_from_string(btxt);
    return {a, b};
}

}  // namespace stabglue
