#pragma once

#include "stabglue/quadrat.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace stabglue {

/// Element of Q(sqrt3)[i]; the value field of all central charges.
struct ExactComplex {
    QuadRat re;
    QuadRat im;

    ExactComplex() = default;
    ExactComplex(int x) : re(x), im(0) {}  // NOLINT: Eigen needs Scalar(int)
    explicit ExactComplex(QuadRat r) : re(std::move(r)), im(0) {}
    ExactComplex(QuadRat r, QuadRat i) : re(std::move(r)), im(std::move(i)) {}

    static ExactComplex i() { return {QuadRat(0), QuadRat(1)}; }

    bool isZero() const { return re.isZero() && im.isZero(); }
    bool isReal() const { return im.isZero(); }

    ExactComplex conj() const { return {re, -im}; }
    QuadRat normSq() const { return re * re + im * im; }

    friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    ExactComplex operator-() const { return {-re, -im}; }

    ExactComplex inverse() const {
        if (isZero()) throw std::domain_error("ExactComplex: inverse of zero");
        QuadRat n = normSq();
        return {re / n, -im / n};
    }
    friend ExactComplex operator/(const ExactComplex& x, const ExactComplex& y) {
        return x * y.inverse();
    }

    ExactComplex& operator+=(const ExactComplex& o) { re += o.re; im += o.im; return *this; }
    ExactComplex& operator-=(const ExactComplex& o) { re -= o.re; im -= o.im; return *this; }
    ExactComplex& operator*=(const ExactComplex& o) { *this = *this * o; return *this; }
    ExactComplex& operator/=(const ExactComplex& o) { *this = *this / o; return *this; }

    friend bool operator==(const ExactComplex& x, const ExactComplex& y) {
        return x.re == y.re && x.im == y.im;
    }
    friend bool operator!=(const ExactComplex& x, const ExactComplex& y) { return !(x == y); }
};

/// arg(z) in (0, pi], i.e. upper half-plane or the negative real axis.
inline bool inClosedUpperSlit(const ExactComplex& z) {
    int si = sign(z.im);
    return si > 0 || (si == 0 && sign(z.re) < 0);
}

/// Scale by a rational (positive scaling preserves phase data). Not an
/// operator: a free operator taking Rational would drag boost's converting
/// constructors into overload resolution of every Eigen product.
inline ExactComplex scale(const Rational& c, const ExactComplex& z) {
    return {QuadRat(c) * z.re, QuadRat(c) * z.im};
}

/// sign of the sine of (arg w - arg v); exact cross product im(conj(v) * w).
inline int crossSign(const ExactComplex& v, const ExactComplex& w) {
    return sign(v.re * w.im - v.im * w.re);
}

inline std::string to_string(const ExactComplex& z) {
    return "(" + to_string(z.re) + ", " + to_string(z.im) + "*i)";
}

inline std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
    return os << to_string(z);
}

}  // namespace stabglue
