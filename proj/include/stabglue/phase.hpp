#pragma once

#include "stabglue/exact_complex.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace stabglue {

/// Rational multiple of 1/6, the only rotation angles (in units of pi) that
/// stay inside Q(sqrt3)[i]. Stored as numerator over 6.
struct Sixths {
    std::int64_t num = 0;  // value is num/6

    Sixths() = default;
    explicit Sixths(std::int64_t sixths) : num(sixths) {}

    static Sixths fromRational(const Rational& t) {
        Rational six = t * 6;
        if (denominator(six) != 1)
            throw std::invalid_argument("theta " + stabglue::to_string(t) +
                                        " is not a multiple of 1/6");
        Integer n = numerator(six);
        return Sixths(static_cast<std::int64_t>(n));
    }

    Rational value() const { return Rational(num, 6); }
    bool isZero() const { return num == 0; }
    bool isInteger() const { return num % 6 == 0; }

    friend Sixths operator+(Sixths x, Sixths y) { return Sixths(x.num + y.num); }
    friend Sixths operator-(Sixths x, Sixths y) { return Sixths(x.num - y.num); }
    Sixths operator-() const { return Sixths(-num); }
    friend bool operator==(Sixths x, Sixths y) { return x.num == y.num; }
};

/// exp(i pi k/6), exactly.
inline ExactComplex unitFromTheta(Sixths theta) {
    std::int64_t k = theta.num % 12;
    if (k < 0) k += 12;
    const QuadRat zero(0), one(1), half(Rational(1, 2)),
        hs3(Rational(0), Rational(1, 2));  // sqrt3/2
    switch (k) {
        case 0: return {one, zero};
        case 1: return {hs3, half};
        case 2: return {half, hs3};
        case 3: return {zero, one};
        case 4: return {-half, hs3};
        case 5: return {-hs3, half};
        case 6: return {-one, zero};
        case 7: return {-hs3, -half};
        case 8: return {-half, -hs3};
        case 9: return {zero, -one};
        case 10: return {half, -hs3};
        default: return {hs3, -half};
    }
}

inline ExactComplex unitFromTheta(const Rational& theta) {
    return unitFromTheta(Sixths::fromRational(theta));
}

enum class Ord { LT = -1, EQ = 0, GT = 1 };

/// Exact phase n + arg(dir)/pi with arg(dir) in (0, pi]. dir is well defined
/// up to positive rational scale; comparisons are scale-invariant.
struct Phase {
    std::int64_t level = 0;
    ExactComplex dir{QuadRat(-1), QuadRat(0)};  // default phase 1

    Phase() = default;
    Phase(std::int64_t n, ExactComplex d) : level(n), dir(std::move(d)) {
        if (dir.isZero()) throw std::invalid_argument("Phase: zero direction");
        if (!inClosedUpperSlit(dir)) throw std::invalid_argument("Phase: dir not in (0,pi]");
    }

    /// The integer phase n (dir on the negative real axis represents phi = n+1).
    static Phase integer(std::int64_t n) { return Phase(n - 1, ExactComplex(QuadRat(-1))); }
};

/// Phase of a nonzero charge value, normalized into (0,1] when arg(z) lies in
/// (0,pi]; values in the lower half-plane (and the positive axis) land in
/// (-1,0]. Callers shift levels for other branches.
inline Phase phaseOf(const ExactComplex& z) {
    if (z.isZero()) throw std::domain_error("phaseOf: zero charge");
    if (inClosedUpperSlit(z)) return Phase(0, z);
    return Phase(-1, -z);
}

inline Ord phaseCmp(const Phase& p, const Phase& q) {
    if (p.level != q.level) return p.level < q.level ? Ord::LT : Ord::GT;
    int c = crossSign(p.dir, q.dir);
    if (c == 0) return Ord::EQ;
    return c > 0 ? Ord::LT : Ord::GT;
}

inline bool phaseEq(const Phase& p, const Phase& q) { return phaseCmp(p, q) == Ord::EQ; }
inline bool phaseLt(const Phase& p, const Phase& q) { return phaseCmp(p, q) == Ord::LT; }

/// phi + theta, renormalizing so dir stays in the (0, pi] convention.
inline Phase phaseShift(const Phase& p, Sixths theta) {
    std::int64_t k = theta.num;
    std::int64_t whole = (k >= 0 ? k / 6 : -((-k + 5) / 6));  // floor(k/6)
    std::int64_t frac = k - 6 * whole;                        // in [0,5]
    ExactComplex d = p.dir * unitFromTheta(Sixths(frac));
    if (inClosedUpperSlit(d)) return Phase(p.level + whole, d);
    return Phase(p.level + whole + 1, -d);
}

inline Phase phaseShift(const Phase& p, const Rational& theta) {
    return phaseShift(p, Sixths::fromRational(theta));
}

inline Phase phaseShiftInt(const Phase& p, std::int64_t n) {
    return Phase(p.level + n, p.dir);
}

/// Phase with exact rational value q (a multiple of 1/6).
inline Phase phaseFromSixths(Sixths q) { return phaseShift(Phase::integer(0), q); }

/// Exact rational value when the phase lies on the 1/6 or 1/4 grid.
inline std::optional<Rational> phaseAsRational(const Phase& p) {
    for (std::int64_t j = 1; j <= 6; ++j) {
        if (crossSign(p.dir, unitFromTheta(Sixths(j))) == 0)
            return Rational(p.level) + Rational(j, 6);
    }
    const ExactComplex quarter{QuadRat(1), QuadRat(1)};        // arg = pi/4
    const ExactComplex threeQuarter{QuadRat(-1), QuadRat(1)};  // arg = 3 pi/4
    if (crossSign(p.dir, quarter) == 0) return Rational(p.level) + Rational(1, 4);
    if (crossSign(p.dir, threeQuarter) == 0) return Rational(p.level) + Rational(3, 4);
    return std::nullopt;
}

inline std::string to_string(const Phase& p) {
    if (auto q = phaseAsRational(p)) return stabglue::to_string(*q);
    return "(" + std::to_string(p.level) + " + arg" + to_string(p.dir) + "/pi)";
}

inline std::ostream& operator<<(std::ostream& os, const Phase& p) { return os << to_string(p); }

}  // namespace stabglue
