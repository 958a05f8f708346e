#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stabglue/field_traits.hpp"
#include "stabglue/phase.hpp"

#include <random>

using namespace stabglue;

namespace {
QuadRat qr(int a, int b, int an = 1, int bn = 1) {
    return {Rational(a, an), Rational(b, bn)};
}
}  // namespace

TEST_CASE("rational round trip and reduction") {
    Rational r(6, 4);
    CHECK(to_string(r) == "3/2");
    CHECK(rational_from_string("-7/3") == Rational(-7, 3));
    CHECK(rational_from_string("5") == Rational(5));
}

TEST_CASE("quadrat field axioms on randomized inputs") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        QuadRat x = FieldTraits<QuadRat>::random(rng);
        QuadRat y = FieldTraits<QuadRat>::random(rng);
        QuadRat z = FieldTraits<QuadRat>::random(rng);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        if (!x.isZero()) {
            CHECK(x * x.inverse() == QuadRat(1));
        }
    }
    CHECK_THROWS_AS(QuadRat(0).inverse(), std::domain_error);
}

TEST_CASE("quadrat sign handles mixed-sign components") {
    CHECK(sign(qr(2, -1)) > 0);   // 2 - sqrt3 > 0
    CHECK(sign(qr(1, -1)) < 0);   // 1 - sqrt3 < 0
    CHECK(sign(qr(-1, 1)) > 0);   // sqrt3 - 1 > 0
    CHECK(sign(qr(0, 0)) == 0);
    CHECK(qr(1, 1) > qr(2, 0));   // 1 + sqrt3 > 2
}

TEST_CASE("quadrat string round trip") {
    QuadRat q = qr(-3, 5, 2, 7);
    CHECK(quadrat_from_string(to_string(q)) == q);
    CHECK(quadrat_from_string("1/2+0/1*sqrt3") == QuadRat(Rational(1, 2)));
}

TEST_CASE("exact complex field axioms on randomized inputs") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        ExactComplex x = FieldTraits<ExactComplex>::random(rng);
        ExactComplex y = FieldTraits<ExactComplex>::random(rng);
        ExactComplex z = FieldTraits<ExactComplex>::random(rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.isZero()) CHECK(x * x.inverse() == ExactComplex(1));
        CHECK((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("unitFromTheta analytically forced values") {
    // theta = 0 -> 1
    CHECK(unitFromTheta(Rational(0)) == ExactComplex(1));
    // theta = 1/2 -> i
    CHECK(unitFromTheta(Rational(1, 2)) == ExactComplex::i());
    // theta = 2/3 -> -1/2 + (sqrt3/2) i
    ExactComplex w = unitFromTheta(Rational(2, 3));
    CHECK(w.re == QuadRat(Rational(-1, 2)));
    CHECK(w.im == QuadRat(Rational(0), Rational(1, 2)));
    // modulus^2 = 1 on the whole grid
    for (int k = -12; k <= 12; ++k)
        CHECK(unitFromTheta(Sixths(k)).normSq() == QuadRat(1));
    CHECK_THROWS_AS(unitFromTheta(Rational(1, 4)), std::invalid_argument);
}

TEST_CASE("unit multiplicativity: u(t1) u(t2) = u(t1+t2)") {
    for (int a = -7; a <= 7; ++a)
        for (int b = -7; b <= 7; ++b)
            CHECK(unitFromTheta(Sixths(a)) * unitFromTheta(Sixths(b)) ==
                  unitFromTheta(Sixths(a + b)));
}

TEST_CASE("phaseOf trivial branches") {
    Phase p1 = phaseOf(ExactComplex(-1));
    CHECK(phaseAsRational(p1) == Rational(1));
    Phase pi = phaseOf(ExactComplex::i());
    CHECK(phaseAsRational(pi) == Rational(1, 2));
    Phase pz = phaseOf(ExactComplex(1));  // positive reals sit at phase 0
    CHECK(phaseAsRational(pz) == Rational(0));
    CHECK_THROWS_AS(phaseOf(ExactComplex(0)), std::domain_error);
}

TEST_CASE("phaseOf exp(2 pi i/3) equals phaseShift(1, -1/3)") {
    ExactComplex z{QuadRat(Rational(-1, 2)), QuadRat(Rational(0), Rational(1, 2))};
    Phase p = phaseOf(z);
    Phase q = phaseShift(Phase::integer(1), Rational(-1, 3));
    CHECK(phaseCmp(p, q) == Ord::EQ);
    CHECK(phaseAsRational(p) == Rational(2, 3));
}

TEST_CASE("phase scale invariance and order") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        ExactComplex z = FieldTraits<ExactComplex>::random(rng);
        if (z.isZero()) continue;
        std::uniform_int_distribution<int> d(1, 9);
        Rational lambda(d(rng), d(rng));
        CHECK(phaseCmp(phaseOf(z), phaseOf(scale(lambda, z))) == Ord::EQ);
    }
    Phase pi = phaseOf(ExactComplex::i());
    Phase p1 = phaseOf(ExactComplex(-1));
    CHECK(phaseCmp(pi, p1) == Ord::LT);  // 1/2 < 1
    CHECK(phaseCmp(p1, p1) == Ord::EQ);
    ExactComplex w{QuadRat(Rational(-1, 2)), QuadRat(Rational(0), Rational(1, 2))};
    CHECK(phaseCmp(phaseOf(w), pi) == Ord::GT);  // 2/3 > 1/2
}

TEST_CASE("phaseCmp is a total order: antisymmetric and transitive on grid") {
    std::vector<Phase> ps;
    for (int lvl = -2; lvl <= 2; ++lvl)
        for (int j = 1; j <= 6; ++j) ps.push_back(phaseShift(Phase::integer(lvl), Sixths(j)));
    for (const auto& a : ps)
        for (const auto& b : ps) {
            Ord ab = phaseCmp(a, b), ba = phaseCmp(b, a);
            CHECK(static_cast<int>(ab) == -static_cast<int>(ba));
            for (const auto& c : ps) {
                if (ab == Ord::LT && phaseCmp(b, c) == Ord::LT)
                    CHECK(phaseCmp(a, c) == Ord::LT);
            }
        }
}

TEST_CASE("phaseShift arithmetic and additivity") {
    Phase p = phaseShift(Phase::integer(1), Rational(2, 3));
    CHECK(phaseAsRational(p) == Rational(5, 3));
    CHECK(p.level == 1);
    Phase q = phaseOf(ExactComplex{QuadRat(1), QuadRat(2)});
    CHECK(phaseCmp(phaseShift(q, Rational(0)), q) == Ord::EQ);
    Phase a = phaseShift(phaseShift(q, Rational(1, 3)), Rational(1, 3));
    Phase b = phaseShift(q, Rational(2, 3));
    CHECK(phaseCmp(a, b) == Ord::EQ);
    // negative shifts renormalize the level
    Phase c = phaseShift(Phase::integer(0), Rational(-1, 6));
    CHECK(phaseAsRational(c) == Rational(-1, 6));
}
