#pragma once

#include "stabglue/exact_complex.hpp"
#include "stabglue/gf.hpp"
#include "stabglue/quadrat.hpp"

#include <Eigen/Core>

#include <random>
#include <string>

namespace Eigen {

template <>
struct NumTraits<stabglue::QuadRat> {
    using Real = stabglue::QuadRat;
    using NonInteger = stabglue::QuadRat;
    using Literal = stabglue::QuadRat;
    using Nested = stabglue::QuadRat;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 30,
        MulCost = 60
    };
    static inline Real epsilon() { return stabglue::QuadRat(0); }
    static inline Real dummy_precision() { return stabglue::QuadRat(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<stabglue::ExactComplex> {
    using Real = stabglue::ExactComplex;  // treated as an opaque field, not as C-complex
    using NonInteger = stabglue::ExactComplex;
    using Literal = stabglue::ExactComplex;
    using Nested = stabglue::ExactComplex;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 16,
        AddCost = 60,
        MulCost = 120
    };
    static inline Real epsilon() { return stabglue::ExactComplex(0); }
    static inline Real dummy_precision() { return stabglue::ExactComplex(0); }
    static inline int digits10() { return 0; }
};

template <int P>
struct NumTraits<stabglue::GF<P>> {
    using Real = stabglue::GF<P>;
    using NonInteger = stabglue::GF<P>;
    using Literal = stabglue::GF<P>;
    using Nested = stabglue::GF<P>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 2
    };
    static inline Real epsilon() { return stabglue::GF<P>(0); }
    static inline Real dummy_precision() { return stabglue::GF<P>(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace stabglue {

template <typename F>
struct FieldEnumeration;  // defined for finite fields only

template <int P>
struct FieldEnumeration<GF<P>> {
    static constexpr unsigned long long order = P;
    static GF<P> element(unsigned long long i) { return GF<P>(static_cast<int>(i)); }
};

template <typename F>
struct FieldTraits;

template <>
struct FieldTraits<QuadRat> {
    static constexpr const char* name = "qsqrt3";
    static constexpr int characteristic = 0;
    static std::string toString(const QuadRat& x) { return to_string(x); }
    static QuadRat fromString(const std::string& s) { return quadrat_from_string(s); }
    template <typename Rng>
    static QuadRat random(Rng& rng) {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3), pickB(0, 2);
        Rational a(num(rng), den(rng));
        Rational b = pickB(rng) == 0 ? Rational(num(rng), den(rng)) : Rational(0);
        return {a, b};
    }
};

template <int P>
struct FieldTraits<GF<P>> {
    static constexpr const char* name = P == 2 ? "gf2" : (P == 3 ? "gf3" : "gfp");
    static constexpr int characteristic = P;
    static std::string toString(GF<P> x) { return to_string(x); }
    static GF<P> fromString(const std::string& s) { return GF<P>(std::stoi(s)); }
    template <typename Rng>
    static GF<P> random(Rng& rng) {
        std::uniform_int_distribution<int> d(0, P - 1);
        return GF<P>(d(rng));
    }
};

template <>
struct FieldTraits<ExactComplex> {
    static constexpr const char* name = "qsqrt3_i";
    static constexpr int characteristic = 0;
    static std::string toString(const ExactComplex& x) {
        return to_string(x.re) + ";" + to_string(x.im);
    }
    static ExactComplex fromString(const std::string& s) {
        auto semi = s.find(';');
        return {quadrat_from_string(s.substr(0, semi)), quadrat_from_string(s.substr(semi + 1))};
    }
    template <typename Rng>
    static ExactComplex random(Rng& rng) {
        return {FieldTraits<QuadRat>::random(rng), FieldTraits<QuadRat>::random(rng)};
    }
};

}  // namespace stabglue
