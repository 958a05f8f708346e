#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace stabglue {

/// Prime field GF(P), P a small prime. Used by the brute-force oracles.
template <int P>
struct GF {
    static_assert(P >= 2, "prime required");
    std::int32_t v = 0;

    GF() = default;
    GF(int x) : v(static_cast<std::int32_t>(((x % P) + P) % P)) {}  // NOLINT

    friend GF operator+(GF x, GF y) { return GF(x.v + y.v); }
    friend GF operator-(GF x, GF y) { return GF(x.v - y.v); }
    friend GF operator*(GF x, GF y) { return GF(x.v * y.v); }
    GF operator-() const { return GF(-v); }

    GF inverse() const {
        if (v == 0) throw std::domain_error("GF: inverse of zero");
        // Fermat: v^(P-2)
        std::int64_t r = 1, b = v, e = P - 2;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return GF(static_cast<int>(r));
    }
    friend GF operator/(GF x, GF y) { return x * y.inverse(); }

    GF& operator+=(GF o) { *this = *this + o; return *this; }
    GF& operator-=(GF o) { *this = *this - o; return *this; }
    GF& operator*=(GF o) { *this = *this * o; return *this; }
    GF& operator/=(GF o) { *this = *this / o; return *this; }

    bool isZero() const { return v == 0; }
    friend bool operator==(GF x, GF y) { return x.v == y.v; }
    friend bool operator!=(GF x, GF y) { return x.v != y.v; }
};

template <int P>
inline std::string to_string(GF<P> x) {
    return std::to_string(x.v);
}

template <int P>
inline std::ostream& operator<<(std::ostream& os, GF<P> x) {
    return os << x.v;
}

using GF2 = GF<2>;
using GF3 = GF<3>;

}  // namespace stabglue
