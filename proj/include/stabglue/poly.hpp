#pragma once

#include "stabglue/linalg.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace stabglue {

/// Dense univariate polynomial over a field, coefficients low-to-high,
/// normalized (no trailing zeros). Zero polynomial = empty coefficient list.
template <typename F>
struct Poly {
    std::vector<F> c;

    Poly() = default;
    explicit Poly(std::vector<F> coeffs) : c(std::move(coeffs)) { normalize(); }
    static Poly constant(const F& x) { return Poly(std::vector<F>{x}); }
    static Poly t() { return Poly(std::vector<F>{F(0), F(1)}); }
    static Poly linear(const F& root) { return Poly(std::vector<F>{-root, F(1)}); }  // t - root

    void normalize() {
        while (!c.empty() && isZeroScalar(c.back())) c.pop_back();
    }
    bool isZero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const F& lead() const { return c.back(); }

    F eval(const F& x) const {
        F r(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> r(std::max(a.c.size(), b.c.size()), F(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<F> r(std::max(a.c.size(), b.c.size()), F(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.isZero() || b.isZero()) return Poly();
        std::vector<F> r(a.c.size() + b.c.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly monic() const {
        if (isZero()) return *this;
        Poly r = *this;
        F inv = F(1) / lead();
        for (auto& x : r.c) x = x * inv;
        return r;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<F> r(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) {
            F k(0);
            for (std::size_t j = 0; j < i; ++j) k = k + F(1);
            r[i - 1] = c[i] * k;
        }
        return Poly(std::move(r));
    }

    Poly pow(int e) const {
        Poly r = constant(F(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }
};

template <typename F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.isZero()) throw std::domain_error("poly division by zero");
    Poly<F> r = a, q;
    q.c.assign(a.c.size(), F(0));
    F leadInv = F(1) / b.lead();
    while (!r.isZero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        F f = r.lead() * leadInv;
        q.c[shift] = f;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[i + shift] = r.c[i + shift] - f * b.c[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

template <typename F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).first;
}
template <typename F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).second;
}

template <typename F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.isZero()) {
        Poly<F> r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

/// Evaluate p at a square matrix.
template <typename F>
Mat<F> evalAt(const Poly<F>& p, const Mat<F>& m) {
    Mat<F> r = Mat<F>::Zero(m.rows(), m.cols());
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        r = r * m;
        for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, i) += *it;
    }
    return r;
}

/// Minimal polynomial via Krylov chains (lcm over unit start vectors).
template <typename F>
Poly<F> minimalPolynomial(const Mat<F>& m) {
    const Eigen::Index n = m.rows();
    Poly<F> mp = Poly<F>::constant(F(1));
    for (Eigen::Index s = 0; s < n; ++s) {
        Vec<F> v = Vec<F>::Zero(n);
        v(s) = F(1);
        // annihilator of v relative to current mp
        Vec<F> w = v;
        for (int i = 0; i < mp.degree(); ++i) {
            // w = mp(m) v computed below instead
        }
        w = evalAt(mp, m) * v;
        if (isZeroMat(w)) continue;
        Mat<F> kry(n, n + 1);
        Vec<F> cur = w;
        Eigen::Index k = 0;
        for (; k <= n; ++k) {
            kry.col(k) = cur;
            Mat<F> sub = kry.leftCols(k + 1);
            if (rank<F>(sub) <= k) break;  // dependence appeared at column k
            cur = m * cur;
        }
        // solve kry[:, :k] * a = -kry[:, k]  => annihilator t^k + a_{k-1} t^{k-1} + ...
        Mat<F> lhs = kry.leftCols(k);
        auto sol = solve<F>(lhs, Vec<F>(-kry.col(k)));
        if (!sol) throw std::logic_error("minimalPolynomial: inconsistent Krylov system");
        std::vector<F> ann(static_cast<std::size_t>(k) + 1);
        for (Eigen::Index i = 0; i < k; ++i) ann[static_cast<std::size_t>(i)] = (*sol)(i);
        ann[static_cast<std::size_t>(k)] = F(1);
        mp = mp * Poly<F>(std::move(ann));
        if (mp.degree() >= n) break;
    }
    return mp.monic();
}

/// Squarefree part. Char 0 uses gcd with the derivative; small prime fields
/// recurse through p-th powers where the derivative degenerates.
template <typename F>
Poly<F> squarefreePart(const Poly<F>& p, int charP = 0) {
    if (p.degree() <= 1) return p.monic();
    Poly<F> d = p.derivative();
    if (d.isZero()) {
        if (charP <= 0) throw std::logic_error("squarefree: zero derivative in char 0");
        // p(t) = q(t^charP); over GF(p) coefficients are fixed by Frobenius
        std::vector<F> q;
        for (std::size_t i = 0; i < p.c.size(); i += static_cast<std::size_t>(charP))
            q.push_back(p.c[i]);
        return squarefreePart(Poly<F>(std::move(q)), charP);
    }
    Poly<F> g = gcd(p, d);
    Poly<F> sf = (p / g).monic();
    if (g.degree() > 0) {
        Poly<F> rest = squarefreePart(g, charP);
        Poly<F> gg = gcd(sf, rest);
        sf = sf * (rest / gg);
    }
    return sf.monic();
}

template <typename F>
std::string to_string(const Poly<F>& p) {
    if (p.isZero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (isZeroScalar(p.c[static_cast<std::size_t>(i)])) continue;
        if (!s.empty()) s += " + ";
        s += FieldTraits<F>::toString(p.c[static_cast<std::size_t>(i)]);
        if (i >= 1) s += "*t";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

}  // namespace stabglue
