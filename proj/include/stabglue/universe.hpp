#pragma once

#include "stabglue/oracle.hpp"

#include <vector>

namespace stabglue {

/// Indecomposable labels with total dimension at most maxDim.
template <typename F>
std::vector<IndecLabel<F>> labelPool(Quiver q, Eigen::Index maxDim) {
    std::vector<IndecLabel<F>> pool;
    auto fits = [&](const IndecLabel<F>& l) {
        DimVec d = l.dimVector();
        return d[0] + d[1] <= maxDim;
    };
    auto push = [&](IndecLabel<F> l) {
        if (fits(l)) pool.push_back(std::move(l));
    };
    switch (q) {
        case Quiver::Vect: push(labelVectK<F>()); break;
        case Quiver::A2:
            push(labelS1<F>());
            push(labelS2<F>());
            push(labelP12<F>());
            break;
        default: {
            for (Eigen::Index n = 0; 2 * n + 1 <= maxDim; ++n) {
                push(labelPreproj<F>(n));
                push(labelPreinj<F>(n));
            }
            for (Eigen::Index l = 1; 2 * l <= maxDim; ++l) {
                push(labelRegular<F>(Poly<F>::linear(F(0)), l));
                push(labelRegular<F>(Poly<F>::linear(F(1)), l));
                push(labelRegularInf<F>(l));
            }
            break;
        }
    }
    return pool;
}

/// All multisets from the pool with total dimension in [1, maxDim], realized
/// as direct sums of canonical label representations.
template <typename F>
std::vector<Rep<F>> heartUniverse(Quiver q, Eigen::Index maxDim) {
    auto pool = labelPool<F>(q, maxDim);
    std::vector<Rep<F>> out;
    std::vector<Eigen::Index> counts(pool.size(), 0);
    auto dimOf = [&](std::size_t i) {
        DimVec d = pool[i].dimVector();
        return d[0] + d[1];
    };
    std::function<void(std::size_t, Eigen::Index)> rec = [&](std::size_t i, Eigen::Index left) {
        if (i == pool.size()) {
            Rep<F> m = zeroRep<F>(q);
            for (std::size_t j = 0; j < pool.size(); ++j)
                for (Eigen::Index c = 0; c < counts[j]; ++c) m = directSum(m, makeRep(pool[j]));
            if (!m.isZero()) out.push_back(m);
            return;
        }
        for (Eigen::Index c = 0; c * dimOf(i) <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c * dimOf(i));
        }
        counts[i] = 0;
    };
    rec(0, maxDim);
    return out;
}

/// Base-category test universe: heart objects plus small shifts.
template <typename F>
std::vector<DerivedObject<F>> baseUniverse(Quiver q, Eigen::Index maxDim, int shiftLo = 0,
                                           int shiftHi = 0) {
    std::vector<DerivedObject<F>> out;
    for (const auto& m : heartUniverse<F>(q, maxDim))
        for (int s = shiftLo; s <= shiftHi; ++s) out.push_back(fromRep(m, -s));
    return out;
}

/// All linear combinations of a Hom basis over a finite field (the full Hom
/// set when small enough; throws BudgetExceeded otherwise).
template <typename F>
std::vector<RepMap<F>> allHoms(const Rep<F>& src, const Rep<F>& tgt,
                               unsigned long long budget = 100000ULL) {
    auto basis = homBasis(src, tgt);
    constexpr unsigned long long p = FieldEnumeration<F>::order;
    unsigned long long total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        total *= p;
        if (total > budget) throw BudgetExceeded(total);
    }
    std::vector<RepMap<F>> out;
    std::vector<unsigned long long> odo(basis.size(), 0);
    while (true) {
        RepMap<F> m = zeroMap(src, tgt);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            F c = FieldEnumeration<F>::element(odo[i]);
            if (!isZeroScalar(c)) m = add(m, scaleMap(c, basis[i]));
        }
        out.push_back(std::move(m));
        std::size_t t = 0;
        for (; t < odo.size(); ++t) {
            if (++odo[t] < p) break;
            odo[t] = 0;
        }
        if (t == odo.size()) break;
    }
    return out;
}

/// Exhaustive delta-presented glued-heart universe over a finite field:
/// all maps delta : y -> c with dim y + dim c <= maxDim.
template <typename F>
std::vector<oracle::DeltaObject<F>> gluedHeartUniverse(Quiver q, Eigen::Index maxDim,
                                                       unsigned long long budget = 100000ULL) {
    std::vector<oracle::DeltaObject<F>> out;
    auto hearts = heartUniverse<F>(q, maxDim);
    std::vector<Rep<F>> withZero = hearts;
    withZero.push_back(zeroRep<F>(q));
    for (const auto& y : withZero)
        for (const auto& c : withZero) {
            if (y.isZero() && c.isZero()) continue;
            if (y.totalDim() + c.totalDim() > maxDim) continue;
            for (auto& delta : allHoms(y, c, budget)) {
                oracle::DeltaObject<F> d;
                d.map = delta;
                out.push_back(std::move(d));
            }
        }
    return out;
}

}  // namespace stabglue
