#pragma once

#include "stabglue/pencil.hpp"
#include "stabglue/quiver.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace stabglue {

/// Label of an indecomposable representation.
///
/// Dictionary (fixed here once and used everywhere downstream):
///   Vect:  K                      dim 1
///   A2:    S1 (1,0), S2 (0,1), P12 (1,1)
///   K2:    Preproj(n)  dim (n, n+1)   [Preproj(0) = S2, Preproj(1) = P(1)]
///          Preinj(n)   dim (n+1, n)   [Preinj(0) = S1, Preinj(1) = I(2)]
///          Regular(x, l) dim (l deg x, l deg x) for a point x of P^1: a monic
///          irreducible polynomial or infinity. Under the tilting equivalence
///          with coh P^1 the line-bundle family lands in the preprojective/
///          preinjective classes and torsion sheaves in the regular classes.
template <typename F>
struct IndecLabel {
    enum class Kind { VectK, S1, S2, P12, Preproj, Preinj, Regular };
    Quiver quiver = Quiver::Vect;
    Kind kind = Kind::VectK;
    Eigen::Index n = 0;        // Preproj/Preinj index
    bool atInfinity = false;   // Regular at [1:0]
    Poly<F> point;             // Regular at a finite point (monic)
    Eigen::Index length = 0;   // Regular length

    DimVec dimVector() const {
        switch (kind) {
            case Kind::VectK: return {1, 0};
            case Kind::S1: return {1, 0};
            case Kind::S2: return {0, 1};
            case Kind::P12: return {1, 1};
            case Kind::Preproj: return {static_cast<long>(n), static_cast<long>(n + 1)};
            case Kind::Preinj: return {static_cast<long>(n + 1), static_cast<long>(n)};
            default: {
                long d = static_cast<long>(length) *
                         (atInfinity ? 1 : static_cast<long>(point.degree()));
                return {d, d};
            }
        }
    }

    std::string key() const {
        switch (kind) {
            case Kind::VectK: return "K";
            case Kind::S1: return "S1";
            case Kind::S2: return "S2";
            case Kind::P12: return "P12";
            case Kind::Preproj: return "PP" + std::to_string(n);
            case Kind::Preinj: return "PI" + std::to_string(n);
            default:
                return "R[" + (atInfinity ? std::string("inf") : to_string(point)) + "]^" +
                       std::to_string(length);
        }
    }

    friend bool operator==(const IndecLabel& x, const IndecLabel& y) {
        return x.quiver == y.quiver && x.key() == y.key();
    }
    friend bool operator<(const IndecLabel& x, const IndecLabel& y) { return x.key() < y.key(); }
};

template <typename F>
IndecLabel<F> labelVectK() {
    return {};
}
template <typename F>
IndecLabel<F> labelS1(Quiver q = Quiver::A2) {
    IndecLabel<F> l;
    l.quiver = q;
    l.kind = q == Quiver::K2 ? IndecLabel<F>::Kind::Preinj : IndecLabel<F>::Kind::S1;
    l.n = 0;
    return l;
}
template <typename F>
IndecLabel<F> labelS2(Quiver q = Quiver::A2) {
    IndecLabel<F> l;
    l.quiver = q;
    l.kind = q == Quiver::K2 ? IndecLabel<F>::Kind::Preproj : IndecLabel<F>::Kind::S2;
    l.n = 0;
    return l;
}
template <typename F>
IndecLabel<F> labelP12() {
    IndecLabel<F> l;
    l.quiver = Quiver::A2;
    l.kind = IndecLabel<F>::Kind::P12;
    return l;
}
template <typename F>
IndecLabel<F> labelPreproj(Eigen::Index n) {
    IndecLabel<F> l;
    l.quiver = Quiver::K2;
    l.kind = IndecLabel<F>::Kind::Preproj;
    l.n = n;
    return l;
}
template <typename F>
IndecLabel<F> labelPreinj(Eigen::Index n) {
    IndecLabel<F> l;
    l.quiver = Quiver::K2;
    l.kind = IndecLabel<F>::Kind::Preinj;
    l.n = n;
    return l;
}
template <typename F>
IndecLabel<F> labelRegular(const Poly<F>& point, Eigen::Index len) {
    IndecLabel<F> l;
    l.quiver = Quiver::K2;
    l.kind = IndecLabel<F>::Kind::Regular;
    l.point = point.monic();
    l.length = len;
    return l;
}
template <typename F>
IndecLabel<F> labelRegularInf(Eigen::Index len) {
    IndecLabel<F> l;
    l.quiver = Quiver::K2;
    l.kind = IndecLabel<F>::Kind::Regular;
    l.atInfinity = true;
    l.length = len;
    return l;
}

/// Canonical representation realizing a label. The K2 regular/Preproj/Preinj
/// shapes are exactly the pencil canonical blocks, so decompose(makeRep(l))
/// returns l on the nose.
template <typename F>
Rep<F> makeRep(const IndecLabel<F>& l) {
    using K = typename IndecLabel<F>::Kind;
    switch (l.kind) {
        case K::VectK: return simpleRep<F>(Quiver::Vect, 1);
        case K::S1: return simpleRep<F>(l.quiver, 1);
        case K::S2: return simpleRep<F>(l.quiver, 2);
        case K::P12: return projectiveRep<F>(Quiver::A2, 1);
        case K::Preproj: {
            // pencil L_eta(n)^T: A = [I;0], B = [0;I], shape (n+1) x n
            PencilBlock<F> blk{PencilBlockKind::LEtaT, l.n, F(0), Poly<F>()};
            auto [a, b] = blk.pencilPair();
            return Rep<F>(Quiver::K2, l.n, l.n + 1, {a, b});
        }
        case K::Preinj: {
            PencilBlock<F> blk{PencilBlockKind::LEps, l.n, F(0), Poly<F>()};
            auto [a, b] = blk.pencilPair();
            return Rep<F>(Quiver::K2, l.n + 1, l.n, {a, b});
        }
        default: {
            PencilBlock<F> blk;
            if (l.atInfinity) {
                blk = {PencilBlockKind::NilpotentInf, l.length, F(0), Poly<F>()};
            } else if (l.point.degree() == 1) {
                blk = {PencilBlockKind::Jordan, l.length, -l.point.c[0], Poly<F>()};
            } else {
                blk = {PencilBlockKind::HigherDegree, l.length, F(0), l.point};
            }
            auto [a, b] = blk.pencilPair();
            return Rep<F>(Quiver::K2, a.cols(), a.rows(), {a, b});
        }
    }
}

/// Krull-Schmidt decomposition with an explicit mutually inverse pair of
/// isomorphisms between the input and the canonical model (the direct sum of
/// makeRep of the labels in key order).
template <typename F>
struct Decomposition {
    std::vector<std::pair<IndecLabel<F>, Eigen::Index>> factors;  // label -> multiplicity
    Rep<F> canonical;
    RepMap<F> toCanonical;    // input -> canonical
    RepMap<F> fromCanonical;  // canonical -> input

    Eigen::Index totalMultiplicity() const {
        Eigen::Index t = 0;
        for (const auto& [l, m] : factors) t += m;
        return t;
    }
};

namespace detail {

template <typename F>
Decomposition<F> assembleDecomposition(const Rep<F>& m,
                                       std::vector<std::pair<IndecLabel<F>, Mat<F>>> pieces,
                                       const Mat<F>& f1, const Mat<F>& f2) {
    // pieces carry per-block labels in the order matching the canonical rep
    Decomposition<F> d;
    std::map<std::string, std::pair<IndecLabel<F>, Eigen::Index>> agg;
    for (auto& [l, unused] : pieces) {
        auto it = agg.find(l.key());
        if (it == agg.end())
            agg.emplace(l.key(), std::make_pair(l, 1));
        else
            ++it->second.second;
    }
    for (auto& [k, v] : agg) d.factors.push_back(v);
    Rep<F> canon = zeroRep<F>(m.q);
    for (const auto& [l, unused] : pieces) canon = directSum(canon, makeRep(l));
    d.canonical = canon;
    d.toCanonical = RepMap<F>(m, canon, f1, f2);
    d.fromCanonical = RepMap<F>(canon, m, inverse(f1),
                                m.q == Quiver::Vect ? Mat<F>(Mat<F>::Zero(0, 0)) : inverse(f2));
    return d;
}

}  // namespace detail

template <typename F>
Decomposition<F> decomposeRep(const Rep<F>& m) {
    switch (m.q) {
        case Quiver::Vect: {
            std::vector<std::pair<IndecLabel<F>, Mat<F>>> pieces;
            for (Eigen::Index i = 0; i < m.dims[0]; ++i)
                pieces.emplace_back(labelVectK<F>(), Mat<F>());
            return detail::assembleDecomposition(m, std::move(pieces),
                                                 Mat<F>(Mat<F>::Identity(m.dims[0], m.dims[0])),
                                                 Mat<F>(Mat<F>::Zero(0, 0)));
        }
        case Quiver::A2: {
            // rank normal form of the arrow: P phi Q0 = [[I,0],[0,0]]
            const Mat<F>& phi = m.arrows[0];
            Echelon<F> e = rowReduce(phi);
            const Eigen::Index r = e.rank(), d1 = m.dims[0], d2 = m.dims[1];
            // column permutation bringing pivots first, then clearing the rest
            Mat<F> perm = Mat<F>::Zero(d1, d1);
            std::vector<bool> isPiv(static_cast<std::size_t>(d1), false);
            for (Eigen::Index j = 0; j < r; ++j) {
                perm(e.pivotCols[static_cast<std::size_t>(j)], j) = F(1);
                isPiv[static_cast<std::size_t>(e.pivotCols[static_cast<std::size_t>(j)])] = true;
            }
            Eigen::Index col = r;
            for (Eigen::Index j = 0; j < d1; ++j)
                if (!isPiv[static_cast<std::size_t>(j)]) perm(j, col++) = F(1);
            Mat<F> rp = e.reduced * perm;  // [[I_r, R'],[0,0]]
            Mat<F> clear = Mat<F>::Identity(d1, d1);
            clear.block(0, r, r, d1 - r) = -rp.block(0, r, r, d1 - r);
            Mat<F> Q0 = perm * clear;
            // now e.transform * phi * Q0 = [[I_r,0],[0,0]]
            // canonical order: P12^r first, then S1^(d1-r), then S2^(d2-r):
            // vertex1 coords (P12 | S1) already match; vertex2 coords (P12 | S2) match.
            std::vector<std::pair<IndecLabel<F>, Mat<F>>> pieces;
            for (Eigen::Index i = 0; i < r; ++i) pieces.emplace_back(labelP12<F>(), Mat<F>());
            for (Eigen::Index i = 0; i < d1 - r; ++i) pieces.emplace_back(labelS1<F>(), Mat<F>());
            for (Eigen::Index i = 0; i < d2 - r; ++i) pieces.emplace_back(labelS2<F>(), Mat<F>());
            std::sort(pieces.begin(), pieces.end(),
                      [](const auto& x, const auto& y) { return x.first.key() < y.first.key(); });
            // canonical rep built in sorted order needs a matching coordinate
            // permutation; compute it by tracking where each piece's coords go.
            // Pieces in natural order: P12 x r (v1 0..r-1, v2 0..r-1),
            // S1 x (d1-r) (v1 r..), S2 x (d2-r) (v2 r..).
            // Sorted order is P12 < S1 < S2 lexicographically ("P12"<"S1"<"S2").
            Mat<F> f1 = inverse(Q0);
            Mat<F> f2 = e.transform;
            return detail::assembleDecomposition(m, std::move(pieces), f1, f2);
        }
        default: {
            PencilForm<F> form = pencilDecompose<F>(m.arrows[0], m.arrows[1]);
            std::vector<std::pair<IndecLabel<F>, Mat<F>>> pieces;
            for (const auto& blk : form.blocks) {
                switch (blk.kind) {
                    case PencilBlockKind::LEps:
                        pieces.emplace_back(labelPreinj<F>(blk.size), Mat<F>());
                        break;
                    case PencilBlockKind::LEtaT:
                        pieces.emplace_back(labelPreproj<F>(blk.size), Mat<F>());
                        break;
                    case PencilBlockKind::Jordan:
                        pieces.emplace_back(
                            labelRegular<F>(Poly<F>::linear(blk.lambda), blk.size), Mat<F>());
                        break;
                    case PencilBlockKind::HigherDegree:
                        pieces.emplace_back(labelRegular<F>(blk.point, blk.size), Mat<F>());
                        break;
                    default:
                        pieces.emplace_back(labelRegularInf<F>(blk.size), Mat<F>());
                        break;
                }
            }
            // pencil canonical block order equals label key order except that
            // the block sort key and the label key sort the same way by
            // construction (0L < 1R < 2T matches PI* < R* < PP*)? They do not:
            // label keys sort PI, PP, R alphabetically. Reorder explicitly.
            // iso: f1 = Q^{-1}, f2 = P maps m -> pencil-canonical rep.
            Mat<F> f1 = inverse(form.Q);
            Mat<F> f2 = form.P;
            // permute summands into label key order
            std::vector<std::size_t> order(pieces.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                return pieces[x].first.key() < pieces[y].first.key();
            });
            std::vector<DimVec> dims;
            for (const auto& [l, u] : pieces) dims.push_back(l.dimVector());
            std::vector<Eigen::Index> off1(pieces.size() + 1, 0), off2(pieces.size() + 1, 0);
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                off1[i + 1] = off1[i] + dims[i][0];
                off2[i + 1] = off2[i] + dims[i][1];
            }
            Mat<F> perm1 = Mat<F>::Zero(m.dims[0], m.dims[0]);
            Mat<F> perm2 = Mat<F>::Zero(m.dims[1], m.dims[1]);
            Eigen::Index c1 = 0, c2 = 0;
            for (auto oi : order) {
                for (Eigen::Index i = 0; i < dims[oi][0]; ++i) perm1(c1 + i, off1[oi] + i) = F(1);
                for (Eigen::Index i = 0; i < dims[oi][1]; ++i) perm2(c2 + i, off2[oi] + i) = F(1);
                c1 += dims[oi][0];
                c2 += dims[oi][1];
            }
            std::vector<std::pair<IndecLabel<F>, Mat<F>>> sorted;
            for (auto oi : order) sorted.push_back(pieces[oi]);
            return detail::assembleDecomposition(m, std::move(sorted), Mat<F>(perm1 * f1),
                                                 Mat<F>(perm2 * f2));
        }
    }
}

/// Convenience: label multiset as sorted "key^mult" strings (tests, reports).
template <typename F>
std::vector<std::string> decompositionSummary(const Decomposition<F>& d) {
    std::vector<std::string> out;
    for (const auto& [l, mult] : d.factors)
        out.push_back(l.key() + (mult > 1 ? "*" + std::to_string(mult) : ""));
    return out;
}

}  // namespace stabglue
