#pragma once

#include "stabglue/linalg.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabglue {

/// Vect is the one-vertex quiver (plain vector spaces); it lets the same
/// machinery serve as the coefficient base of the morphism-category model.
enum class Quiver { Vect, A2, K2 };

inline int numVertices(Quiver q) { return q == Quiver::Vect ? 1 : 2; }
inline int numArrows(Quiver q) {
    switch (q) {
        case Quiver::Vect: return 0;
        case Quiver::A2: return 1;
        default: return 2;
    }
}
inline std::string quiverName(Quiver q) {
    switch (q) {
        case Quiver::Vect: return "VECT";
        case Quiver::A2: return "A2";
        default: return "K2";
    }
}

/// Finite-dimensional representation: vertex spaces F^{dims[v]} and one
/// matrix per arrow, each of shape dims[1] x dims[0] (all arrows go 1 -> 2).
template <typename F>
struct Rep {
    Quiver q = Quiver::Vect;
    std::array<Eigen::Index, 2> dims{0, 0};
    std::vector<Mat<F>> arrows;

    Rep() = default;
    Rep(Quiver quiver, Eigen::Index d1, Eigen::Index d2, std::vector<Mat<F>> as)
        : q(quiver), dims{d1, d2}, arrows(std::move(as)) {
        validate();
    }

    void validate() const {
        if (static_cast<int>(arrows.size()) != numArrows(q))
            throw std::invalid_argument("Rep: arrow count does not match quiver");
        if (q == Quiver::Vect && dims[1] != 0)
            throw std::invalid_argument("Rep: Vect representation has one vertex");
        for (const auto& a : arrows)
            if (a.rows() != dims[1] || a.cols() != dims[0])
                throw std::invalid_argument("Rep: arrow shape mismatch");
    }

    Eigen::Index totalDim() const { return dims[0] + dims[1]; }
    bool isZero() const { return totalDim() == 0; }

    friend bool operator==(const Rep& x, const Rep& y) {
        if (x.q != y.q || x.dims != y.dims) return false;
        for (std::size_t a = 0; a < x.arrows.size(); ++a)
            if (!isZeroMat(x.arrows[a] - y.arrows[a])) return false;
        return true;
    }
};

template <typename F>
Rep<F> zeroRep(Quiver q) {
    std::vector<Mat<F>> as(static_cast<std::size_t>(numArrows(q)), Mat<F>::Zero(0, 0));
    return Rep<F>(q, 0, 0, std::move(as));
}

/// Simple at a vertex (1-based vertex index; Vect has only vertex 1).
template <typename F>
Rep<F> simpleRep(Quiver q, int vertex) {
    Eigen::Index d1 = vertex == 1 ? 1 : 0, d2 = vertex == 2 ? 1 : 0;
    std::vector<Mat<F>> as(static_cast<std::size_t>(numArrows(q)), Mat<F>::Zero(d2, d1));
    return Rep<F>(q, d1, d2, std::move(as));
}

template <typename F>
Mat<F> unitColumn(Eigen::Index n, Eigen::Index i) {
    Mat<F> m = Mat<F>::Zero(n, 1);
    m(i, 0) = F(1);
    return m;
}

/// Indecomposable projective P(vertex).
template <typename F>
Rep<F> projectiveRep(Quiver q, int vertex) {
    if (vertex == 2 && q != Quiver::Vect) return simpleRep<F>(q, 2);
    switch (q) {
        case Quiver::Vect: return simpleRep<F>(q, 1);
        case Quiver::A2: {
            std::vector<Mat<F>> as{Mat<F>::Identity(1, 1)};
            return Rep<F>(q, 1, 1, std::move(as));
        }
        default: {  // K2: P(1) has basis e1 at vertex 1; (alpha, beta) at vertex 2
            std::vector<Mat<F>> as{unitColumn<F>(2, 0), unitColumn<F>(2, 1)};
            return Rep<F>(q, 1, 2, std::move(as));
        }
    }
}

/// Indecomposable injective I(vertex).
template <typename F>
Rep<F> injectiveRep(Quiver q, int vertex) {
    if (vertex == 1 && q != Quiver::Vect) return simpleRep<F>(q, 1);
    switch (q) {
        case Quiver::Vect: return simpleRep<F>(q, 1);
        case Quiver::A2: return projectiveRep<F>(q, 1);  // I(2) = P12
        default: {  // K2: I(2) = ((alpha*,beta*) -> k)
            std::vector<Mat<F>> as{unitColumn<F>(2, 0).transpose(), unitColumn<F>(2, 1).transpose()};
            return Rep<F>(q, 2, 1, std::move(as));
        }
    }
}

template <typename F>
Rep<F> directSum(const Rep<F>& x, const Rep<F>& y) {
    if (x.q != y.q) throw std::invalid_argument("directSum: quiver mismatch");
    std::vector<Mat<F>> as;
    for (std::size_t a = 0; a < x.arrows.size(); ++a)
        as.push_back(blockDiag(x.arrows[a], y.arrows[a]));
    return Rep<F>(x.q, x.dims[0] + y.dims[0], x.dims[1] + y.dims[1], std::move(as));
}

/// Morphism of representations; components intertwine all arrows.
template <typename F>
struct RepMap {
    Rep<F> src, tgt;
    Mat<F> f1, f2;

    RepMap() = default;
    RepMap(Rep<F> s, Rep<F> t, Mat<F> m1, Mat<F> m2)
        : src(std::move(s)), tgt(std::move(t)), f1(std::move(m1)), f2(std::move(m2)) {
        validate();
    }

    void validate() const {
        if (src.q != tgt.q) throw std::invalid_argument("RepMap: quiver mismatch");
        if (f1.rows() != tgt.dims[0] || f1.cols() != src.dims[0] || f2.rows() != tgt.dims[1] ||
            f2.cols() != src.dims[1])
            throw std::invalid_argument("RepMap: component shape mismatch");
        for (std::size_t a = 0; a < src.arrows.size(); ++a)
            if (!isZeroMat(tgt.arrows[a] * f1 - f2 * src.arrows[a]))
                throw std::invalid_argument("RepMap: intertwining relation fails");
    }

    bool isZero() const { return isZeroMat(f1) && isZeroMat(f2); }

    friend bool operator==(const RepMap& x, const RepMap& y) {
        return x.src == y.src && x.tgt == y.tgt && isZeroMat(x.f1 - y.f1) &&
               isZeroMat(x.f2 - y.f2);
    }
};

template <typename F>
RepMap<F> identityMap(const Rep<F>& m) {
    return RepMap<F>(m, m, Mat<F>::Identity(m.dims[0], m.dims[0]),
                     Mat<F>::Identity(m.dims[1], m.dims[1]));
}

template <typename F>
RepMap<F> zeroMap(const Rep<F>& src, const Rep<F>& tgt) {
    return RepMap<F>(src, tgt, Mat<F>::Zero(tgt.dims[0], src.dims[0]),
                     Mat<F>::Zero(tgt.dims[1], src.dims[1]));
}

template <typename F>
RepMap<F> compose(const RepMap<F>& g, const RepMap<F>& f) {
    return RepMap<F>(f.src, g.tgt, g.f1 * f.f1, g.f2 * f.f2);
}

template <typename F>
RepMap<F> add(const RepMap<F>& f, const RepMap<F>& g) {
    return RepMap<F>(f.src, f.tgt, f.f1 + g.f1, f.f2 + g.f2);
}

template <typename F>
RepMap<F> scaleMap(const F& c, const RepMap<F>& f) {
    return RepMap<F>(f.src, f.tgt, Mat<F>(c * f.f1), Mat<F>(c * f.f2));
}

template <typename F>
RepMap<F> negate(const RepMap<F>& f) {
    return RepMap<F>(f.src, f.tgt, Mat<F>(-f.f1), Mat<F>(-f.f2));
}

template <typename F>
RepMap<F> directSumMap(const RepMap<F>& f, const RepMap<F>& g) {
    return RepMap<F>(directSum(f.src, g.src), directSum(f.tgt, g.tgt), blockDiag(f.f1, g.f1),
                     blockDiag(f.f2, g.f2));
}

/// Basis of Hom(m, n): kernel of the intertwining constraints, vectorized
/// column-major over (f1, f2).
template <typename F>
std::vector<RepMap<F>> homBasis(const Rep<F>& m, const Rep<F>& n) {
    if (m.q != n.q) throw std::invalid_argument("homBasis: quiver mismatch");
    const Eigen::Index u1 = n.dims[0] * m.dims[0], u2 = n.dims[1] * m.dims[1];
    const Eigen::Index nconstraints =
        static_cast<Eigen::Index>(m.arrows.size()) * n.dims[1] * m.dims[0];
    Mat<F> C = Mat<F>::Zero(nconstraints, u1 + u2);
    Eigen::Index row = 0;
    for (std::size_t a = 0; a < m.arrows.size(); ++a) {
        // n.A * f1 - f2 * m.A = 0, entry (i, j): i < n.dims[1], j < m.dims[0]
        for (Eigen::Index i = 0; i < n.dims[1]; ++i)
            for (Eigen::Index j = 0; j < m.dims[0]; ++j) {
                for (Eigen::Index k = 0; k < n.dims[0]; ++k)
                    C(row, k + j * n.dims[0]) += n.arrows[a](i, k);
                for (Eigen::Index k = 0; k < m.dims[1]; ++k)
                    C(row, u1 + i + k * n.dims[1]) -= m.arrows[a](k, j);
                ++row;
            }
    }
    Mat<F> K = kernelBasis(C);
    std::vector<RepMap<F>> basis;
    for (Eigen::Index col = 0; col < K.cols(); ++col) {
        Mat<F> f1(n.dims[0], m.dims[0]), f2(n.dims[1], m.dims[1]);
        for (Eigen::Index j = 0; j < m.dims[0]; ++j)
            for (Eigen::Index i = 0; i < n.dims[0]; ++i) f1(i, j) = K(i + j * n.dims[0], col);
        for (Eigen::Index j = 0; j < m.dims[1]; ++j)
            for (Eigen::Index i = 0; i < n.dims[1]; ++i)
                f2(i, j) = K(u1 + i + j * n.dims[1], col);
        basis.emplace_back(m, n, std::move(f1), std::move(f2));
    }
    return basis;
}

using DimVec = std::array<long, 2>;

inline long eulerForm(Quiver q, const DimVec& d, const DimVec& e) {
    switch (q) {
        case Quiver::Vect: return d[0] * e[0];
        case Quiver::A2: return d[0] * e[0] + d[1] * e[1] - d[0] * e[1];
        default: return d[0] * e[0] + d[1] * e[1] - 2 * d[0] * e[1];
    }
}

/// Kernel, image and cokernel of a representation morphism, with the
/// connecting maps (vertex-wise exact linear algebra, arrows induced).
template <typename F>
struct KerCokerIm {
    Rep<F> ker;
    RepMap<F> kerIncl;        // ker -> src
    Rep<F> im;
    RepMap<F> imCorestrict;   // src -> im (surjective)
    RepMap<F> imIncl;         // im -> tgt (injective)
    Rep<F> coker;
    RepMap<F> cokerProj;      // tgt -> coker (surjective)
};

template <typename F>
KerCokerIm<F> kerCokerIm(const RepMap<F>& f) {
    const Quiver q = f.src.q;
    const int nv = numVertices(q);
    std::array<Mat<F>, 2> kb, ib, cp, icor;
    std::array<Mat<F>, 2> comp{f.f1, f.f2};
    for (int v = 0; v < 2; ++v) {
        if (v >= nv) {
            kb[v] = Mat<F>::Zero(0, 0);
            ib[v] = Mat<F>::Zero(0, 0);
            cp[v] = Mat<F>::Zero(0, 0);
            icor[v] = Mat<F>::Zero(0, 0);
            continue;
        }
        kb[v] = kernelBasis(comp[v]);
        auto [img, coker] = imageCokernel(comp[v]);
        ib[v] = img;
        cp[v] = coker;
        auto x = solveMatrix(ib[v], comp[v]);
        if (!x) throw std::logic_error("kerCokerIm: image corestriction failed");
        icor[v] = *x;
    }
    auto induceSub = [&](const std::array<Mat<F>, 2>& basis, const Rep<F>& ambient) {
        std::vector<Mat<F>> as;
        for (std::size_t a = 0; a < ambient.arrows.size(); ++a) {
            auto x = solveMatrix(basis[1], Mat<F>(ambient.arrows[a] * basis[0]));
            if (!x) throw std::logic_error("kerCokerIm: subspace not arrow-closed");
            as.push_back(*x);
        }
        return Rep<F>(ambient.q, basis[0].cols(), basis[1].cols(), std::move(as));
    };
    KerCokerIm<F> out;
    out.ker = induceSub(kb, f.src);
    out.kerIncl = RepMap<F>(out.ker, f.src, kb[0], kb[1]);
    out.im = induceSub(ib, f.tgt);
    out.imIncl = RepMap<F>(out.im, f.tgt, ib[0], ib[1]);
    out.imCorestrict = RepMap<F>(f.src, out.im, icor[0], icor[1]);
    // cokernel arrows: solve A_c * proj1 = proj2 * tgt.A (proj1 surjective)
    std::vector<Mat<F>> cas;
    for (std::size_t a = 0; a < f.tgt.arrows.size(); ++a) {
        Mat<F> rhs = cp[1] * f.tgt.arrows[a];
        auto x = solveMatrix(Mat<F>(cp[0].transpose()), Mat<F>(rhs.transpose()));
        if (!x) throw std::logic_error("kerCokerIm: cokernel arrow induction failed");
        cas.push_back(x->transpose());
    }
    out.coker = Rep<F>(q, cp[0].rows(), cp[1].rows(), std::move(cas));
    out.cokerProj = RepMap<F>(f.tgt, out.coker, cp[0], cp[1]);
    return out;
}

/// Thrown when a brute-force enumeration would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
    unsigned long long estimate;
    explicit BudgetExceeded(unsigned long long est)
        : std::runtime_error("enumeration budget exceeded, estimated count " +
                             std::to_string(est)),
          estimate(est) {}
};

/// All subspaces of F^d as column-basis matrices in reduced echelon form.
template <typename F>
std::vector<Mat<F>> enumerateSubspaces(Eigen::Index d) {
    constexpr unsigned long long p = FieldEnumeration<F>::order;
    std::vector<Mat<F>> out;
    out.push_back(Mat<F>::Zero(d, 0));
    for (Eigen::Index k = 1; k <= d; ++k) {
        // choose pivot rows i_1 < ... < i_k; free entries sit at (col j, row r)
        // with r > i_j and r not a pivot row
        std::vector<Eigen::Index> piv(static_cast<std::size_t>(k));
        for (Eigen::Index i = 0; i < k; ++i) piv[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<bool> isPiv(static_cast<std::size_t>(d), false);
            for (auto i : piv) isPiv[static_cast<std::size_t>(i)] = true;
            std::vector<std::pair<Eigen::Index, Eigen::Index>> freePos;
            for (Eigen::Index j = 0; j < k; ++j)
                for (Eigen::Index r = piv[static_cast<std::size_t>(j)] + 1; r < d; ++r)
                    if (!isPiv[static_cast<std::size_t>(r)]) freePos.emplace_back(r, j);
            std::vector<unsigned long long> odo(freePos.size(), 0);
            while (true) {
                Mat<F> B = Mat<F>::Zero(d, k);
                for (Eigen::Index j = 0; j < k; ++j) B(piv[static_cast<std::size_t>(j)], j) = F(1);
                for (std::size_t t = 0; t < freePos.size(); ++t)
                    B(freePos[t].first, freePos[t].second) =
                        FieldEnumeration<F>::element(odo[t]);
                out.push_back(std::move(B));
                std::size_t t = 0;
                for (; t < odo.size(); ++t) {
                    if (++odo[t] < p) break;
                    odo[t] = 0;
                }
                if (t == odo.size()) break;
            }
            // next pivot combination
            Eigen::Index j = k - 1;
            while (j >= 0 && piv[static_cast<std::size_t>(j)] == d - k + j) --j;
            if (j < 0) break;
            ++piv[static_cast<std::size_t>(j)];
            for (Eigen::Index l = j + 1; l < k; ++l)
                piv[static_cast<std::size_t>(l)] = piv[static_cast<std::size_t>(l - 1)] + 1;
        }
    }
    return out;
}

/// All subrepresentations (vertex-wise subspaces closed under the arrows),
/// each returned with its inclusion map. Finite fields only.
template <typename F>
std::vector<RepMap<F>> enumerateSubreps(const Rep<F>& m,
                                        unsigned long long budget = 2'000'000ULL) {
    constexpr unsigned long long p = FieldEnumeration<F>::order;
    auto countSubspaces = [&](Eigen::Index d) {
        // Galois number: sum of Gaussian binomials
        unsigned long long total = 0;
        for (Eigen::Index k = 0; k <= d; ++k) {
            unsigned long long num = 1, den = 1;
            for (Eigen::Index i = 0; i < k; ++i) {
                unsigned long long pd = 1, pk = 1;
                for (Eigen::Index t = 0; t < d - i; ++t) pd *= p;
                for (Eigen::Index t = 0; t < k - i; ++t) pk *= p;
                num *= pd - 1;
                den *= pk - 1;
            }
            total += num / den;
        }
        return total;
    };
    unsigned long long est = countSubspaces(m.dims[0]) * countSubspaces(m.dims[1]);
    if (est > budget) throw BudgetExceeded(est);

    auto s1 = enumerateSubspaces<F>(m.dims[0]);
    auto s2 = enumerateSubspaces<F>(m.dims[1]);
    if (m.q == Quiver::Vect) s2 = {Mat<F>::Zero(0, 0)};
    std::vector<RepMap<F>> out;
    for (const auto& b1 : s1)
        for (const auto& b2 : s2) {
            bool closed = true;
            std::vector<Mat<F>> as;
            for (std::size_t a = 0; a < m.arrows.size() && closed; ++a) {
                auto x = solveMatrix(b2, Mat<F>(m.arrows[a] * b1));
                if (!x) { closed = false; break; }
                as.push_back(*x);
            }
            if (!closed) continue;
            Rep<F> sub(m.q, b1.cols(), b2.cols(), std::move(as));
            out.emplace_back(sub, m, b1, b2);
        }
    return out;
}

/// Functorial two-term projective resolution (the standard resolution of a
/// path-algebra representation):
///   0 -> P(2) (x) M_1^{arrows} -> (+)_i P(i) (x) M_i -> M -> 0.
/// Both terms are standard projective sums, so chain maps lifted through it
/// stay in the standard coordinates (used by the Nakayama functor).
struct ProjMult {
    Eigen::Index a = 0;  // multiplicity of P(1)
    Eigen::Index b = 0;  // multiplicity of P(2)
};

template <typename F>
Rep<F> standardProjSum(Quiver q, Eigen::Index a, Eigen::Index b) {
    switch (q) {
        case Quiver::Vect: {
            std::vector<Mat<F>> as;
            return Rep<F>(q, a, 0, std::move(as));
        }
        case Quiver::A2: {
            Mat<F> arrow = Mat<F>::Zero(a + b, a);
            arrow.topRows(a) = Mat<F>::Identity(a, a);
            return Rep<F>(q, a, a + b, {arrow});
        }
        default: {
            Mat<F> A = Mat<F>::Zero(2 * a + b, a), B = Mat<F>::Zero(2 * a + b, a);
            A.topRows(a) = Mat<F>::Identity(a, a);
            B.middleRows(a, a) = Mat<F>::Identity(a, a);
            return Rep<F>(q, a, 2 * a + b, {A, B});
        }
    }
}

template <typename F>
Rep<F> standardInjSum(Quiver q, Eigen::Index a, Eigen::Index b) {
    switch (q) {
        case Quiver::Vect: {
            std::vector<Mat<F>> as;
            return Rep<F>(q, a, 0, std::move(as));
        }
        case Quiver::A2: {
            Mat<F> arrow = Mat<F>::Zero(b, a + b);
            arrow.rightCols(b) = Mat<F>::Identity(b, b);
            return Rep<F>(q, a + b, b, {arrow});
        }
        default: {
            Mat<F> A = Mat<F>::Zero(b, a + 2 * b), B = Mat<F>::Zero(b, a + 2 * b);
            A.middleCols(a, b) = Mat<F>::Identity(b, b);
            B.rightCols(b) = Mat<F>::Identity(b, b);
            return Rep<F>(q, a + 2 * b, b, {A, B});
        }
    }
}

template <typename F>
struct StdResolution {
    ProjMult m1, m0;          // formal multiplicities of p1 and p0
    Rep<F> p1, p0;
    RepMap<F> delta;          // p1 -> p0, injective
    RepMap<F> eps;            // p0 -> M, surjective
};

template <typename F>
StdResolution<F> stdResolution(const Rep<F>& m) {
    const Eigen::Index n1 = m.dims[0], n2 = m.dims[1];
    const int na = numArrows(m.q);
    StdResolution<F> r;
    r.m0 = {n1, n2};
    r.m1 = {0, na * n1};
    r.p0 = standardProjSum<F>(m.q, n1, n2);
    r.p1 = standardProjSum<F>(m.q, 0, na * n1);
    switch (m.q) {
        case Quiver::Vect: {
            r.eps = RepMap<F>(r.p0, m, Mat<F>::Identity(n1, n1), Mat<F>::Zero(0, 0));
            r.delta = zeroMap(r.p1, r.p0);
            break;
        }
        case Quiver::A2: {
            Mat<F> e2 = Mat<F>::Zero(n2, n1 + n2);
            e2.leftCols(n1) = m.arrows[0];
            e2.rightCols(n2) = Mat<F>::Identity(n2, n2);
            r.eps = RepMap<F>(r.p0, m, Mat<F>::Identity(n1, n1), std::move(e2));
            Mat<F> d2 = Mat<F>::Zero(n1 + n2, n1);
            d2.topRows(n1) = Mat<F>::Identity(n1, n1);
            d2.bottomRows(n2) = -m.arrows[0];
            r.delta = RepMap<F>(r.p1, r.p0, Mat<F>::Zero(n1, 0), std::move(d2));
            break;
        }
        default: {
            Mat<F> e2 = Mat<F>::Zero(n2, 2 * n1 + n2);
            e2.leftCols(n1) = m.arrows[0];
            e2.middleCols(n1, n1) = m.arrows[1];
            e2.rightCols(n2) = Mat<F>::Identity(n2, n2);
            r.eps = RepMap<F>(r.p0, m, Mat<F>::Identity(n1, n1), std::move(e2));
            Mat<F> d2 = Mat<F>::Zero(2 * n1 + n2, 2 * n1);
            d2.block(0, 0, n1, n1) = Mat<F>::Identity(n1, n1);
            d2.block(n1, n1, n1, n1) = Mat<F>::Identity(n1, n1);
            d2.block(2 * n1, 0, n2, n1) = -m.arrows[0];
            d2.block(2 * n1, n1, n2, n1) = -m.arrows[1];
            r.delta = RepMap<F>(r.p1, r.p0, Mat<F>::Zero(n1, 0), std::move(d2));
            break;
        }
    }
    return r;
}

/// Functorial action of the standard resolution on morphisms: P0(phi) and
/// P1(phi) commute strictly with eps and delta.
template <typename F>
RepMap<F> stdResolutionP0(const RepMap<F>& phi, const Rep<F>& p0src, const Rep<F>& p0tgt) {
    switch (phi.src.q) {
        case Quiver::Vect: return RepMap<F>(p0src, p0tgt, phi.f1, Mat<F>::Zero(0, 0));
        case Quiver::A2:
            return RepMap<F>(p0src, p0tgt, phi.f1, blockDiag(phi.f1, phi.f2));
        default:
            return RepMap<F>(p0src, p0tgt, phi.f1, blockDiag(blockDiag(phi.f1, phi.f1), phi.f2));
    }
}

template <typename F>
RepMap<F> stdResolutionP1(const RepMap<F>& phi, const Rep<F>& p1src, const Rep<F>& p1tgt) {
    switch (phi.src.q) {
        case Quiver::Vect: return zeroMap(p1src, p1tgt);
        case Quiver::A2:
            return RepMap<F>(p1src, p1tgt, Mat<F>::Zero(0, 0), phi.f1);
        default:
            return RepMap<F>(p1src, p1tgt, Mat<F>::Zero(0, 0), blockDiag(phi.f1, phi.f1));
    }
}

}  // namespace stabglue
