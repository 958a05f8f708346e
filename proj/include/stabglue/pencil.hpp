#pragma once

#include "stabglue/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stabglue {

enum class PencilBlockKind { LEps, LEtaT, Jordan, HigherDegree, NilpotentInf };

/// One canonical block of a matrix pencil A + tB.
///  - LEps(eps):        eps x (eps+1), A = [I 0], B = [0 I]   (column minimal index)
///  - LEtaT(eta):       (eta+1) x eta, A = [I;0], B = [0;I]   (row minimal index)
///  - Jordan(lambda,l): A = J_l(lambda) upper, B = I
///  - HigherDegree(q,l): A = companion(q^l), B = I            (point of degree deg q > 1)
///  - NilpotentInf(l):  A = I, B = J_l(0) upper
template <typename F>
struct PencilBlock {
    PencilBlockKind kind;
    Eigen::Index size = 0;  // eps/eta for L blocks, l otherwise
    F lambda = F(0);
    Poly<F> point;

    std::pair<Mat<F>, Mat<F>> pencilPair() const {
        auto upperShift = [](Eigen::Index l) {
            Mat<F> n = Mat<F>::Zero(l, l);
            for (Eigen::Index i = 0; i + 1 < l; ++i) n(i, i + 1) = F(1);
            return n;
        };
        switch (kind) {
            case PencilBlockKind::LEps: {
                Mat<F> a = Mat<F>::Zero(size, size + 1), b = Mat<F>::Zero(size, size + 1);
                a.leftCols(size) = Mat<F>::Identity(size, size);
                b.rightCols(size) = Mat<F>::Identity(size, size);
                return {a, b};
            }
            case PencilBlockKind::LEtaT: {
                Mat<F> a = Mat<F>::Zero(size + 1, size), b = Mat<F>::Zero(size + 1, size);
                a.topRows(size) = Mat<F>::Identity(size, size);
                b.bottomRows(size) = Mat<F>::Identity(size, size);
                return {a, b};
            }
            case PencilBlockKind::Jordan: {
                Mat<F> a = upperShift(size);
                for (Eigen::Index i = 0; i < size; ++i) a(i, i) = lambda;
                return {a, Mat<F>::Identity(size, size)};
            }
            case PencilBlockKind::HigherDegree: {
                Poly<F> qk = point.pow(static_cast<int>(size));
                Eigen::Index n = qk.degree();
                Mat<F> a = Mat<F>::Zero(n, n);
                for (Eigen::Index i = 0; i + 1 < n; ++i) a(i + 1, i) = F(1);
                for (Eigen::Index i = 0; i < n; ++i)
                    a(i, n - 1) = -qk.c[static_cast<std::size_t>(i)];
                return {a, Mat<F>::Identity(n, n)};
            }
            default: {  // NilpotentInf
                return {Mat<F>::Identity(size, size), upperShift(size)};
            }
        }
    }

    Eigen::Index rows() const { return pencilPair().first.rows(); }
    Eigen::Index cols() const { return pencilPair().first.cols(); }

    std::string key() const {
        switch (kind) {
            case PencilBlockKind::LEps:
                return "0L:" + std::to_string(size);
            case PencilBlockKind::Jordan:
                return "1R:lin[" + FieldTraits<F>::toString(lambda) + "]:" + std::to_string(size);
            case PencilBlockKind::HigherDegree:
                return "1R:pt[" + to_string(point) + "]:" + std::to_string(size);
            case PencilBlockKind::NilpotentInf:
                return "1R:zz-inf:" + std::to_string(size);
            default:
                return "2T:" + std::to_string(size);
        }
    }
};

template <typename F>
struct PencilForm {
    std::vector<PencilBlock<F>> blocks;
    Mat<F> P, Q;  // P * (A + tB) * Q equals the block diagonal of blocks

    std::pair<Mat<F>, Mat<F>> reconstruct() const {
        Mat<F> a = Mat<F>::Zero(0, 0), b = Mat<F>::Zero(0, 0);
        for (const auto& blk : blocks) {
            auto [ba, bb] = blk.pencilPair();
            a = blockDiag(a, ba);
            b = blockDiag(b, bb);
        }
        return {a, b};
    }
};

namespace detail {

template <typename F>
struct PencilResult {
    std::vector<PencilBlock<F>> blocks;
    Mat<F> P, Q;
};

/// Smallest degree d such that (A + tB) v(t) = 0 has a nonzero polynomial
/// solution of degree d; returns the coefficient columns [v_0 ... v_d].
template <typename F>
std::optional<std::pair<Eigen::Index, Mat<F>>> minimalKernelVector(const Mat<F>& A,
                                                                   const Mat<F>& B) {
    const Eigen::Index m = A.rows(), n = A.cols();
    for (Eigen::Index d = 0; d <= n; ++d) {
        Mat<F> T = Mat<F>::Zero((d + 2) * m, (d + 1) * n);
        for (Eigen::Index j = 0; j <= d; ++j) {
            T.block(j * m, j * n, m, n) = A;
            T.block((j + 1) * m, j * n, m, n) = B;
        }
        Mat<F> K = kernelBasis(T);
        if (K.cols() == 0) continue;
        Mat<F> V(n, d + 1);
        for (Eigen::Index j = 0; j <= d; ++j) V.col(j) = K.block(j * n, 0, n, 1);
        return std::make_pair(d, V);
    }
    return std::nullopt;
}

// --- polynomial factor discovery -----------------------------------------

template <typename F>
struct IrreducibleFactor {
    Poly<F> q;
    int mult;
    bool opaque = false;  // residual that could not be split further
};

/// Enumerate monic polynomials of exact degree d over a finite field.
template <typename F>
void forEachMonic(Eigen::Index d, const std::function<void(const Poly<F>&)>& fn) {
    constexpr unsigned long long p = FieldEnumeration<F>::order;
    std::vector<unsigned long long> odo(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<F> c(static_cast<std::size_t>(d) + 1);
        for (Eigen::Index i = 0; i < d; ++i)
            c[static_cast<std::size_t>(i)] =
                FieldEnumeration<F>::element(odo[static_cast<std::size_t>(i)]);
        c[static_cast<std::size_t>(d)] = F(1);
        fn(Poly<F>(std::move(c)));
        std::size_t t = 0;
        for (; t < odo.size(); ++t) {
            if (++odo[t] < p) break;
            odo[t] = 0;
        }
        if (t == odo.size()) break;
    }
}

/// Irreducible factorization of a squarefree monic polynomial over GF(p)
/// by trial division (desk scale).
template <typename F>
std::vector<Poly<F>> splitSquarefreeFinite(Poly<F> s) {
    std::vector<Poly<F>> out;
    for (Eigen::Index d = 1; !s.isZero() && s.degree() > 0 && d <= s.degree() / 2; ++d) {
        bool found = true;
        while (found && s.degree() > 0) {
            found = false;
            forEachMonic<F>(d, [&](const Poly<F>& cand) {
                if (found || s.degree() < cand.degree()) return;
                if ((s % cand).isZero()) {
                    out.push_back(cand);
                    s = s / cand;
                    found = true;
                }
            });
        }
    }
    if (s.degree() > 0) out.push_back(s.monic());
    return out;
}

inline std::optional<Rational> rationalize(double x, long long maxDen = 100000) {
    // continued fraction reconstruction with exact verification left to caller
    if (!std::isfinite(x)) return std::nullopt;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 40; ++it) {
        double fl = std::floor(v);
        if (fl > 1e15 || fl < -1e15) return std::nullopt;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > maxDen) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = v - fl;
        if (rem < 1e-12) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rational r(p1, q1);
    return r;
}

inline double toDouble(const QuadRat& q) {
    return static_cast<double>(q.a) + std::sqrt(3.0) * static_cast<double>(q.b);
}

/// All roots of a squarefree polynomial that lie in Q(sqrt3). Rational roots
/// come from the rational root theorem; roots a + b*sqrt3 with b != 0 are
/// reconstructed from numerical root pairs and accepted only after exact
/// verification. Remaining factors are returned opaque.
inline std::vector<QuadRat> rootsInQuadRat(const Poly<QuadRat>& s) {
    std::vector<QuadRat> roots;
    if (s.degree() < 1) return roots;
    // conjugate polynomial and the rational norm polynomial n = s * conj(s)
    Poly<QuadRat> sc;
    sc.c = s.c;
    for (auto& x : sc.c) x.b = -x.b;
    Poly<QuadRat> n = s * sc;
    // n has rational coefficients; scale to integers
    Integer lcm = 1;
    for (const auto& x : n.c) {
        if (x.b != 0) throw std::logic_error("norm polynomial not rational");
        lcm = boost::multiprecision::lcm(lcm, denominator(x.a));
    }
    std::vector<Integer> ic;
    for (const auto& x : n.c) ic.push_back(numerator(x.a) * (lcm / denominator(x.a)));
    while (!ic.empty() && ic.back() == 0) ic.pop_back();
    // rational root candidates p/q: p | ic[0], q | ic.back(); bounded trial division
    auto smallDivisors = [](Integer v) {
        std::vector<Integer> ds;
        if (v < 0) v = -v;
        if (v == 0) return ds;  // zero constant handled via root 0 below
        for (Integer d = 1; d * d <= v && d < 2000000; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        return ds;
    };
    auto tryRoot = [&](const QuadRat& cand) {
        if (isZeroScalar(s.eval(cand))) {
            for (const auto& r : roots)
                if (r == cand) return;
            roots.push_back(cand);
        }
    };
    if (!ic.empty()) {
        if (ic.front() == 0) tryRoot(QuadRat(0));
        auto ps = smallDivisors(ic.front());
        auto qs = smallDivisors(ic.back());
        for (const auto& p : ps)
            for (const auto& q : qs) {
                tryRoot(QuadRat(Rational(p, q)));
                tryRoot(QuadRat(Rational(-p, q)));
            }
    }
    // numeric assist for a + b sqrt3 with b != 0, from pairs of real roots of n
    Eigen::Index deg = n.degree();
    if (deg >= 2) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        double lead = toDouble(n.c.back());
        for (Eigen::Index i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
        for (Eigen::Index i = 0; i < deg; ++i)
            comp(i, deg - 1) = -toDouble(n.c[static_cast<std::size_t>(i)]) / lead;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        std::vector<double> realRoots;
        for (Eigen::Index i = 0; i < deg; ++i)
            if (std::abs(es.eigenvalues()(i).imag()) < 1e-8)
                realRoots.push_back(es.eigenvalues()(i).real());
        const double s3 = std::sqrt(3.0);
        for (std::size_t i = 0; i < realRoots.size(); ++i)
            for (std::size_t j = 0; j < realRoots.size(); ++j) {
                if (i == j) continue;
                double a = (realRoots[i] + realRoots[j]) / 2;
                double b = (realRoots[i] - realRoots[j]) / (2 * s3);
                auto ra = rationalize(a), rb = rationalize(b);
                if (!ra || !rb || *rb == 0) continue;
                tryRoot(QuadRat(*ra, *rb));
            }
    }
    return roots;
}

template <typename F>
std::vector<IrreducibleFactor<F>> factorForPencil(const Poly<F>& minpoly, int charP);

template <int P>
std::vector<IrreducibleFactor<GF<P>>> factorForPencilFinite(const Poly<GF<P>>& minpoly) {
    using F = GF<P>;
    Poly<F> s = squarefreePart(minpoly, P);
    std::vector<IrreducibleFactor<F>> out;
    for (const auto& q : splitSquarefreeFinite(s)) {
        int mult = 0;
        Poly<F> rest = minpoly;
        while (!rest.isZero() && (rest % q).isZero()) {
            rest = rest / q;
            ++mult;
        }
        out.push_back({q, mult, false});
    }
    return out;
}

template <>
inline std::vector<IrreducibleFactor<GF<2>>> factorForPencil(const Poly<GF<2>>& mp, int) {
    return factorForPencilFinite<2>(mp);
}
template <>
inline std::vector<IrreducibleFactor<GF<3>>> factorForPencil(const Poly<GF<3>>& mp, int) {
    return factorForPencilFinite<3>(mp);
}
template <>
inline std::vector<IrreducibleFactor<GF<5>>> factorForPencil(const Poly<GF<5>>& mp, int) {
    return factorForPencilFinite<5>(mp);
}

template <>
inline std::vector<IrreducibleFactor<QuadRat>> factorForPencil(const Poly<QuadRat>& minpoly,
                                                               int) {
    Poly<QuadRat> s = squarefreePart(minpoly, 0);
    std::vector<IrreducibleFactor<QuadRat>> out;
    Poly<QuadRat> residual = s;
    for (const auto& r : rootsInQuadRat(s)) {
        Poly<QuadRat> lin = Poly<QuadRat>::linear(r);
        int mult = 0;
        Poly<QuadRat> rest = minpoly;
        while (!rest.isZero() && (rest % lin).isZero()) {
            rest = rest / lin;
            ++mult;
        }
        out.push_back({lin, mult, false});
        residual = residual / lin;
    }
    if (residual.degree() > 0) {
        // opaque part: multiplicity = largest e with residual^e | minpoly
        int mult = 0;
        Poly<QuadRat> rest = minpoly;
        while (!rest.isZero() && (rest % residual).isZero()) {
            rest = rest / residual;
            ++mult;
        }
        out.push_back({residual.monic(), std::max(mult, 1), true});
    }
    return out;
}

// --- Jordan-type decomposition of a square matrix -------------------------

template <typename F>
struct JordanPiece {
    bool linear;     // true: eigenvalue lambda; false: point polynomial q
    F lambda = F(0);
    Poly<F> q;
    Eigen::Index len = 0;
    Mat<F> basis;    // ambient columns realizing the canonical block
};

template <typename F>
Mat<F> matrixPower(const Mat<F>& m, Eigen::Index e) {
    Mat<F> r = Mat<F>::Identity(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < e; ++i) r = r * m;
    return r;
}

/// Chains of the q-primary part of N acting on the ambient space.
/// Returns pieces whose bases realize J(lambda) / companion(q^k) exactly.
template <typename F>
std::vector<JordanPiece<F>> primaryChains(const Mat<F>& N, const Poly<F>& q, int mult,
                                          bool opaque) {
    std::vector<JordanPiece<F>> pieces;
    const Eigen::Index e = q.degree();
    Mat<F> A = evalAt(q, N);
    Mat<F> Ak = matrixPower(A, mult);
    Mat<F> comp = kernelBasis(Ak);  // the primary component
    if (comp.cols() == 0) return pieces;
    // heights within the component. At level k a generator only needs its top
    // Krylov layer (e columns) independent modulo ker A^{k-1} and the layers
    // carried down from taller chains; full chains overlap lower kernels.
    std::vector<std::pair<Vec<F>, Eigen::Index>> chosen;  // (generator, q-height)
    auto topLayer = [&](Mat<F>& sp, const Vec<F>& w) {
        Vec<F> cur = w;
        for (Eigen::Index j = 0; j < e; ++j) {
            sp = hstack(sp, Mat<F>(cur));
            cur = N * cur;
        }
    };
    for (Eigen::Index k = mult; k >= 1; --k) {
        Mat<F> Kk = kernelBasis(Mat<F>(matrixPower(A, k)));
        Mat<F> Kk1 = kernelBasis(Mat<F>(matrixPower(A, k - 1)));
        Mat<F> SP = Kk1;
        for (const auto& [v, kv] : chosen) topLayer(SP, Vec<F>(matrixPower(A, kv - k) * v));
        Eigen::Index target = Kk.cols();
        Eigen::Index have = rank(SP);
        for (Eigen::Index cand = 0; cand < Kk.cols() && have < target; ++cand) {
            Vec<F> w = Kk.col(cand);
            Mat<F> trial = SP;
            topLayer(trial, w);
            if (rank(trial) == have + e) {
                chosen.emplace_back(w, k);
                SP = trial;
                have += e;
            }
        }
        if (have != target)
            throw std::logic_error("primaryChains: generator search failed (opaque point "
                                   "polynomial is likely reducible)");
    }
    for (const auto& [v, k] : chosen) {
        JordanPiece<F> piece;
        piece.len = k;
        if (e == 1 && !opaque) {
            piece.linear = true;
            piece.lambda = -q.c[0];  // q = t - lambda
            Mat<F> basis(N.rows(), k);
            for (Eigen::Index j = 0; j < k; ++j)
                basis.col(j) = matrixPower(A, k - 1 - j) * v;
            piece.basis = basis;
        } else {
            piece.linear = false;
            piece.q = q;
            Mat<F> basis(N.rows(), e * k);
            Vec<F> cur = v;
            for (Eigen::Index j = 0; j < e * k; ++j) {
                basis.col(j) = cur;
                cur = N * cur;
            }
            piece.basis = basis;
        }
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

/// Full Jordan-type decomposition: S^{-1} N S is the exact block diagonal of
/// the returned pieces.
template <typename F>
std::pair<std::vector<JordanPiece<F>>, Mat<F>> jordanDecompose(const Mat<F>& N, int charP) {
    std::vector<JordanPiece<F>> all;
    Poly<F> mp = minimalPolynomial(N);
    auto factors = factorForPencil<F>(mp, charP);
    for (const auto& f : factors) {
        auto pieces = primaryChains(N, f.q, f.mult, f.opaque);
        for (auto& p : pieces) all.push_back(std::move(p));
    }
    Mat<F> S(N.rows(), 0);
    for (const auto& p : all) S = hstack(S, p.basis);
    if (S.cols() != N.rows() || !isInvertible(S))
        throw std::logic_error("jordanDecompose: basis assembly failed");
    return {all, S};
}

// --- main recursion --------------------------------------------------------

template <typename F>
PencilResult<F> pencilRec(const Mat<F>& A, const Mat<F>& B, int charP);

/// One peeled column minimal index: P (A + tB) Q = blockdiag(LEps(eps), E),
/// with the remainder E returned unrecursed.
template <typename F>
struct PeelStep {
    Eigen::Index eps;
    Mat<F> P, Q;
    Mat<F> EA, EB;
};

template <typename F>
PeelStep<F> peelColumnStep(const Mat<F>& A, const Mat<F>& B, Eigen::Index eps, const Mat<F>& V) {
    const Eigen::Index m = A.rows(), n = A.cols();
    if (eps == 0) {
        Mat<F> Q0 = completeBasis(V, n);
        Mat<F> A1 = A * Q0, B1 = B * Q0;
        PeelStep<F> st;
        st.eps = 0;
        st.P = Mat<F>::Identity(m, m);
        st.Q = Q0;
        st.EA = A1.rightCols(n - 1);
        st.EB = B1.rightCols(n - 1);
        return st;
    }
    // W = [A v_1 ... A v_eps]
    Mat<F> W(m, eps);
    for (Eigen::Index j = 1; j <= eps; ++j) W.col(j - 1) = A * V.col(j);
    if (rank(V) != eps + 1 || rank(W) != eps)
        throw std::logic_error("peelColumn: minimal kernel chain is degenerate");
    Mat<F> Q0 = completeBasis(V, n);
    Mat<F> P0 = completeBasis(W, m);
    Mat<F> Ppre = inverse(P0);
    Mat<F> A1 = Ppre * A * Q0, B1 = Ppre * B * Q0;
    // structure: [[Lraw, D],[0, E]] with Lraw_A = [0 I], Lraw_B = [-I 0]
    Mat<F> DA = A1.block(0, eps + 1, eps, n - eps - 1);
    Mat<F> DB = B1.block(0, eps + 1, eps, n - eps - 1);
    Mat<F> EA = A1.block(eps, eps + 1, m - eps, n - eps - 1);
    Mat<F> EB = B1.block(eps, eps + 1, m - eps, n - eps - 1);
    if (!isZeroMat(A1.block(eps, 0, m - eps, eps + 1)) ||
        !isZeroMat(B1.block(eps, 0, m - eps, eps + 1)))
        throw std::logic_error("peelColumn: lower-left block not eliminated");
    Mat<F> LA = A1.block(0, 0, eps, eps + 1), LB = B1.block(0, 0, eps, eps + 1);
    // solve L Y + X E = -D (A and B parts simultaneously), unknowns (Y, X)
    const Eigen::Index nc = n - eps - 1, mr = m - eps;
    const Eigen::Index nY = (eps + 1) * nc, nX = eps * mr;
    Mat<F> Sys = Mat<F>::Zero(2 * eps * nc, nY + nX);
    Vec<F> rhs = Vec<F>::Zero(2 * eps * nc);
    auto yIdx = [&](Eigen::Index k, Eigen::Index j) { return k + j * (eps + 1); };
    auto xIdx = [&](Eigen::Index i, Eigen::Index l) { return nY + i + l * eps; };
    Eigen::Index row = 0;
    for (int part = 0; part < 2; ++part) {
        const Mat<F>& L = part == 0 ? LA : LB;
        const Mat<F>& E = part == 0 ? EA : EB;
        const Mat<F>& D = part == 0 ? DA : DB;
        for (Eigen::Index i = 0; i < eps; ++i)
            for (Eigen::Index j = 0; j < nc; ++j) {
                for (Eigen::Index k = 0; k <= eps; ++k)
                    if (!isZeroScalar(L(i, k))) Sys(row, yIdx(k, j)) += L(i, k);
                for (Eigen::Index l = 0; l < mr; ++l)
                    if (!isZeroScalar(E(l, j))) Sys(row, xIdx(i, l)) += E(l, j);
                rhs(row) = -D(i, j);
                ++row;
            }
    }
    auto sol = solve(Sys, rhs);
    if (!sol) throw std::logic_error("peelColumn: coupling elimination unsolvable");
    Mat<F> Y(eps + 1, nc), X(eps, mr);
    for (Eigen::Index k = 0; k <= eps; ++k)
        for (Eigen::Index j = 0; j < nc; ++j) Y(k, j) = (*sol)(yIdx(k, j));
    for (Eigen::Index i = 0; i < eps; ++i)
        for (Eigen::Index l = 0; l < mr; ++l) X(i, l) = (*sol)(xIdx(i, l));
    // canonicalize the raw L block: reverse rows/cols with alternating signs
    Mat<F> Pblk = Mat<F>::Zero(eps, eps), Qblk = Mat<F>::Zero(eps + 1, eps + 1);
    for (Eigen::Index i = 0; i < eps; ++i)
        Pblk(i, eps - 1 - i) = (i % 2 == 0) ? F(1) : F(-1);
    for (Eigen::Index j = 0; j <= eps; ++j)
        Qblk(eps - j, j) = (j % 2 == 0) ? F(1) : F(-1);
    Mat<F> rowOp = Mat<F>::Identity(m, m);
    rowOp.block(0, eps, eps, mr) = X;
    Mat<F> colOp = Mat<F>::Identity(n, n);
    colOp.block(0, eps + 1, eps + 1, nc) = Y;
    PeelStep<F> st;
    st.eps = eps;
    st.P = blockDiag(Pblk, Mat<F>::Identity(mr, mr)) * rowOp * Ppre;
    st.Q = Q0 * colOp * blockDiag(Qblk, Mat<F>::Identity(nc, nc));
    st.EA = EA;
    st.EB = EB;
    return st;
}

template <typename F>
PencilResult<F> pencilRec(const Mat<F>& A, const Mat<F>& B, int charP) {
    const Eigen::Index m = A.rows(), n = A.cols();
    PencilResult<F> out;
    if (m == 0 && n == 0) {
        out.P = Mat<F>::Identity(0, 0);
        out.Q = Mat<F>::Identity(0, 0);
        return out;
    }
    if (m == 0) {
        for (Eigen::Index j = 0; j < n; ++j)
            out.blocks.push_back({PencilBlockKind::LEps, 0, F(0), Poly<F>()});
        out.P = Mat<F>::Identity(0, 0);
        out.Q = Mat<F>::Identity(n, n);
        return out;
    }
    if (n == 0) {
        for (Eigen::Index i = 0; i < m; ++i)
            out.blocks.push_back({PencilBlockKind::LEtaT, 0, F(0), Poly<F>()});
        out.P = Mat<F>::Identity(m, m);
        out.Q = Mat<F>::Identity(0, 0);
        return out;
    }
    if (auto kv = minimalKernelVector(A, B)) {
        PeelStep<F> st = peelColumnStep<F>(A, B, kv->first, kv->second);
        PencilResult<F> rest = pencilRec<F>(st.EA, st.EB, charP);
        PencilResult<F> out;
        out.blocks.push_back({PencilBlockKind::LEps, st.eps, F(0), Poly<F>()});
        for (auto& b : rest.blocks) out.blocks.push_back(std::move(b));
        const Eigen::Index br = st.eps, bc = st.eps + 1;
        out.P = blockDiag(Mat<F>::Identity(br, br), rest.P) * st.P;
        out.Q = st.Q * blockDiag(Mat<F>::Identity(bc, bc), rest.Q);
        return out;
    }
    if (auto kvT = minimalKernelVector(Mat<F>(A.transpose()), Mat<F>(B.transpose()))) {
        // peel a row minimal index by working on the transposed pencil, then
        // transpose the step back (LEps transposes to the canonical LEtaT)
        PeelStep<F> st =
            peelColumnStep<F>(Mat<F>(A.transpose()), Mat<F>(B.transpose()), kvT->first,
                              kvT->second);
        Mat<F> Pback = st.Q.transpose();
        Mat<F> Qback = st.P.transpose();
        PencilResult<F> rest =
            pencilRec<F>(Mat<F>(st.EA.transpose()), Mat<F>(st.EB.transpose()), charP);
        PencilResult<F> out;
        out.blocks.push_back({PencilBlockKind::LEtaT, st.eps, F(0), Poly<F>()});
        for (auto& b : rest.blocks) out.blocks.push_back(std::move(b));
        const Eigen::Index br = st.eps + 1, bc = st.eps;
        out.P = blockDiag(Mat<F>::Identity(br, br), rest.P) * Pback;
        out.Q = Qback * blockDiag(Mat<F>::Identity(bc, bc), rest.Q);
        return out;
    }
    // regular part
    if (m != n) throw std::logic_error("pencilRec: singular pencil escaped peeling");
    // find c with A + cB invertible
    std::optional<F> cFound;
    if constexpr (FieldTraits<F>::characteristic == 0) {
        for (int k = 0; k <= n && !cFound; ++k) {
            for (int s : {1, -1}) {
                F c = F(s * k);
                if (isInvertible(Mat<F>(A + c * B))) {
                    cFound = c;
                    break;
                }
                if (k == 0) break;
            }
        }
    } else {
        for (unsigned long long i = 0; i < FieldEnumeration<F>::order && !cFound; ++i) {
            F c = FieldEnumeration<F>::element(i);
            if (isInvertible(Mat<F>(A + c * B))) cFound = c;
        }
    }
    if (!cFound)
        throw std::runtime_error(
            "pencilDecompose: regular part has no invertible point over this field");
    F c = *cFound;
    Mat<F> AcBinv = inverse(Mat<F>(A + c * B));
    Mat<F> M = AcBinv * B;
    // Fitting decomposition of M
    Mat<F> Mn = matrixPower(M, n);
    Mat<F> V0 = kernelBasis(Mn);
    Mat<F> V1 = imageBasis(Mn);
    Mat<F> U = hstack(V1, V0);
    if (!isInvertible(U)) throw std::logic_error("pencilRec: Fitting basis not invertible");
    Mat<F> Uinv = inverse(U);
    Mat<F> Mblk = Uinv * M * U;
    const Eigen::Index n1 = V1.cols(), n0 = V0.cols();
    Mat<F> M1 = Mblk.block(0, 0, n1, n1);
    Mat<F> M0 = Mblk.block(n1, n1, n0, n0);
    if (!isZeroMat(Mblk.block(0, n1, n1, n0)) || !isZeroMat(Mblk.block(n1, 0, n0, n1)))
        throw std::logic_error("pencilRec: Fitting blocks not diagonal");

    // current transforms: pencil -> Uinv * AcBinv * (A + tB) * U = I + (t-c) Mblk
    // finite part on V1: left-multiply by M1^{-1}: (M1^{-1} - cI) + tI
    std::vector<PencilBlock<F>> blocks;
    Mat<F> Pfin, Qfin;
    {
        Mat<F> Pleft = Mat<F>::Identity(n, n);
        Mat<F> Qright = Mat<F>::Identity(n, n);
        Mat<F> PextraL = Mat<F>::Identity(n, n);
        if (n1 > 0) {
            Mat<F> M1inv = inverse(M1);
            Mat<F> NA = M1inv - c * Mat<F>::Identity(n1, n1);
            auto [pieces, S] = jordanDecompose(NA, charP);
            Mat<F> Sinv = inverse(S);
            // S^{-1} NA S = J; pencil NA + tI -> S^{-1}(NA + tI)S = J + tI
            for (const auto& p : pieces) {
                if (p.linear)
                    blocks.push_back({PencilBlockKind::Jordan, p.len, p.lambda, Poly<F>()});
                else
                    blocks.push_back({PencilBlockKind::HigherDegree, p.len, F(0), p.q});
            }
            PextraL.block(0, 0, n1, n1) = Sinv * M1inv;
            Qright.block(0, 0, n1, n1) = S;
        }
        if (n0 > 0) {
            Mat<F> IcM0inv = inverse(Mat<F>(Mat<F>::Identity(n0, n0) - c * M0));
            Mat<F> M0p = IcM0inv * M0;  // nilpotent
            auto [pieces, S] = jordanDecompose(M0p, charP);
            for (const auto& p : pieces) {
                if (!p.linear || !isZeroScalar(p.lambda))
                    throw std::logic_error("pencilRec: infinite part not nilpotent");
                blocks.push_back({PencilBlockKind::NilpotentInf, p.len, F(0), Poly<F>()});
            }
            Mat<F> Sinv = inverse(S);
            PextraL.block(n1, n1, n0, n0) = Sinv * IcM0inv;
            Qright.block(n1, n1, n0, n0) = S;
        }
        Pfin = PextraL * Uinv * AcBinv;
        Qfin = U * Qright;
    }
    out.blocks = std::move(blocks);
    out.P = Pfin;
    out.Q = Qfin;
    return out;
}

template <typename F>
bool pencilMatches(const PencilForm<F>& form, const Mat<F>& A, const Mat<F>& B) {
    auto [ca, cb] = form.reconstruct();
    if (ca.rows() != A.rows() || ca.cols() != A.cols()) return false;
    return isZeroMat(form.P * A * form.Q - ca) && isZeroMat(form.P * B * form.Q - cb);
}

}  // namespace detail

/// Kronecker canonical form of the pencil A + tB with exact transforms;
/// the reconstruction identity P (A + tB) Q = blockdiag is verified before
/// returning. Blocks are ordered canonically: column minimal indices, the
/// regular part sorted by point polynomial, then row minimal indices.
template <typename F>
PencilForm<F> pencilDecompose(const Mat<F>& A, const Mat<F>& B) {
    constexpr int charP = FieldTraits<F>::characteristic;
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("pencilDecompose: shape mismatch");
    detail::PencilResult<F> raw = detail::pencilRec<F>(A, B, charP);

    // canonical ordering via row/column block permutations
    std::vector<std::size_t> order(raw.blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return raw.blocks[x].key() < raw.blocks[y].key();
    });
    std::vector<Eigen::Index> rowOff(raw.blocks.size() + 1, 0), colOff(raw.blocks.size() + 1, 0);
    for (std::size_t i = 0; i < raw.blocks.size(); ++i) {
        rowOff[i + 1] = rowOff[i] + raw.blocks[i].rows();
        colOff[i + 1] = colOff[i] + raw.blocks[i].cols();
    }
    Mat<F> Pperm = Mat<F>::Zero(A.rows(), A.rows());
    Mat<F> Qperm = Mat<F>::Zero(A.cols(), A.cols());
    Eigen::Index r = 0, c = 0;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const auto& blk = raw.blocks[order[oi]];
        for (Eigen::Index i = 0; i < blk.rows(); ++i) Pperm(r + i, rowOff[order[oi]] + i) = F(1);
        for (Eigen::Index j = 0; j < blk.cols(); ++j) Qperm(colOff[order[oi]] + j, c + j) = F(1);
        r += blk.rows();
        c += blk.cols();
    }
    PencilForm<F> form;
    for (auto oi : order) form.blocks.push_back(raw.blocks[oi]);
    form.P = Pperm * raw.P;
    form.Q = raw.Q * Qperm;
    if (!detail::pencilMatches(form, A, B))
        throw std::logic_error("pencilDecompose: reconstruction check failed");
    return form;
}

}  // namespace stabglue
