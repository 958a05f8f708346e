#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stabglue/gf.hpp"
#include "stabglue/linalg.hpp"
#include "stabglue/poly.hpp"

#include <random>

using namespace stabglue;

namespace {

template <typename F, typename Rng>
Mat<F> randomMat(Rng& rng, int rows, int cols, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    Mat<F> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = F(d(rng));
    return m;
}

}  // namespace

TEST_CASE("kernelBasis trivial cases") {
    Mat<QuadRat> id = Mat<QuadRat>::Identity(2, 2);
    CHECK(kernelBasis(id).cols() == 0);
    Mat<QuadRat> z = Mat<QuadRat>::Zero(2, 3);
    CHECK(kernelBasis(z).cols() == 3);
}

TEST_CASE("kernelBasis of [1 1] is spanned by (1,-1)") {
    Mat<QuadRat> m(1, 2);
    m << QuadRat(1), QuadRat(1);
    Mat<QuadRat> k = kernelBasis(m);
    REQUIRE(k.cols() == 1);
    // proportional to (1,-1): cross term vanishes
    CHECK(k(0, 0) * QuadRat(-1) - k(1, 0) * QuadRat(1) == QuadRat(0));
    CHECK(isZeroMat(m * k));
}

TEST_CASE("imageCokernel trivial and rank-1 cases") {
    Mat<QuadRat> id = Mat<QuadRat>::Identity(2, 2);
    auto [img, coker] = imageCokernel(id);
    CHECK(img.cols() == 2);
    CHECK(coker.rows() == 0);

    Mat<QuadRat> z = Mat<QuadRat>::Zero(1, 2);  // zero map k^2 -> k
    auto [img2, coker2] = imageCokernel(z);
    CHECK(img2.cols() == 0);
    CHECK(coker2.rows() == 1);
    CHECK(coker2(0, 0) == QuadRat(1));

    Mat<QuadRat> m(2, 2);
    m << QuadRat(1), QuadRat(0), QuadRat(0), QuadRat(0);
    auto [img3, coker3] = imageCokernel(m);
    CHECK(img3.cols() == 1);
    CHECK(coker3.rows() == 1);
    CHECK(isZeroMat(coker3 * m));
}

TEST_CASE("rank-nullity on random matrices, two elimination orders") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> dim(0, 6);
        int r = dim(rng), c = dim(rng);
        Mat<QuadRat> m = randomMat<QuadRat>(rng, r, c);
        Eigen::Index rk = rank(m);
        CHECK(rk + kernelBasis(m).cols() == c);
        // independent elimination order: transpose
        Mat<QuadRat> mt = m.transpose();
        CHECK(rank(mt) == rk);
        auto [img, coker] = imageCokernel(m);
        CHECK(img.cols() == rk);
        CHECK(coker.rows() == r - rk);
        CHECK(isZeroMat(coker * m));
        CHECK(rank(coker) == r - rk);
        Mat<QuadRat> k = kernelBasis(m);
        if (k.cols() > 0) CHECK(isZeroMat(m * k));
    }
}

TEST_CASE("GF(p) agrees with rational elimination on integer matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> dim(1, 5), ent(0, 1);
        int r = dim(rng), c = dim(rng);
        Mat<QuadRat> mq(r, c);
        Mat<GF2> m2(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                int e = ent(rng);
                mq(i, j) = QuadRat(e);
                m2(i, j) = GF2(e);
            }
        // over GF(2), entries 0/1: ranks can differ from Q in general, but
        // kernel dims must satisfy rank-nullity in both fields
        CHECK(rank(m2) + kernelBasis(m2).cols() == c);
        CHECK(rank(mq) + kernelBasis(mq).cols() == c);
        CHECK(rank(m2) <= rank(mq));
    }
}

TEST_CASE("solve and inverse") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        Mat<QuadRat> a = randomMat<QuadRat>(rng, 4, 4);
        if (!isInvertible(a)) continue;
        Mat<QuadRat> ai = inverse(a);
        CHECK(Mat<QuadRat>(a * ai) == Mat<QuadRat>(Mat<QuadRat>::Identity(4, 4)));
        Vec<QuadRat> b = randomMat<QuadRat>(rng, 4, 1);
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(Mat<QuadRat>(a * *x) == Mat<QuadRat>(b));
    }
    // inconsistent system
    Mat<QuadRat> a(2, 1);
    a << QuadRat(1), QuadRat(1);
    Vec<QuadRat> b(2);
    b << QuadRat(1), QuadRat(2);
    CHECK(!solve(a, b).has_value());
}

TEST_CASE("det multiplicative and detects singularity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        Mat<QuadRat> a = randomMat<QuadRat>(rng, 3, 3);
        Mat<QuadRat> b = randomMat<QuadRat>(rng, 3, 3);
        CHECK(det<QuadRat>(a * b) == det(a) * det(b));
        CHECK((isZeroScalar(det(a)) == !isInvertible(a)));
    }
}

TEST_CASE("completeBasis extends independent columns") {
    Mat<QuadRat> b(3, 1);
    b << QuadRat(1), QuadRat(1), QuadRat(0);
    Mat<QuadRat> full = completeBasis(b, 3);
    CHECK(isInvertible(full));
    CHECK(full.col(0) == b.col(0));
}

TEST_CASE("poly divmod gcd squarefree") {
    using P = Poly<QuadRat>;
    P t = P::t();
    P p = P::linear(QuadRat(1)) * P::linear(QuadRat(1)) * P::linear(QuadRat(2));
    auto [q, r] = divmod(p, P::linear(QuadRat(1)));
    CHECK(r.isZero());
    CHECK(q == P::linear(QuadRat(1)) * P::linear(QuadRat(2)));
    P g = gcd(p, p.derivative());
    CHECK(g == P::linear(QuadRat(1)));
    P sf = squarefreePart(p);
    CHECK(sf == (P::linear(QuadRat(1)) * P::linear(QuadRat(2))).monic());
    // char p: (t^2)' = 0 over GF(2)
    Poly<GF2> t2(std::vector<GF2>{GF2(0), GF2(0), GF2(1)});
    CHECK(squarefreePart(t2, 2) == Poly<GF2>::t());
}

TEST_CASE("minimal polynomial of diagonalizable and nilpotent matrices") {
    Mat<QuadRat> d = Mat<QuadRat>::Zero(3, 3);
    d(0, 0) = QuadRat(1);
    d(1, 1) = QuadRat(1);
    d(2, 2) = QuadRat(2);
    Poly<QuadRat> mp = minimalPolynomial(d);
    CHECK(mp == Poly<QuadRat>::linear(QuadRat(1)) * Poly<QuadRat>::linear(QuadRat(2)));
    Mat<QuadRat> n = Mat<QuadRat>::Zero(3, 3);
    n(0, 1) = QuadRat(1);
    n(1, 2) = QuadRat(1);
    Poly<QuadRat> mpn = minimalPolynomial(n);
    CHECK(mpn.degree() == 3);
    CHECK(isZeroMat(evalAt(mpn, n)));
}
