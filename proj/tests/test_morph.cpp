#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stabglue/morph.hpp"

using namespace stabglue;

namespace {

// Vect-base objects
DerivedObject<QuadRat> vk(int sh = 0) {
    return shift(fromRep(simpleRep<QuadRat>(Quiver::Vect, 1)), sh);
}

// A2-base objects for the general machinery
DerivedObject<QuadRat> s1() { return fromRep(simpleRep<QuadRat>(Quiver::A2, 1)); }
DerivedObject<QuadRat> s2() { return fromRep(simpleRep<QuadRat>(Quiver::A2, 2)); }
DerivedObject<QuadRat> p12() { return fromRep(projectiveRep<QuadRat>(Quiver::A2, 1)); }

MorphObject<QuadRat> inclS2P12() {
    MorphObject<QuadRat> m;
    m.f.src = s2();
    m.f.tgt = p12();
    m.f.comps[0] = RepMap<QuadRat>(m.f.src.term(0), m.f.tgt.term(0), Mat<QuadRat>::Zero(1, 0),
                                   Mat<QuadRat>::Identity(1, 1));
    return m;
}

MorphObject<QuadRat> zeroMapKK(int srcShift, int tgtShift) {
    MorphObject<QuadRat> m;
    m.f = zeroChainMap(vk(srcShift), vk(tgtShift));
    return m;
}

}  // namespace

TEST_CASE("project and embed") {
    auto j = embed(EmbedKind::JShriek, p12());
    CHECK(project(MorphSide::D0, j).isZero());
    CHECK(project(MorphSide::D1, j).totalDim() == 2);
    auto s = embed(EmbedKind::S, s1());
    CHECK(project(MorphSide::D1, s).totalDim() == 1);
    auto jstar = embed(EmbedKind::JStar, s2());
    CHECK(project(MorphSide::D1, jstar).isZero());
    CHECK(project(MorphSide::D0, jstar).totalDim() == 1);
}

TEST_CASE("cofFib: identity, jStar, and the inclusion") {
    auto sid = embed(EmbedKind::S, p12());
    auto c1 = cofFib(sid);
    CHECK(normalizeSplit(c1.cof).pieces.empty());

    auto js = embed(EmbedKind::JStar, s1());
    auto c2 = cofFib(js);
    auto p2 = normalizeSplit(c2.cof).pieces;
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].label.key() == "S1");
    CHECK(p2[0].degree == 0);

    auto c3 = cofFib(inclS2P12());
    auto pc = normalizeSplit(c3.cof).pieces;
    REQUIRE(pc.size() == 1);
    CHECK(pc[0].label.key() == "S1");
    CHECK(pc[0].degree == 0);
    auto pf = normalizeSplit(c3.fib).pieces;
    REQUIRE(pf.size() == 1);
    CHECK(pf[0].label.key() == "S1");
    CHECK(pf[0].degree == 1);  // S1[-1]
}

TEST_CASE("adjunction dimension identities d0 -| s -| d1") {
    std::vector<DerivedObject<QuadRat>> objs{s1(), s2(), p12(), shift(s1(), 1),
                                             directSum(s1(), s2())};
    std::vector<MorphObject<QuadRat>> gs{inclS2P12(), embed(EmbedKind::JShriek, s1()),
                                         embed(EmbedKind::JStar, p12()),
                                         embed(EmbedKind::S, s2())};
    for (const auto& x : objs)
        for (const auto& g : gs) {
            // Hom(s x, g) = Hom(x, d1 g)
            CHECK(homDimMorph(embed(EmbedKind::S, x), g, 0) ==
                  homDim(x, project(MorphSide::D1, g), 0));
            // Hom(g, s x) = Hom(d0 g, x)
            CHECK(homDimMorph(g, embed(EmbedKind::S, x), 0) ==
                  homDim(project(MorphSide::D0, g), x, 0));
        }
}

TEST_CASE("paper Hom values for the embeddings") {
    // Hom(j_!(y), s(z)) = 0
    CHECK(homDimMorph(embed(EmbedKind::JShriek, s1()), embed(EmbedKind::S, s2()), 0) == 0);
    CHECK(homDimMorph(embed(EmbedKind::JShriek, p12()), embed(EmbedKind::S, p12()), 0) == 0);
    // Hom(s(x), j_!(y)) = Hom(x, y)
    CHECK(homDimMorph(embed(EmbedKind::S, s2()), embed(EmbedKind::JShriek, p12()), 0) ==
          homDim(s2(), p12(), 0));
    CHECK(homDimMorph(embed(EmbedKind::S, p12()), embed(EmbedKind::JShriek, s1()), 0) ==
          homDim(p12(), s1(), 0));
}

TEST_CASE("semiorthogonality of both SODs") {
    std::vector<DerivedObject<QuadRat>> objs{s1(), s2(), p12()};
    for (const auto& x : objs)
        for (const auto& y : objs) {
            // D0 = (s-, j_!-): Hom^{<=0}(j_!(y'), s(x')) with R = j_!, L = s
            for (int n = -2; n <= 0; ++n) {
                CHECK(homDimMorph(embed(EmbedKind::JShriek, y), embed(EmbedKind::S, x), n) == 0);
                // D1 = (j_*-, s-): R = s, L = j_*
                CHECK(homDimMorph(embed(EmbedKind::S, y), embed(EmbedKind::JStar, x), n) == 0);
            }
        }
}

TEST_CASE("sod triangles are distinguished (cone checks)") {
    // over the Vect base, where morphIso uses the dictionary
    MorphObject<QuadRat> f = zeroMapKK(0, 0);
    CHECK(sodTriangleCheck(MorphSide::D0, f));
    CHECK(sodTriangleCheck(MorphSide::D1, f));
    auto sx = embed(EmbedKind::S, vk());
    CHECK(sodTriangleCheck(MorphSide::D0, sx));
    CHECK(sodTriangleCheck(MorphSide::D1, sx));
    auto jx = embed(EmbedKind::JShriek, vk());
    CHECK(sodTriangleCheck(MorphSide::D0, jx));
    CHECK(sodTriangleCheck(MorphSide::D1, jx));
    // general base: two maps over A2
    CHECK(sodTriangleCheck(MorphSide::D0, inclS2P12()));
    CHECK(sodTriangleCheck(MorphSide::D1, inclS2P12()));
}

TEST_CASE("liftSquare: identity and strictly commuting squares") {
    auto a = inclS2P12();
    auto ma = MorphModel<QuadRat>::prepare(a);
    auto [e, freedom] = liftSquare(ma, ma, identityChainMap(a.src()), identityChainMap(a.tgt()));
    bool hZero = e.h.empty();
    CHECK(hZero);
    CHECK(freedom == 0);
}

TEST_CASE("liftSquare on the zero-composable square over Vect") {
    // f = g = [k -0-> k], tau1 = id, tau0 = 0; difference is zero in cohomology
    MorphObject<QuadRat> f = zeroMapKK(0, 0);
    auto mf = MorphModel<QuadRat>::prepare(f);
    auto [e, freedom] = liftSquare(mf, mf, identityChainMap(f.src()),
                                   zeroChainMap(f.tgt(), f.tgt()));
    (void)e;
    // solution space dim = dim H^{-1}(Map(X, W)) = dim H^{-1}(Map(k, k)) = 0
    CHECK(freedom == 0);
    // a square that does not commute up to homotopy must be rejected
    auto sx = embed(EmbedKind::S, vk());
    auto ms = MorphModel<QuadRat>::prepare(sx);
    CHECK_THROWS_AS(
        liftSquare(ms, ms, identityChainMap(sx.src()), zeroChainMap(sx.tgt(), sx.tgt())),
        std::invalid_argument);
}

TEST_CASE("fullness: commuting pairs lift on a sampled set") {
    std::vector<MorphObject<QuadRat>> objs{inclS2P12(), embed(EmbedKind::S, s1()),
                                           embed(EmbedKind::JShriek, s2()),
                                           embed(EmbedKind::JStar, p12())};
    for (const auto& a : objs)
        for (const auto& b : objs) {
            auto ma = MorphModel<QuadRat>::prepare(a);
            auto mb = MorphModel<QuadRat>::prepare(b);
            // tau1 = 0, tau0 = 0 always commutes; must lift with h from the
            // solution space
            auto [e, fr] = liftSquare(ma, mb, zeroChainMap(a.src(), b.src()),
                                      zeroChainMap(a.tgt(), b.tgt()));
            (void)e;
            (void)fr;
            CHECK(true);
        }
}

TEST_CASE("serre over Vect: the three indecomposables cycle") {
    auto jstar = embed(EmbedKind::JStar, vk());
    auto S1x = serreMorph(jstar);
    // S(j_*(k)) = s(k)
    CHECK(morphIso(S1x, embed(EmbedKind::S, vk())));
    // S(s(k)) = j_!(k)
    auto S2x = serreMorph(embed(EmbedKind::S, vk()));
    CHECK(morphIso(S2x, embed(EmbedKind::JShriek, vk())));
    // S(j_!(k)) = j_*(k)[1]
    auto S3x = serreMorph(embed(EmbedKind::JShriek, vk()));
    CHECK(morphIso(S3x, morphShift(embed(EmbedKind::JStar, vk()), 1)));
}

TEST_CASE("serre of the zero map: S([k -0-> k]) = [k -> k + k[1]]") {
    MorphObject<QuadRat> f = zeroMapKK(0, 0);
    auto Sf = serreMorph(f);
    // cone of the zero map k -> k is k + k[1]; u: k -> cone is the inclusion
    auto dec = normalizeSplit(toA2Complex(Sf)).pieces;
    // d0 part = k, cof = k + k[1]: as A2 complex, classify
    // S(f) = [u: k -> k + k[1]]: A2 complex with H^{-1} = S1? compute directly:
    // expected: j_*(k)[1] + s(k)-extension... verify by Serre duality instead:
    for (const auto& g : {embed(EmbedKind::S, vk()), embed(EmbedKind::JShriek, vk()),
                          embed(EmbedKind::JStar, vk())})
        CHECK(homDimMorph(f, g, 0) == homDimMorph(g, Sf, 0));
    (void)dec;
}

TEST_CASE("S^3 = [1] on shifted indecomposables over Vect") {
    std::vector<MorphObject<QuadRat>> indecs{embed(EmbedKind::S, vk()),
                                             embed(EmbedKind::JShriek, vk()),
                                             embed(EmbedKind::JStar, vk())};
    for (const auto& m : indecs)
        for (int sh = -1; sh <= 1; ++sh) {
            auto x = morphShift(m, sh);
            auto Sx = serreMorph(serreMorph(serreMorph(x)));
            CHECK(morphIso(Sx, morphShift(x, 1)));
        }
}

TEST_CASE("serre duality for hom dims over Vect") {
    std::vector<MorphObject<QuadRat>> objs;
    for (int sh = -1; sh <= 1; ++sh) {
        objs.push_back(morphShift(embed(EmbedKind::S, vk()), sh));
        objs.push_back(morphShift(embed(EmbedKind::JShriek, vk()), sh));
        objs.push_back(morphShift(embed(EmbedKind::JStar, vk()), sh));
    }
    for (const auto& a : objs)
        for (const auto& b : objs)
            CHECK(homDimMorph(a, b, 0) == homDimMorph(b, serreMorph(a), 0));
}

TEST_CASE("serre with Nakayama base on A2 morphism objects") {
    // Serre duality Hom(x,y) = D Hom(y, Sx) at the base level first
    std::vector<DerivedObject<QuadRat>> objs{s1(), s2(), p12(), shift(s2(), 1)};
    for (const auto& x : objs) {
        ProjComplex<QuadRat> px = projModel(x);
        DerivedObject<QuadRat> Sx = nakayamaComplex(px);
        for (const auto& y : objs)
            for (int n = -2; n <= 2; ++n)
                CHECK(homDim(x, y, n) == homDim(y, Sx, -n));
    }
}

TEST_CASE("section 6 dictionary: homDimMorph equals A2 homDim") {
    std::vector<MorphObject<QuadRat>> objs;
    for (int sh = -1; sh <= 1; ++sh) {
        objs.push_back(morphShift(embed(EmbedKind::S, vk()), sh));
        objs.push_back(morphShift(embed(EmbedKind::JShriek, vk()), sh));
        objs.push_back(morphShift(embed(EmbedKind::JStar, vk()), sh));
    }
    objs.push_back(zeroMapKK(0, 0));
    for (const auto& a : objs)
        for (const auto& b : objs)
            for (int n = -1; n <= 1; ++n)
                CHECK(homDimMorph(a, b, n) == homDim(toA2Complex(a), toA2Complex(b), n));
}

TEST_CASE("dictionary identifies the three indecomposables") {
    auto sA2 = normalizeSplit(toA2Complex(embed(EmbedKind::S, vk()))).pieces;
    REQUIRE(sA2.size() == 1);
    CHECK(sA2[0].label.key() == "P12");
    auto jA2 = normalizeSplit(toA2Complex(embed(EmbedKind::JShriek, vk()))).pieces;
    REQUIRE(jA2.size() == 1);
    CHECK(jA2[0].label.key() == "S1");
    auto j2A2 = normalizeSplit(toA2Complex(embed(EmbedKind::JStar, vk()))).pieces;
    REQUIRE(j2A2.size() == 1);
    CHECK(j2A2[0].label.key() == "S2");
}

TEST_CASE("coneMorph of identity is zero; K0 pair additivity") {
    auto a = inclS2P12();
    auto ma = MorphModel<QuadRat>::prepare(a);
    auto id = identityMorphHom(ma);
    auto c = coneMorph(ma, ma, id);
    CHECK(homDimMorph(c, c, 0) == 0);  // contractible
    auto [ky, kc] = k0Pair(a);
    CHECK(ky == K0Class{1, 1});
    CHECK(kc == K0Class{1, 0});
}

TEST_CASE("morphIso distinguishes and identifies") {
    CHECK(morphIso(zeroMapKK(0, 0),
                   morphDirectSum(embed(EmbedKind::JShriek, vk()), embed(EmbedKind::JStar, vk()))));
    CHECK(!morphIso(embed(EmbedKind::S, vk()), embed(EmbedKind::JShriek, vk())));
    // A2 base via mutual-inverse search
    CHECK(morphIso(inclS2P12(), inclS2P12()));
    CHECK(!morphIso(inclS2P12(), embed(EmbedKind::S, p12())));
}
