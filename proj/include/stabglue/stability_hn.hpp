#pragma once

#include "stabglue/stability.hpp"

namespace stabglue {

template <typename Obj>
struct HNResult {
    std::vector<std::pair<Obj, Phase>> factors;  // phases strictly decreasing
};

// --------------------------------------------------------------------------
// Presentation helpers
// --------------------------------------------------------------------------

/// Morphism object presented by delta : y -> c in the heart (d0-side data):
/// the object [fib(delta) -> y] with d0 = y and cof = c, realized strictly as
/// the chain map [y -> c] --id--> [y].
template <typename F>
MorphObject<F> deltaToMorph(const RepMap<F>& delta, int shiftBy = 0) {
    DerivedObject<F> X;
    X.q = delta.src.q;
    if (!delta.src.isZero()) X.terms[0] = delta.src;
    if (!delta.tgt.isZero()) X.terms[1] = delta.tgt;
    if (!delta.src.isZero() && !delta.tgt.isZero() && !delta.isZero()) X.diffs[0] = delta;
    DerivedObject<F> Y = fromRep(delta.src, 0);
    ChainMap<F> f;
    f.src = X;
    f.tgt = Y;
    if (!delta.src.isZero()) f.comps[0] = identityMap(delta.src);
    MorphObject<F> m;
    m.f = f;
    return morphShift(m, shiftBy);
}

/// Morphism object presented by eps : w -> x in the heart (d1-side data):
/// the object [x -> cof(eps)] with d1 = x and fib = w.
template <typename F>
MorphObject<F> epsToMorph(const RepMap<F>& eps, int shiftBy = 0) {
    ChainMap<F> e;
    e.src = fromRep(eps.src, 0);
    e.tgt = fromRep(eps.tgt, 0);
    if (!eps.src.isZero() && !eps.tgt.isZero() && !eps.isZero()) e.comps[0] = eps;
    ConeData<F> c = coneOf(e);
    MorphObject<F> m;
    m.f = c.fromTgt;  // x -> cone(eps)
    return morphShift(m, shiftBy);
}

/// Map induced on degree-n cohomology representations by a chain map.
template <typename F>
RepMap<F> cohomologyMap(const ChainMap<F>& u, int n) {
    auto kciS = kerCokerIm(u.src.diff(n));
    auto kciT = kerCokerIm(u.tgt.diff(n));
    auto corestrict = [](const RepMap<F>& incl, const RepMap<F>& map) {
        auto m1 = solveMatrix(incl.f1, map.f1);
        auto m2 = solveMatrix(incl.f2, map.f2);
        if (!m1 || !m2) throw std::logic_error("cohomologyMap: corestriction failed");
        return RepMap<F>(map.src, incl.src, *m1, *m2);
    };
    // quotient projections onto H^n
    auto hProj = [&](const DerivedObject<F>& x, const KerCokerIm<F>& kci) {
        RepMap<F> dprev = x.diff(n - 1);
        RepMap<F> toKer = corestrict(kci.kerIncl, dprev);
        auto q = kerCokerIm(toKer);
        return q;  // q.coker = H^n, q.cokerProj : ker -> H^n
    };
    auto qS = hProj(u.src, kciS);
    auto qT = hProj(u.tgt, kciT);
    // u maps ker into ker
    RepMap<F> uIntoKer = corestrict(kciT.kerIncl, compose(u.comp(n), kciS.kerIncl));
    // induced on quotients: solve Hu . projS = projT . uIntoKer
    RepMap<F> rhs = compose(qT.cokerProj, uIntoKer);
    auto h1 = solveMatrix(Mat<F>(qS.cokerProj.f1.transpose()), Mat<F>(rhs.f1.transpose()));
    auto h2 = solveMatrix(Mat<F>(qS.cokerProj.f2.transpose()), Mat<F>(rhs.f2.transpose()));
    if (!h1 || !h2) throw std::logic_error("cohomologyMap: quotient induction failed");
    return RepMap<F>(qS.coker, qT.coker, h1->transpose(), h2->transpose());
}

// --------------------------------------------------------------------------
// Base HN
// --------------------------------------------------------------------------

namespace detail {

/// HN data of a heart representation under a symbolic heart rule: factors in
/// strictly decreasing phase order, plus the filtration subobjects (each
/// included into m by an explicit monomorphism).
template <typename F>
struct HeartHN {
    std::vector<std::pair<Rep<F>, Phase>> factors;
    std::vector<RepMap<F>> partialIncl;  // partial sums F_1 < F_2 < ... = m
};

template <typename F>
HeartHN<F> heartHN(const StabCond& s, const Rep<F>& m) {
    HeartHN<F> out;
    if (m.isZero()) return out;
    if (detail::chargeIsDeg(s) || s.baseQuiver == Quiver::Vect || s.baseQuiver == Quiver::K2) {
        // single phase: everything in the heart is semistable
        auto ph = heartRepSemistable(s, m);
        if (!ph) throw UnsupportedRule("heartHN: unsupported heart chamber");
        out.factors.emplace_back(m, *ph);
        out.partialIncl.push_back(identityMap(m));
        return out;
    }
    // A2 with a generic charge
    auto dec = decomposeRep(m);
    Eigen::Index a = 0, b = 0, c = 0;
    for (const auto& [label, mult] : dec.factors) {
        if (label.key() == "S1") a = mult;
        if (label.key() == "S2") b = mult;
        if (label.key() == "P12") c = mult;
    }
    Phase p1 = heartPhase1(s), p2 = heartPhase2(s);
    // canonical model layout: P12^c (first), S1^a, S2^b
    const Eigen::Index d1 = m.dims[0], d2 = m.dims[1];
    auto repOf = [&](Eigen::Index na, Eigen::Index nb, Eigen::Index nc) {
        Rep<F> r = zeroRep<F>(Quiver::A2);
        for (Eigen::Index i = 0; i < nc; ++i) r = directSum(r, projectiveRep<F>(Quiver::A2, 1));
        for (Eigen::Index i = 0; i < na; ++i) r = directSum(r, simpleRep<F>(Quiver::A2, 1));
        for (Eigen::Index i = 0; i < nb; ++i) r = directSum(r, simpleRep<F>(Quiver::A2, 2));
        return r;
    };
    struct Atom {
        Phase ph;
        Rep<F> rep;
        Mat<F> incl1, incl2;  // inclusion into the canonical model
    };
    std::vector<Atom> atoms;
    if (phaseCmp(p2, p1) == Ord::GT) {
        // P12 destabilized by its socle: factors S2^{b+c} then S1^{a+c}
        Rep<F> canon = dec.canonical;
        if (b + c > 0) {
            Atom socle;
            socle.ph = p2;
            socle.rep = repOf(0, b + c, 0);
            socle.incl1 = Mat<F>::Zero(d1, 0);
            socle.incl2 = Mat<F>::Zero(d2, b + c);
            for (Eigen::Index i = 0; i < c; ++i) socle.incl2(i, i) = F(1);  // P12 socles
            for (Eigen::Index i = 0; i < b; ++i) socle.incl2(c + i, c + i) = F(1);
            out.factors.emplace_back(socle.rep, socle.ph);
            RepMap<F> f1Incl(socle.rep, canon, socle.incl1, socle.incl2);
            out.partialIncl.push_back(compose(dec.fromCanonical, f1Incl));
        }
        if (a + c > 0) {
            out.factors.emplace_back(repOf(a + c, 0, 0), p1);
            out.partialIncl.push_back(identityMap(m));
        }
        return out;
    }
    // P12 semistable: three summand families at phases p1, pP, p2
    struct Block {
        Phase ph;
        Eigen::Index na, nb, nc;
    };
    std::vector<Block> blocks;
    if (a > 0) blocks.push_back({p1, a, 0, 0});
    if (c > 0) blocks.push_back({phaseOf(s.charge.z1 + s.charge.z2), 0, 0, c});
    if (b > 0) blocks.push_back({p2, 0, b, 0});
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& x, const Block& y) { return phaseLt(y.ph, x.ph); });
    // merge equal phases
    std::vector<Block> merged;
    for (const auto& blk : blocks) {
        if (!merged.empty() && phaseEq(merged.back().ph, blk.ph)) {
            merged.back().na += blk.na;
            merged.back().nb += blk.nb;
            merged.back().nc += blk.nc;
        } else {
            merged.push_back(blk);
        }
    }
    // partial inclusions into the canonical model (P12^c | S1^a | S2^b layout)
    Eigen::Index ca = 0, cb = 0, cc2 = 0;
    Rep<F> canon = dec.canonical;
    for (const auto& blk : merged) {
        out.factors.emplace_back(repOf(blk.na, blk.nb, blk.nc), blk.ph);
        ca += blk.na;
        cb += blk.nb;
        cc2 += blk.nc;
        Rep<F> part = repOf(ca, cb, cc2);
        Mat<F> i1 = Mat<F>::Zero(d1, part.dims[0]);
        Mat<F> i2 = Mat<F>::Zero(d2, part.dims[1]);
        // part layout: P12^cc2 | S1^ca | S2^cb ; canonical: P12^c | S1^a | S2^b
        for (Eigen::Index i = 0; i < cc2; ++i) {
            i1(i, i) = F(1);
            i2(i, i) = F(1);
        }
        for (Eigen::Index i = 0; i < ca; ++i) i1(c + i, cc2 + i) = F(1);
        for (Eigen::Index i = 0; i < cb; ++i) i2(c + i, cc2 + i) = F(1);
        RepMap<F> incl(part, canon, std::move(i1), std::move(i2));
        out.partialIncl.push_back(compose(dec.fromCanonical, incl));
    }
    return out;
}

}  // namespace detail

/// Harder-Narasimhan filtration with respect to a base condition: split by
/// cohomological degree (hereditary), then filter each heart piece by the
/// symbolic rule.
template <typename F>
HNResult<DerivedObject<F>> hnBase(const StabCond& s, const DerivedObject<F>& x) {
    if (s.morphismCat) throw std::logic_error("hnBase: base condition required");
    if (s.kind != RuleKind::Heart)
        throw UnsupportedRule("hnBase: symbolic heart rule required (oracle engines "
                              "live in oracle.hpp)");
    HNResult<DerivedObject<F>> out;
    if (x.isZero()) return out;
    for (int n = x.lo(); n <= x.hi(); ++n) {
        Rep<F> h = cohomologyRep(x, n);
        if (h.isZero()) continue;
        auto hh = detail::heartHN(s, h);
        for (const auto& [rep, ph] : hh.factors) {
            Phase shifted = phaseShiftInt(ph, -n);
            out.factors.emplace_back(fromRep(rep, n),
                                     phaseShift(shifted, s.twist.phaseShiftAmount()));
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// Glued HN
// --------------------------------------------------------------------------

namespace detail {

/// Heart data of a shifted glued-heart object: the two heart representations
/// (delta-presentation for D0, eps-presentation for D1), the connecting map,
/// and the heart degree d (the object is a heart object shifted by -d).
template <typename F>
struct GluedHeartData {
    RepMap<F> connecting;  // D0: delta : H(d0 f) -> H(cof f); D1: eps : H(fib f) -> H(d1 f)
    int degree = 0;
};

template <typename F>
GluedHeartData<F> gluedHeartData(MorphSide side, const MorphObject<F>& f) {
    CofFib<F> cf = cofFib(f);
    GluedHeartData<F> out;
    if (side == MorphSide::D0) {
        CohData<F> cy = cohData(f.tgt());
        CohData<F> cc = cohData(cf.cof);
        int d;
        if (cy.single())
            d = cy.degree;
        else if (cy.acyclic() && cc.single())
            d = cc.degree;
        else
            throw UnsupportedRule("hnGlued: object is not in a shifted glued heart");
        if (!cc.acyclic() && (!cc.single() || (cy.single() && cc.degree != d)))
            throw UnsupportedRule("hnGlued: object is not in a shifted glued heart");
        out.degree = d;
        out.connecting = cohomologyMap(cf.universal, d);
        return out;
    }
    // D1: eps: fib f -> x
    CohData<F> cx = cohData(f.src());
    CohData<F> cfb = cohData(cf.fib);
    int d;
    if (cx.single())
        d = cx.degree;
    else if (cx.acyclic() && cfb.single())
        d = cfb.degree;
    else
        throw UnsupportedRule("hnGlued: object is not in a shifted glued heart");
    if (!cfb.acyclic() && (!cfb.single() || (cx.single() && cfb.degree != d)))
        throw UnsupportedRule("hnGlued: object is not in a shifted glued heart");
    out.degree = d;
    ChainMap<F> eps = shiftChainMap(cf.toShiftedSrc, -1);  // fib f -> x
    out.connecting = cohomologyMap(eps, d);
    return out;
}

}  // namespace detail

/// Harder-Narasimhan filtration in a glued condition for objects of the
/// (shifted) glued heart.
///
/// theta != 0 over a (Deg) base: exactly the paper's three-step filtration
/// through ker/im/cok of the connecting morphism.
///
/// theta = 0: the matched-truncation construction: take the base HN
/// filtrations of the two heart components and pair them through the
/// connecting map; each factor [fib(delta_phi) -> Y_phi] has both components
/// semistable of phase phi, hence is glued-semistable by the matching
/// criterion.
template <typename F>
HNResult<MorphObject<F>> hnGlued(const StabCond& s, const MorphObject<F>& f) {
    if (!s.morphismCat || s.kind != RuleKind::Glued)
        throw std::logic_error("hnGlued: glued condition required");
    if (!s.thetaStructure)
        throw UnsupportedRule("hnGlued: theta structure required");
    const Sixths theta = *s.thetaStructure;
    const StabCond sigma = [&] {
        if (s.side == MorphSide::D0) return *s.pieceL;
        return actGroup(*s.pieceR, GroupElt{Rational(1), -theta, 0});
    }();
    HNResult<MorphObject<F>> out;
    if (f.isZero()) return out;
    auto data = detail::gluedHeartData(s.side, f);
    const int d = data.degree;
    const RepMap<F>& conn = data.connecting;

    auto pushFactor = [&](const MorphObject<F>& m) {
        auto ph = isSemistableGlued(s, m);
        if (!ph) throw std::logic_error("hnGlued: produced a non-semistable factor");
        out.factors.emplace_back(m, *ph);
    };

    if (!theta.isZero()) {
        auto kci = kerCokerIm(conn);
        if (s.side == MorphSide::D0) {
            // s(ker delta), j_*(im delta), j_!((cok delta)[-1]), phases decreasing
            if (!kci.ker.isZero()) pushFactor(embed(EmbedKind::S, fromRep(kci.ker, d)));
            if (!kci.im.isZero()) pushFactor(embed(EmbedKind::JStar, fromRep(kci.im, d)));
            if (!kci.coker.isZero())
                pushFactor(embed(EmbedKind::JShriek, fromRep(kci.coker, d + 1)));
        } else {
            // j_*((ker eps)[1]), j_!(im eps), s(cok eps)
            if (!kci.ker.isZero()) pushFactor(embed(EmbedKind::JStar, fromRep(kci.ker, d - 1)));
            if (!kci.im.isZero()) pushFactor(embed(EmbedKind::JShriek, fromRep(kci.im, d)));
            if (!kci.coker.isZero()) pushFactor(embed(EmbedKind::S, fromRep(kci.coker, d)));
        }
        return out;
    }

    // theta = 0: matched truncation through the connecting map
    auto hnA = detail::heartHN(sigma, conn.src);
    auto hnB = detail::heartHN(sigma, conn.tgt);
    // collect the distinct phases, descending
    std::vector<Phase> phases;
    for (const auto& [r, p] : hnA.factors) phases.push_back(p);
    for (const auto& [r, p] : hnB.factors) phases.push_back(p);
    std::sort(phases.begin(), phases.end(),
              [](const Phase& x, const Phase& y) { return phaseLt(y, x); });
    phases.erase(std::unique(phases.begin(), phases.end(),
                             [](const Phase& x, const Phase& y) { return phaseEq(x, y); }),
                 phases.end());
    auto partialAt = [&](const detail::HeartHN<F>& hn, const Rep<F>& whole,
                         const Phase& ph, bool strictly) -> RepMap<F> {
        // inclusion of the part with phases > ph (strictly) or >= ph
        RepMap<F> incl = zeroMap(zeroRep<F>(whole.q), whole);
        for (std::size_t i = 0; i < hn.factors.size(); ++i) {
            Ord c = phaseCmp(hn.factors[i].second, ph);
            bool keep = strictly ? (c == Ord::GT) : (c != Ord::LT);
            if (keep) incl = hn.partialIncl[i];
        }
        return incl;
    };
    for (const auto& ph : phases) {
        RepMap<F> aGe = partialAt(hnA, conn.src, ph, false);
        RepMap<F> aGt = partialAt(hnA, conn.src, ph, true);
        RepMap<F> bGe = partialAt(hnB, conn.tgt, ph, false);
        RepMap<F> bGt = partialAt(hnB, conn.tgt, ph, true);
        // connecting map restricted to the >= phi parts, through the inclusion
        auto restrictThrough = [&](const RepMap<F>& inclB, const RepMap<F>& inclA) {
            RepMap<F> mapped = compose(conn, inclA);
            auto m1 = solveMatrix(inclB.f1, mapped.f1);
            auto m2 = solveMatrix(inclB.f2, mapped.f2);
            if (!m1 || !m2)
                throw std::logic_error("hnGlued: HN truncations not respected by delta");
            return RepMap<F>(inclA.src, inclB.src, *m1, *m2);
        };
        RepMap<F> rGe = restrictThrough(bGe, aGe);
        // subquotient pieces
        auto quotientOf = [&](const RepMap<F>& big, const RepMap<F>& small) {
            // small and big are partials of the same object; express small
            // inside big and take the cokernel
            auto m1 = solveMatrix(big.f1, small.f1);
            auto m2 = solveMatrix(big.f2, small.f2);
            if (!m1 || !m2) throw std::logic_error("hnGlued: partial chain broken");
            RepMap<F> inBig(small.src, big.src, *m1, *m2);
            return kerCokerIm(inBig);
        };
        auto qa = quotientOf(aGe, aGt);
        auto qb = quotientOf(bGe, bGt);
        if (qa.coker.isZero() && qb.coker.isZero()) continue;
        // induced map on the graded piece
        RepMap<F> rhs = compose(qb.cokerProj, rGe);
        auto m1 = solveMatrix(Mat<F>(qa.cokerProj.f1.transpose()), Mat<F>(rhs.f1.transpose()));
        auto m2 = solveMatrix(Mat<F>(qa.cokerProj.f2.transpose()), Mat<F>(rhs.f2.transpose()));
        if (!m1 || !m2) throw std::logic_error("hnGlued: graded induction failed");
        RepMap<F> graded(qa.coker, qb.coker, m1->transpose(), m2->transpose());
        MorphObject<F> factor = s.side == MorphSide::D0 ? deltaToMorph(graded, -d)
                                                        : epsToMorph(graded, -d);
        pushFactor(factor);
    }
    return out;
}

/// HN invariants: strictly decreasing phases, semistable factors, exact
/// charge additivity.
template <typename F>
bool validateHNGlued(const StabCond& s, const MorphObject<F>& f,
                     const HNResult<MorphObject<F>>& res, std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    ExactComplex sum;
    for (std::size_t i = 0; i < res.factors.size(); ++i) {
        auto ph = isSemistableGlued(s, res.factors[i].first);
        if (!ph) return fail("factor " + std::to_string(i) + " is not semistable");
        if (!phaseEq(*ph, res.factors[i].second))
            return fail("factor " + std::to_string(i) + " phase mismatch");
        if (i + 1 < res.factors.size() &&
            phaseCmp(res.factors[i].second, res.factors[i + 1].second) != Ord::GT)
            return fail("phases not strictly decreasing at " + std::to_string(i));
        sum += chargeEval(s, res.factors[i].first);
    }
    if (!(sum == chargeEval(s, f))) return fail("charge additivity fails");
    return true;
}

template <typename F>
bool validateHNBase(const StabCond& s, const DerivedObject<F>& x,
                    const HNResult<DerivedObject<F>>& res, std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    ExactComplex sum;
    for (std::size_t i = 0; i < res.factors.size(); ++i) {
        auto ph = isSemistableBase(s, res.factors[i].first);
        if (!ph) return fail("factor " + std::to_string(i) + " is not semistable");
        if (!phaseEq(*ph, res.factors[i].second))
            return fail("factor " + std::to_string(i) + " phase mismatch");
        if (i + 1 < res.factors.size() &&
            phaseCmp(res.factors[i].second, res.factors[i + 1].second) != Ord::GT)
            return fail("phases not strictly decreasing at " + std::to_string(i));
        K0Class k = k0Class(res.factors[i].first);
        sum += chargeBase(s, k);
    }
    if (!(sum == chargeBase(s, k0Class(x)))) return fail("charge additivity fails");
    return true;
}

}  // namespace stabglue
