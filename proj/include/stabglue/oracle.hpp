#pragma once

#include "stabglue/stability_hn.hpp"

#include <map>
#include <string>
#include <vector>

namespace stabglue {

/// Brute-force semistability and HN search over a finite field by exhaustive
/// subobject enumeration. Independent of the symbolic rules: only the exact
/// charge and the subobject lattice are used.
namespace oracle {

/// phase of a nonzero heart class under a base charge, cached by class.
class PhaseTable {
  public:
    explicit PhaseTable(CentralCharge z) : z_(std::move(z)) {}

    const Phase& at(const K0Class& k) {
        auto key = std::make_pair(k[0], k[1]);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        ExactComplex v = z_.eval(k);
        return cache_.emplace(key, phaseOf(v)).first->second;
    }

  private:
    CentralCharge z_;
    std::map<std::pair<long, long>, Phase> cache_;
};

template <typename F>
K0Class repClass(const Rep<F>& m) {
    return {static_cast<long>(m.dims[0]), static_cast<long>(m.dims[1])};
}

/// Maximal destabilizing subobject of a heart representation: the sum of all
/// subobjects of maximal phase (canonical, no tie-breaking).
template <typename F>
struct BaseDestabilizer {
    bool semistable;
    Rep<F> sub;          // the maximal-phase subobject (= m when semistable)
    RepMap<F> inclusion;
};

template <typename F>
BaseDestabilizer<F> maxDestabilizer(PhaseTable& phases, const Rep<F>& m,
                                    unsigned long long budget = 2'000'000ULL) {
    auto subs = enumerateSubreps(m, budget);
    std::optional<Phase> best;
    for (const auto& s : subs) {
        if (s.src.isZero()) continue;
        const Phase& p = phases.at(repClass(s.src));
        if (!best || phaseLt(*best, p)) best = p;
    }
    if (!best) throw std::logic_error("maxDestabilizer: zero object");
    // sum all subobjects realizing the maximal phase
    Mat<F> span1 = Mat<F>::Zero(m.dims[0], 0);
    Mat<F> span2 = Mat<F>::Zero(m.dims[1], 0);
    for (const auto& s : subs) {
        if (s.src.isZero()) continue;
        if (phaseEq(phases.at(repClass(s.src)), *best)) {
            span1 = hstack(span1, s.f1);
            span2 = hstack(span2, s.f2);
        }
    }
    Mat<F> b1 = imageBasis(span1);
    Mat<F> b2 = imageBasis(span2);
    std::vector<Mat<F>> arrows;
    for (std::size_t a = 0; a < m.arrows.size(); ++a) {
        auto x = solveMatrix(b2, Mat<F>(m.arrows[a] * b1));
        if (!x) throw std::logic_error("maxDestabilizer: span not arrow-closed");
        arrows.push_back(*x);
    }
    Rep<F> sub(m.q, b1.cols(), b2.cols(), std::move(arrows));
    BaseDestabilizer<F> out;
    out.sub = sub;
    out.inclusion = RepMap<F>(sub, m, b1, b2);
    // the improper subobject is enumerated too, so best >= phase(m); strict
    // destabilization means best > phase(m)
    out.semistable = !phaseLt(phases.at(repClass(m)), *best);
    return out;
}

template <typename F>
std::optional<Phase> semistableHeart(PhaseTable& phases, const Rep<F>& m) {
    if (m.isZero()) return std::nullopt;
    auto d = maxDestabilizer(phases, m);
    if (!d.semistable) return std::nullopt;
    return phases.at(repClass(m));
}

/// Exhaustive HN filtration of a heart representation: peel maximal
/// destabilizers greedily.
template <typename F>
std::vector<std::pair<Rep<F>, Phase>> hnHeart(PhaseTable& phases, Rep<F> m) {
    std::vector<std::pair<Rep<F>, Phase>> out;
    while (!m.isZero()) {
        auto d = maxDestabilizer(phases, m);
        if (d.semistable) {
            out.emplace_back(m, phases.at(repClass(m)));
            break;
        }
        out.emplace_back(d.sub, phases.at(repClass(d.sub)));
        m = kerCokerIm(d.inclusion).coker;
    }
    return out;
}

/// Brute-force base HN of a shifted sum: by hereditary splitting, run per
/// cohomology degree.
template <typename F>
HNResult<DerivedObject<F>> hnBaseBrute(const StabCond& s, const DerivedObject<F>& x) {
    PhaseTable phases(s.charge);
    HNResult<DerivedObject<F>> out;
    if (x.isZero()) return out;
    for (int n = x.lo(); n <= x.hi(); ++n) {
        Rep<F> h = cohomologyRep(x, n);
        if (h.isZero()) continue;
        for (auto& [rep, ph] : hnHeart(phases, h)) {
            Phase shifted = phaseShiftInt(ph, -n);
            out.factors.emplace_back(fromRep(rep, n),
                                     phaseShift(shifted, s.twist.phaseShiftAmount()));
        }
    }
    return out;
}

template <typename F>
std::optional<Phase> semistableBaseBrute(const StabCond& s, const DerivedObject<F>& x) {
    PhaseTable phases(s.charge);
    auto conc = detail::concentrated(x);
    if (!conc) return std::nullopt;
    auto ph = semistableHeart(phases, conc->first);
    if (!ph) return std::nullopt;
    Phase shifted = phaseShiftInt(*ph, -conc->second);
    return phaseShift(shifted, s.twist.phaseShiftAmount());
}

// --------------------------------------------------------------------------
// Glued-heart oracle: objects of the glued heart are presented by a morphism
// between heart representations (delta for the D0 side, eps for D1); their
// subobjects are the componentwise subobject pairs compatible with the map.
// --------------------------------------------------------------------------

template <typename F>
struct DeltaObject {
    RepMap<F> map;  // D0: delta : y -> c; D1: eps : w -> x
    bool isZero() const { return map.src.isZero() && map.tgt.isZero(); }
};

/// Exact phase table for glued charges over pairs of heart classes.
class GluedPhaseTable {
  public:
    GluedPhaseTable(MorphSide side, ChargePair cp) : side_(side), cp_(std::move(cp)) {}

    /// classes (a, b) of the two components of the presentation; for D0 the
    /// pair is (k0 d0, k0 cof) = ([y], [c]); for D1 the presentation (w, x)
    /// has k0 d0 = [x] - [w] and k0 cof = -[w].
    const Phase& at(const K0Class& a, const K0Class& b) {
        auto key = std::make_tuple(a[0], a[1], b[0], b[1]);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        ExactComplex v;
        if (side_ == MorphSide::D0) {
            v = cp_.eval(a, b);
        } else {
            K0Class kd0 = k0Sub(b, a);
            K0Class kcof = k0Neg(a);
            v = cp_.eval(kd0, kcof);
        }
        return cache_.emplace(key, phaseOf(v)).first->second;
    }

  private:
    MorphSide side_;
    ChargePair cp_;
    std::map<std::tuple<long, long, long, long>, Phase> cache_;
};

template <typename F>
struct GluedSub {
    Mat<F> b1srcV1, b1srcV2;  // subspace bases at src vertices
    Mat<F> b1tgtV1, b1tgtV2;  // subspace bases at tgt vertices
    K0Class srcClass, tgtClass;
};

/// All subobjects of a delta-presented glued-heart object: pairs of
/// subrepresentations (U of src, V of tgt) with map(U) inside V.
template <typename F>
std::vector<GluedSub<F>> gluedSubobjects(const DeltaObject<F>& d,
                                         unsigned long long budget = 2'000'000ULL) {
    auto subsSrc = enumerateSubreps(d.map.src, budget);
    auto subsTgt = enumerateSubreps(d.map.tgt, budget);
    std::vector<GluedSub<F>> out;
    for (const auto& us : subsSrc) {
        Mat<F> m1 = d.map.f1 * us.f1;
        Mat<F> m2 = d.map.f2 * us.f2;
        for (const auto& vt : subsTgt) {
            if (!solveMatrix(vt.f1, m1).has_value()) continue;
            if (!solveMatrix(vt.f2, m2).has_value()) continue;
            GluedSub<F> g;
            g.b1srcV1 = us.f1;
            g.b1srcV2 = us.f2;
            g.b1tgtV1 = vt.f1;
            g.b1tgtV2 = vt.f2;
            g.srcClass = repClass(us.src);
            g.tgtClass = repClass(vt.src);
            out.push_back(std::move(g));
        }
    }
    return out;
}

template <typename F>
std::optional<Phase> semistableGluedBrute(GluedPhaseTable& phases, const DeltaObject<F>& d) {
    if (d.isZero()) return std::nullopt;
    K0Class ka = repClass(d.map.src), kb = repClass(d.map.tgt);
    const Phase whole = phases.at(ka, kb);
    for (const auto& g : gluedSubobjects(d)) {
        if (g.srcClass[0] + g.srcClass[1] + g.tgtClass[0] + g.tgtClass[1] == 0) continue;
        if (phaseLt(whole, phases.at(g.srcClass, g.tgtClass))) return std::nullopt;
    }
    return whole;
}

/// Quotient presentation by a subobject pair.
template <typename F>
DeltaObject<F> gluedQuotient(const DeltaObject<F>& d, const GluedSub<F>& g) {
    RepMap<F> inclSrc(
        Rep<F>(d.map.src.q, g.b1srcV1.cols(), g.b1srcV2.cols(),
               [&] {
                   std::vector<Mat<F>> as;
                   for (std::size_t a = 0; a < d.map.src.arrows.size(); ++a) {
                       auto x = solveMatrix(g.b1srcV2, Mat<F>(d.map.src.arrows[a] * g.b1srcV1));
                       as.push_back(*x);
                   }
                   return as;
               }()),
        d.map.src, g.b1srcV1, g.b1srcV2);
    RepMap<F> inclTgt(
        Rep<F>(d.map.tgt.q, g.b1tgtV1.cols(), g.b1tgtV2.cols(),
               [&] {
                   std::vector<Mat<F>> as;
                   for (std::size_t a = 0; a < d.map.tgt.arrows.size(); ++a) {
                       auto x = solveMatrix(g.b1tgtV2, Mat<F>(d.map.tgt.arrows[a] * g.b1tgtV1));
                       as.push_back(*x);
                   }
                   return as;
               }()),
        d.map.tgt, g.b1tgtV1, g.b1tgtV2);
    auto qs = kerCokerIm(inclSrc);
    auto qt = kerCokerIm(inclTgt);
    // induced map on quotients: solve q . projSrc = projTgt . map
    RepMap<F> rhs = compose(qt.cokerProj, d.map);
    auto m1 = solveMatrix(Mat<F>(qs.cokerProj.f1.transpose()), Mat<F>(rhs.f1.transpose()));
    auto m2 = solveMatrix(Mat<F>(qs.cokerProj.f2.transpose()), Mat<F>(rhs.f2.transpose()));
    if (!m1 || !m2) throw std::logic_error("gluedQuotient: induction failed");
    DeltaObject<F> out;
    out.map = RepMap<F>(qs.coker, qt.coker, m1->transpose(), m2->transpose());
    return out;
}

/// Exhaustive glued HN by greedy maximal destabilizers on subobject pairs.
template <typename F>
std::vector<std::pair<DeltaObject<F>, Phase>> hnGluedBrute(GluedPhaseTable& phases,
                                                           DeltaObject<F> d) {
    std::vector<std::pair<DeltaObject<F>, Phase>> out;
    while (!d.isZero()) {
        K0Class ka = repClass(d.map.src), kb = repClass(d.map.tgt);
        const Phase whole = phases.at(ka, kb);
        auto subs = gluedSubobjects(d);
        std::optional<Phase> best;
        for (const auto& g : subs) {
            if (g.srcClass[0] + g.srcClass[1] + g.tgtClass[0] + g.tgtClass[1] == 0) continue;
            const Phase& p = phases.at(g.srcClass, g.tgtClass);
            if (!best || phaseLt(*best, p)) best = p;
        }
        if (!best || !phaseLt(whole, *best)) {
            out.emplace_back(d, whole);
            break;
        }
        // sum all subobjects of maximal phase
        Mat<F> s1 = Mat<F>::Zero(d.map.src.dims[0], 0), s2 = Mat<F>::Zero(d.map.src.dims[1], 0);
        Mat<F> t1 = Mat<F>::Zero(d.map.tgt.dims[0], 0), t2 = Mat<F>::Zero(d.map.tgt.dims[1], 0);
        for (const auto& g : subs) {
            if (g.srcClass[0] + g.srcClass[1] + g.tgtClass[0] + g.tgtClass[1] == 0) continue;
            if (!phaseEq(phases.at(g.srcClass, g.tgtClass), *best)) continue;
            s1 = hstack(s1, g.b1srcV1);
            s2 = hstack(s2, g.b1srcV2);
            t1 = hstack(t1, g.b1tgtV1);
            t2 = hstack(t2, g.b1tgtV2);
        }
        GluedSub<F> mds;
        mds.b1srcV1 = imageBasis(s1);
        mds.b1srcV2 = imageBasis(s2);
        mds.b1tgtV1 = imageBasis(t1);
        mds.b1tgtV2 = imageBasis(t2);
        mds.srcClass = {static_cast<long>(mds.b1srcV1.cols()),
                        static_cast<long>(mds.b1srcV2.cols())};
        mds.tgtClass = {static_cast<long>(mds.b1tgtV1.cols()),
                        static_cast<long>(mds.b1tgtV2.cols())};
        // the factor: the subobject pair itself (with induced maps)
        DeltaObject<F> sub;
        {
            std::vector<Mat<F>> asrc, atgt;
            for (std::size_t a = 0; a < d.map.src.arrows.size(); ++a)
                asrc.push_back(*solveMatrix(mds.b1srcV2, Mat<F>(d.map.src.arrows[a] * mds.b1srcV1)));
            for (std::size_t a = 0; a < d.map.tgt.arrows.size(); ++a)
                atgt.push_back(*solveMatrix(mds.b1tgtV2, Mat<F>(d.map.tgt.arrows[a] * mds.b1tgtV1)));
            Rep<F> su(d.map.src.q, mds.b1srcV1.cols(), mds.b1srcV2.cols(), asrc);
            Rep<F> tu(d.map.tgt.q, mds.b1tgtV1.cols(), mds.b1tgtV2.cols(), atgt);
            // induced map: solve incl_t . f = map . incl_s
            Mat<F> rhs1 = d.map.f1 * mds.b1srcV1;
            Mat<F> rhs2 = d.map.f2 * mds.b1srcV2;
            auto f1 = solveMatrix(mds.b1tgtV1, rhs1);
            auto f2 = solveMatrix(mds.b1tgtV2, rhs2);
            if (!f1 || !f2) throw std::logic_error("hnGluedBrute: MDS not map-closed");
            sub.map = RepMap<F>(su, tu, *f1, *f2);
        }
        out.emplace_back(sub, *best);
        d = gluedQuotient(d, mds);
    }
    return out;
}

/// Convert a delta presentation to the honest morphism object (shift 0).
template <typename F>
MorphObject<F> toMorph(MorphSide side, const DeltaObject<F>& d, int shiftBy = 0) {
    return side == MorphSide::D0 ? deltaToMorph(d.map, shiftBy) : epsToMorph(d.map, shiftBy);
}

}  // namespace oracle

/// Verdicts for oracle-backed heart conditions (finite fields).
template <typename F>
std::optional<Phase> isSemistableOracle(const StabCond& s, const DerivedObject<F>& x) {
    static_assert(FieldEnumeration<F>::order > 0, "oracle verdicts need a finite field");
    return oracle::semistableBaseBrute(s, x);
}

}  // namespace stabglue
