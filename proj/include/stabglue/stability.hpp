#pragma once

#include "stabglue/morph.hpp"
#include "stabglue/phase.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace stabglue {

/// Central charge on the K0 basis of the base category (classes of the
/// vertex simples; Vect uses only the first).
struct CentralCharge {
    ExactComplex z1, z2;

    ExactComplex eval(const K0Class& k) const {
        ExactComplex a{QuadRat(Rational(k[0])), QuadRat(0)};
        ExactComplex b{QuadRat(Rational(k[1])), QuadRat(0)};
        return a * z1 + b * z2;
    }

    friend bool operator==(const CentralCharge& x, const CentralCharge& y) {
        return x.z1 == y.z1 && x.z2 == y.z2;
    }
};

/// Element of the exactly representable subgroup of the C-action:
/// z = log r + i pi (t + n). Acts on charges by multiplication with
/// exp(-z) = (1/r) exp(-i pi t) (-1)^n and on object phases by
/// phi -> phi - t - n. The shift functor [1] is (r=1, t=0, n=1).
struct GroupElt {
    Rational r{1};   // positive scale
    Sixths t{};      // rotation, exp(i pi t)
    long n = 0;      // whole shifts

    static GroupElt identity() { return {}; }
    static GroupElt shiftBy(long k) { return {Rational(1), Sixths(0), k}; }
    static GroupElt rotation(Sixths theta) { return {Rational(1), theta, 0}; }

    bool isIdentity() const { return r == 1 && t.isZero() && n == 0; }

    GroupElt compose(const GroupElt& o) const {
        return {r * o.r, t + o.t, n + o.n};
    }

    /// multiplier exp(-z) applied to charges
    ExactComplex chargeFactor() const {
        ExactComplex u = unitFromTheta(-t);
        ExactComplex scaled{u.re * QuadRat(Rational(1) / r), u.im * QuadRat(Rational(1) / r)};
        if (n % 2 != 0) scaled = -scaled;
        return scaled;
    }

    /// object phases move by this amount (as a phase shift in sixths)
    Sixths phaseShiftAmount() const { return Sixths(-t.num - 6 * n); }
};

/// Structured refusals from the stability layer.
struct UnsupportedRule : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GluingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StabCond;
using StabPtr = std::shared_ptr<const StabCond>;

enum class RuleKind { Heart, OracleHeart, Glued, Pulled };

/// A stability condition: a central charge plus a finitely described
/// semistable-classification rule, with an accumulated exact group twist.
struct StabCond {
    Quiver baseQuiver = Quiver::A2;
    bool morphismCat = false;

    RuleKind kind = RuleKind::Heart;
    CentralCharge charge;  // base charge (Heart/OracleHeart)

    // Glued data: side + the two piece conditions (L, R per the SOD order).
    MorphSide side = MorphSide::D0;
    StabPtr pieceL, pieceR;
    std::optional<Sixths> thetaStructure;  // set when R = canonical twist of L

    // Pulled data
    EmbedKind pulledAlong = EmbedKind::S;
    StabPtr parent;

    GroupElt twist;

    bool isDeg = false;
    bool isReasonable = false;

    std::string describe() const {
        switch (kind) {
            case RuleKind::Heart: return "heart(" + quiverName(baseQuiver) + ")";
            case RuleKind::OracleHeart: return "oracle-heart(" + quiverName(baseQuiver) + ")";
            case RuleKind::Glued:
                return std::string("glued-") + (side == MorphSide::D0 ? "d0" : "d1");
            default: return "pulled";
        }
    }
};

/// Heart-standard stability condition on the base category.
/// A2: full symbolic classification for charges in the upper slit domain.
/// K2: only (Deg) charges (both values on the negative real axis); other
///     chambers are refused here (see mkOracleStab for the GF(p) mode).
inline StabCond mkHeartStab(Quiver base, const CentralCharge& z) {
    StabCond s;
    s.baseQuiver = base;
    s.kind = RuleKind::Heart;
    s.charge = z;
    auto inDomain = [](const ExactComplex& v) { return !v.isZero() && inClosedUpperSlit(v); };
    if (!inDomain(z.z1) || (numVertices(base) == 2 && !inDomain(z.z2)))
        throw UnsupportedRule("mkHeartStab: simple charges must lie in the upper half plane "
                              "or the negative real axis");
    bool deg = z.z1.isReal() && (numVertices(base) < 2 || z.z2.isReal());
    s.isDeg = deg;
    if (base == Quiver::K2 && !deg)
        throw UnsupportedRule(
            "mkHeartStab: K2 heart classification implemented only for (Deg) charges; "
            "use mkOracleStab over GF(p) for other chambers");
    s.isReasonable = true;
    return s;
}

/// Oracle-backed heart condition (finite fields only, verdicts by
/// brute-force subobject search; no symbolic families).
inline StabCond mkOracleStab(Quiver base, const CentralCharge& z) {
    StabCond s;
    s.baseQuiver = base;
    s.kind = RuleKind::OracleHeart;
    s.charge = z;
    auto inDomain = [](const ExactComplex& v) { return !v.isZero() && inClosedUpperSlit(v); };
    if (!inDomain(z.z1) || (numVertices(base) == 2 && !inDomain(z.z2)))
        throw UnsupportedRule("mkOracleStab: charges outside the upper slit domain");
    s.isDeg = z.z1.isReal() && (numVertices(base) < 2 || z.z2.isReal());
    s.isReasonable = true;
    return s;
}

inline StabCond actGroup(const StabCond& s, const GroupElt& g) {
    StabCond out = s;
    out.twist = s.twist.compose(g);
    out.isDeg = s.isDeg && g.t.isInteger();
    return out;
}

// --------------------------------------------------------------------------
// Charges
// --------------------------------------------------------------------------

/// Base-category charge evaluation (twist included).
inline ExactComplex chargeBase(const StabCond& s, const K0Class& k) {
    if (s.morphismCat) throw std::logic_error("chargeBase: morphism-category condition");
    ExactComplex v;
    switch (s.kind) {
        case RuleKind::Heart:
        case RuleKind::OracleHeart: v = s.charge.eval(k); break;
        case RuleKind::Pulled: {
            // handled in stability_ops (needs the morphism-side charge)
            throw std::logic_error("chargeBase: use chargeOfPulled for pulled conditions");
        }
        default: throw std::logic_error("chargeBase: glued condition is morphism-side");
    }
    return s.twist.chargeFactor() * v;
}

/// Morphism-category charge as a pair of functionals on (k0 d0 f, k0 cof f).
struct ChargePair {
    CentralCharge onD0, onCof;
    ExactComplex eval(const K0Class& kd0, const K0Class& kcof) const {
        return onD0.eval(kd0) + onCof.eval(kcof);
    }
};

inline CentralCharge scaleCharge(const ExactComplex& c, const CentralCharge& z) {
    return {c * z.z1, c * z.z2};
}

inline ChargePair chargePair(const StabCond& s) {
    if (!s.morphismCat || s.kind != RuleKind::Glued)
        throw std::logic_error("chargePair: glued morphism condition required");
    const StabCond& L = *s.pieceL;
    const StabCond& R = *s.pieceR;
    CentralCharge zl = scaleCharge(L.twist.chargeFactor(), L.charge);
    CentralCharge zr = scaleCharge(R.twist.chargeFactor(), R.charge);
    ChargePair cp;
    if (s.side == MorphSide::D0) {
        // Z(f) = Z_L(d0 f) + Z_R(fib f) = Z_L(kd0) - Z_R(kcof)
        cp.onD0 = zl;
        cp.onCof = scaleCharge(ExactComplex(-1), zr);
    } else {
        // Z(f) = Z_L(cof f) + Z_R(d1 f) = Z_R(kd0) + (Z_L - Z_R)(kcof)
        cp.onD0 = zr;
        cp.onCof = {zl.z1 - zr.z1, zl.z2 - zr.z2};
    }
    ExactComplex tf = s.twist.chargeFactor();
    cp.onD0 = scaleCharge(tf, cp.onD0);
    cp.onCof = scaleCharge(tf, cp.onCof);
    return cp;
}

template <typename F>
ExactComplex chargeEval(const StabCond& s, const MorphObject<F>& f) {
    auto [kd0, kcof] = k0Pair(f);
    return chargePair(s).eval(kd0, kcof);
}

// --------------------------------------------------------------------------
// Heart classification (base categories)
// --------------------------------------------------------------------------

namespace detail {

/// Untwisted phases of the simples for a heart rule.
inline Phase heartPhase1(const StabCond& s) { return phaseOf(s.charge.z1); }
inline Phase heartPhase2(const StabCond& s) { return phaseOf(s.charge.z2); }

/// The stored (untwisted) charge is (Deg); group twists do not change it.
inline bool chargeIsDeg(const StabCond& s) {
    return s.charge.z1.isReal() &&
           (numVertices(s.baseQuiver) < 2 || s.charge.z2.isReal());
}

/// Is a heart representation semistable under the symbolic heart rule, and
/// in which (untwisted) phase in (0,1]?
template <typename F>
std::optional<Phase> heartRepSemistable(const StabCond& s, const Rep<F>& m) {
    if (m.isZero()) return std::nullopt;
    if (chargeIsDeg(s)) return Phase::integer(1);
    switch (s.baseQuiver) {
        case Quiver::Vect: return heartPhase1(s);
        case Quiver::A2: {
            auto dec = decomposeRep(m);
            Phase p1 = heartPhase1(s), p2 = heartPhase2(s);
            bool p12ss = phaseCmp(p2, p1) != Ord::GT;
            std::optional<Phase> common;
            for (const auto& [label, mult] : dec.factors) {
                Phase ph = p1;
                if (label.key() == "S1")
                    ph = p1;
                else if (label.key() == "S2")
                    ph = p2;
                else {  // P12
                    if (!p12ss) return std::nullopt;
                    ph = phaseOf(s.charge.z1 + s.charge.z2);
                }
                if (!common)
                    common = ph;
                else if (!phaseEq(*common, ph))
                    return std::nullopt;
            }
            return common;
        }
        default:
            throw UnsupportedRule(
                "heartRepSemistable: K2 classification outside (Deg) is not symbolic");
    }
}

/// Strict stability of a heart representation.
template <typename F>
bool heartRepStable(const StabCond& s, const Rep<F>& m) {
    if (m.isZero()) return false;
    auto dec = decomposeRep(m);
    if (dec.factors.size() != 1 || dec.factors[0].second != 1) return false;
    const auto key = dec.factors[0].first.key();
    switch (s.baseQuiver) {
        case Quiver::Vect: return true;
        case Quiver::A2: {
            if (key == "S1" || key == "S2") return true;
            if (key == "P12")
                return phaseCmp(heartPhase2(s), heartPhase1(s)) == Ord::LT;
            return false;
        }
        default: {
            if (!chargeIsDeg(s))
                throw UnsupportedRule("heartRepStable: K2 outside (Deg)");
            // all heart objects share phase 1: stable = simple
            return key == "PI0" || key == "PP0";
        }
    }
}

/// Cohomology summary: the support degrees, and the representation when the
/// object is concentrated in a single degree.
template <typename F>
struct CohData {
    std::vector<int> support;
    std::optional<Rep<F>> rep;  // set iff support.size() == 1
    int degree = 0;
    bool acyclic() const { return support.empty(); }
    bool single() const { return support.size() == 1; }
};

template <typename F>
CohData<F> cohData(const DerivedObject<F>& x) {
    CohData<F> out;
    if (x.isZero()) return out;
    for (int n = x.lo(); n <= x.hi(); ++n) {
        Rep<F> h = cohomologyRep(x, n);
        if (h.isZero()) continue;
        out.support.push_back(n);
        out.rep = h;
        out.degree = n;
    }
    if (!out.single()) out.rep.reset();
    return out;
}

/// Concentration data: x isomorphic to M[-d] for a single degree d.
template <typename F>
std::optional<std::pair<Rep<F>, int>> concentrated(const DerivedObject<F>& x) {
    CohData<F> c = cohData(x);
    if (!c.single()) return std::nullopt;
    return std::make_pair(*c.rep, c.degree);
}

}  // namespace detail

/// Semistability of a base object: Some(phase) iff x is a shifted semistable
/// heart object for the rule. Oracle rules are handled in oracle.hpp.
template <typename F>
std::optional<Phase> isSemistableBase(const StabCond& s, const DerivedObject<F>& x) {
    if (s.morphismCat) throw std::logic_error("isSemistableBase: base condition required");
    if (s.kind == RuleKind::Pulled)
        throw std::logic_error("isSemistableBase: pulled verdicts live in stability_ops");
    if (s.kind == RuleKind::OracleHeart)
        throw std::logic_error("isSemistableBase: oracle verdicts live in oracle.hpp");
    auto conc = detail::concentrated(x);
    if (!conc) return std::nullopt;
    auto [rep, deg] = *conc;
    auto ph = detail::heartRepSemistable(s, rep);
    if (!ph) return std::nullopt;
    Phase shifted = phaseShiftInt(*ph, -deg);
    return phaseShift(shifted, s.twist.phaseShiftAmount());
}

template <typename F>
bool isStableBase(const StabCond& s, const DerivedObject<F>& x) {
    auto conc = detail::concentrated(x);
    if (!conc) return false;
    return detail::heartRepStable(s, conc->first);
}

// --------------------------------------------------------------------------
// Gluing
// --------------------------------------------------------------------------

namespace detail {

/// Representative objects of the rule's semistable families (small samples
/// of each symbolic family, used by the gluing checks). Returned with their
/// untwisted phases in (0,1].
template <typename F>
std::vector<std::pair<DerivedObject<F>, Phase>> familyReps(const StabCond& s) {
    std::vector<std::pair<DerivedObject<F>, Phase>> out;
    auto push = [&](const Rep<F>& r) {
        auto ph = heartRepSemistable(s, r);
        if (ph) out.emplace_back(fromRep(r), *ph);
    };
    switch (s.baseQuiver) {
        case Quiver::Vect:
            push(simpleRep<F>(Quiver::Vect, 1));
            break;
        case Quiver::A2:
            push(simpleRep<F>(Quiver::A2, 1));
            push(simpleRep<F>(Quiver::A2, 2));
            push(projectiveRep<F>(Quiver::A2, 1));
            break;
        default:
            push(simpleRep<F>(Quiver::K2, 1));
            push(simpleRep<F>(Quiver::K2, 2));
            push(makeRep(labelPreproj<F>(1)));
            push(makeRep(labelPreinj<F>(1)));
            push(makeRep(labelRegular<F>(Poly<F>::linear(F(0)), 1)));
            push(makeRep(labelRegular<F>(Poly<F>::linear(F(1)), 1)));
            push(makeRep(labelRegularInf<F>(1)));
            break;
    }
    return out;
}

/// Gluing conditions (1) and (2): Hom^{<=0}(P_1(0,1], P_2(0,1]) = 0 and the
/// same for some shifted window (a, a+1]. Verified on the family samples.
template <typename F>
void glueCheck(MorphSide side, const StabCond& L, const StabCond& R) {
    // realize P_L and P_R objects inside the morphism category
    EmbedKind embL = side == MorphSide::D0 ? EmbedKind::S : EmbedKind::JStar;
    EmbedKind embR = side == MorphSide::D0 ? EmbedKind::JShriek : EmbedKind::S;
    auto famL = familyReps<F>(L);
    auto famR = familyReps<F>(R);
    // window selection: realize each family member at its twisted phase and
    // shift into the window under test
    auto phaseOfMember = [](const StabCond& c, const Phase& untwisted) {
        return phaseShift(untwisted, c.twist.phaseShiftAmount());
    };
    struct Member {
        DerivedObject<F> obj;
        Phase ph;
    };
    std::vector<Member> ml, mr;
    for (auto& [o, p] : famL) ml.push_back({o, phaseOfMember(L, p)});
    for (auto& [o, p] : famR) mr.push_back({o, phaseOfMember(R, p)});
    // normalize member into a chosen window (a, a+1] given by cut data:
    // member of phase p is shifted by the integer k with p + k in the window.
    auto shiftIntoUnitWindow = [](const Member& m) {
        // into (0, 1]: phase level must become 0
        return Member{shift(m.obj, static_cast<int>(-m.ph.level)),
                      phaseShiftInt(m.ph, -m.ph.level)};
    };
    std::vector<Member> nl, nr;
    for (auto& m : ml) nl.push_back(shiftIntoUnitWindow(m));
    for (auto& m : mr) nr.push_back(shiftIntoUnitWindow(m));
    auto homVanish = [&](const std::vector<Member>& a, const std::vector<Member>& b) {
        for (const auto& x : a)
            for (const auto& y : b)
                for (int n = -2; n <= 0; ++n) {
                    if (homDimMorph(embed(embL, x.obj), embed(embR, y.obj), n) != 0)
                        return false;
                }
        return true;
    };
    if (!homVanish(nl, nr))
        throw GluingFailure("glueStab: condition (1) fails: Hom^{<=0}(P_1(0,1], P_2(0,1]) != 0");
    // condition (2): enumerate cuts between the distinct phases in (0,1]
    std::vector<Phase> cutPhases;
    for (auto& m : nl) cutPhases.push_back(m.ph);
    for (auto& m : nr) cutPhases.push_back(m.ph);
    std::sort(cutPhases.begin(), cutPhases.end(),
              [](const Phase& a, const Phase& b) { return phaseLt(a, b); });
    cutPhases.erase(std::unique(cutPhases.begin(), cutPhases.end(),
                                [](const Phase& a, const Phase& b) { return phaseEq(a, b); }),
                    cutPhases.end());
    bool found = false;
    for (std::size_t cut = 0; cut < cutPhases.size() && !found; ++cut) {
        // window (a, a+1] with a at the cut phase: members with phase <= a get
        // shifted up by one
        auto window = [&](const std::vector<Member>& src) {
            std::vector<Member> out;
            for (const auto& m : src) {
                if (phaseCmp(m.ph, cutPhases[cut]) != Ord::GT)
                    out.push_back({shift(m.obj, 1), phaseShiftInt(m.ph, 1)});
                else
                    out.push_back(m);
            }
            return out;
        };
        if (homVanish(window(nl), window(nr))) found = true;
    }
    if (!found)
        throw GluingFailure("glueStab: condition (2) fails for every phase cut");
}

}  // namespace detail

/// Glue two base conditions over one of the SODs of the morphism category.
/// Verifies the gluing conditions on the symbolic families; gives the paper's
/// heart and charge.
template <typename F>
StabCond glueStab(const StabCond& sigmaL, const StabCond& sigmaR, MorphSide sod) {
    if (sigmaL.morphismCat || sigmaR.morphismCat)
        throw UnsupportedRule("glueStab: base conditions required");
    if (sigmaL.baseQuiver != sigmaR.baseQuiver)
        throw UnsupportedRule("glueStab: base quivers differ");
    detail::glueCheck<F>(sod, sigmaL, sigmaR);
    StabCond out;
    out.baseQuiver = sigmaL.baseQuiver;
    out.morphismCat = true;
    out.kind = RuleKind::Glued;
    out.side = sod;
    out.pieceL = std::make_shared<const StabCond>(sigmaL);
    out.pieceR = std::make_shared<const StabCond>(sigmaR);
    out.isReasonable = sigmaL.isReasonable && sigmaR.isReasonable;
    out.isDeg = false;
    return out;
}

/// The theta-deformed pullbacks of a (Deg) condition:
///   d0*(theta) sigma = glue(sigma, [-1] sigma g_theta)   on the D0 SOD
///   d1*(theta) sigma = glue([1] sigma, sigma g_theta)    on the D1 SOD
template <typename F>
StabCond pullTheta(MorphSide side, const StabCond& sigma, Sixths theta) {
    if (theta.num < 0 || theta.num >= 6)
        throw UnsupportedRule("pullTheta: theta must lie in [0, 1)");
    if (!theta.isZero() && !sigma.isDeg)
        throw UnsupportedRule("pullTheta: theta != 0 requires a (Deg) base condition");
    StabCond out;
    if (side == MorphSide::D0) {
        StabCond r = actGroup(sigma, GroupElt{Rational(1), theta, -1});
        out = glueStab<F>(sigma, r, MorphSide::D0);
    } else {
        StabCond l = actGroup(sigma, GroupElt::shiftBy(1));
        StabCond r = actGroup(sigma, GroupElt::rotation(theta));
        out = glueStab<F>(l, r, MorphSide::D1);
    }
    out.thetaStructure = theta;
    return out;
}

template <typename F>
StabCond pullback(MorphSide side, const StabCond& sigma) {
    // theta = 0 works for any base condition (the paper's d_i^*)
    StabCond out;
    if (side == MorphSide::D0) {
        StabCond r = actGroup(sigma, GroupElt::shiftBy(-1));
        out = glueStab<F>(sigma, r, MorphSide::D0);
    } else {
        StabCond l = actGroup(sigma, GroupElt::shiftBy(1));
        out = glueStab<F>(l, sigma, MorphSide::D1);
    }
    out.thetaStructure = Sixths(0);
    return out;
}

// --------------------------------------------------------------------------
// Glued verdicts
// --------------------------------------------------------------------------

namespace detail {

/// The side-normalized pair of a morphism object: for D0 the pair
/// (d0 f, cof f), for D1 the pair (fib f, d1 f) -- the two pieces whose
/// semistability controls f.
template <typename F>
std::pair<DerivedObject<F>, DerivedObject<F>> sidePieces(MorphSide side,
                                                         const MorphObject<F>& f) {
    CofFib<F> cf = cofFib(f);
    if (side == MorphSide::D0) return {f.tgt(), cf.cof};
    return {cf.fib, f.src()};
}

}  // namespace detail

/// Semistability in a glued condition, with the glued phase.
///
/// Pure pieces of either SOD component are decided by the piece conditions
/// (paper: P(phi) cap D_i = P_i(phi)). Mixed objects need the theta
/// structure: theta = 0 is the matching-phase criterion, theta != 0 over a
/// (Deg) base gives the three-family classification.
template <typename F>
std::optional<Phase> isSemistableGlued(const StabCond& s, const MorphObject<F>& f) {
    if (!s.morphismCat || s.kind != RuleKind::Glued)
        throw std::logic_error("isSemistableGlued: glued condition required");
    if (f.isZero()) return std::nullopt;
    CofFib<F> cf = cofFib(f);
    detail::CohData<F> cx = detail::cohData(f.src());
    detail::CohData<F> cy = detail::cohData(f.tgt());
    detail::CohData<F> cc = detail::cohData(cf.cof);
    if (cx.acyclic() && cy.acyclic()) return std::nullopt;  // zero object

    auto finish = [&](std::optional<Phase> untw) -> std::optional<Phase> {
        if (!untw) return std::nullopt;
        return phaseShift(*untw, s.twist.phaseShiftAmount());
    };

    // pure pieces
    if (s.side == MorphSide::D0) {
        if (cc.acyclic())  // f = s(Y): the L piece, identified with the base via d0
            return finish(isSemistableBase(*s.pieceL, f.tgt()));
        if (cy.acyclic())  // f = j_!(X): the R piece, identified via d1
            return finish(isSemistableBase(*s.pieceR, f.src()));
    } else {
        if (cx.acyclic())  // f = j_*(Y): the L piece, identified via d0
            return finish(isSemistableBase(*s.pieceL, f.tgt()));
        if (cc.acyclic())  // f = s(X): the R piece, identified via d1
            return finish(isSemistableBase(*s.pieceR, f.src()));
    }

    if (!s.thetaStructure)
        throw UnsupportedRule("isSemistableGlued: mixed objects need the theta structure");
    const Sixths theta = *s.thetaStructure;
    // the underlying base condition sigma: L piece for D0, R piece stripped of
    // its g_theta rotation for D1
    const StabCond sigma = [&] {
        if (s.side == MorphSide::D0) return *s.pieceL;
        return actGroup(*s.pieceR, GroupElt{Rational(1), -theta, 0});
    }();

    if (theta.isZero()) {
        // matching-phase criterion on the side pieces
        auto [pieceA, pieceB] = detail::sidePieces(s.side, f);
        std::optional<Phase> phA = isSemistableBase(sigma, pieceA);
        std::optional<Phase> phB = isSemistableBase(sigma, pieceB);
        if (!phA || !phB) return std::nullopt;
        if (!phaseEq(*phA, *phB)) return std::nullopt;
        return finish(phA);
    }

    // theta != 0: the only mixed semistables form the j_*-family (D0) or the
    // j_!-family (D1); both are detected by acyclicity of the remaining
    // component, with a concentrated heart representative.
    std::optional<int> heartDeg;
    if (s.side == MorphSide::D0) {
        // the j_*-family [0 -> M]: src acyclic
        if (cx.acyclic() && cy.single() && cc.single() && cy.degree == cc.degree)
            heartDeg = cy.degree;
    } else {
        // the j_!-family [M -> 0]: tgt acyclic
        if (cy.acyclic() && cx.single()) heartDeg = cx.degree;
    }
    if (!heartDeg) return std::nullopt;
    auto [kd0, kcof] = k0Pair(f);
    ExactComplex zf = chargePair(s).eval(kd0, kcof);
    if (zf.isZero()) return std::nullopt;
    // normalize to the heart representative f[-n] (n = -degree), whose charge
    // is (-1)^n zf and lands in the upper slit; its phase sits in (0,1]
    const int n = -*heartDeg;
    ExactComplex zHeart = s.twist.chargeFactor().inverse() * zf;
    if (n % 2 != 0) zHeart = -zHeart;
    Phase pu = phaseOf(zHeart);
    if (pu.level != 0) return std::nullopt;  // not a heart-family charge
    return finish(phaseShiftInt(pu, n));
}

}  // namespace stabglue
