#include "ffgraph/neighborhood.hpp"

#include <algorithm>
#include <cmath>

namespace ffgraph {

const char* region_name(RegionTag tag) {
    switch (tag) {
        case RegionTag::X: return "X";
        case RegionTag::XPrime: return "XPrime";
        case RegionTag::D0: return "D0";
        case RegionTag::U: return "U";
        case RegionTag::D: return "D";
        case RegionTag::DPlus: return "DPlus";
        case RegionTag::DMinus: return "DMinus";
        case RegionTag::UPlus: return "UPlus";
        case RegionTag::UMinus: return "UMinus";
        case RegionTag::Sigma1Circle: return "Sigma1Circle";
        case RegionTag::Sigma2Circle: return "Sigma2Circle";
        case RegionTag::SingularFiber: return "SingularFiber";
        case RegionTag::SingularPoint: return "SingularPoint";
    }
    return "?";
}

bool in_region(RegionTag tag, const PointC2& pt, const ModelParams& params) {
    const double ap = std::abs(pt.p);
    const double aq = std::abs(pt.q);
    const double apq = std::abs(pt.p * pt.q);
    const Complex b = pt.fiber();
    const double es1 = std::exp(params.s1(b));
    const double ed = std::exp(params.delta);

    const bool in_x = apq < params.epsilon;
    switch (tag) {
        case RegionTag::X:
            return in_x;
        case RegionTag::XPrime:
            return in_x && aq <= 1.0 && ap < es1 * ed;
        case RegionTag::D0:
            return in_x && aq < 1.0 && ap < es1;
        case RegionTag::U:
            return in_x && es1 / ed < ap && ap < es1 * ed;
        case RegionTag::D:
            return in_x && aq < 1.0 && ap <= es1;
        case RegionTag::DPlus:
            return in_x && 1.0 / ed < aq && aq < 1.0;
        case RegionTag::DMinus:
        case RegionTag::UMinus:
            // the printed D- and U- coincide
            return in_x && es1 / ed < ap && ap < es1;
        case RegionTag::UPlus:
            return in_x && es1 < ap && ap < es1 * ed;
        case RegionTag::Sigma1Circle:
            return in_x && aq == 1.0;
        case RegionTag::Sigma2Circle:
            return in_x && ap == es1;
        case RegionTag::SingularFiber:
            return in_x && (pt.p == Complex{} || pt.q == Complex{});
        case RegionTag::SingularPoint:
            return pt.p == Complex{} && pt.q == Complex{};
    }
    return false;
}

std::set<RegionTag> classify(const PointC2& pt, const ModelParams& params) {
    std::set<RegionTag> tags;
    for (RegionTag tag : {RegionTag::X, RegionTag::XPrime, RegionTag::D0, RegionTag::U,
                          RegionTag::D, RegionTag::DPlus, RegionTag::DMinus, RegionTag::UPlus,
                          RegionTag::UMinus, RegionTag::Sigma1Circle, RegionTag::Sigma2Circle,
                          RegionTag::SingularFiber, RegionTag::SingularPoint}) {
        if (in_region(tag, pt, params)) tags.insert(tag);
    }
    return tags;
}

PointC2 deck(const PointC2& pt, DeckDirection dir, const ModelParams& params) {
    const Complex b = pt.fiber();
    const auto s = params.invariant.eval_all(b);
    if (dir == DeckDirection::Up) {
        if (pt.q == Complex{})
            throw DivisionAtSingularBranch("deck Up: q = 0");
        const Complex e = std::exp(Complex(s.s1, s.s2));
        const Complex em = std::exp(Complex(-s.s1, s.s2));
        return {e / std::conj(pt.q), std::conj(pt.p) * pt.q * pt.q * em};
    }
    if (pt.p == Complex{})
        throw DivisionAtSingularBranch("deck Down: p = 0");
    const Complex e = std::exp(Complex(s.s1, -s.s2));
    const Complex em = std::exp(Complex(-s.s1, -s.s2));
    return {pt.p * pt.p * std::conj(pt.q) * em, e / std::conj(pt.p)};
}

bool in_formal_domain(const PointC2& pt, const ModelParams& params) {
    const double es1 = std::exp(params.s1(pt.fiber()));
    return std::abs(pt.q) < 1.0 && std::abs(pt.p) <= es1;
}

CanonicalPoint normalize(const PointC2& pt, const ModelParams& params) {
    PointC2 cur = pt;
    for (int step = 0; step < 6; ++step) {
        const double es1 = std::exp(params.s1(cur.fiber()));
        if (std::abs(cur.q) >= 1.0) {
            cur = deck(cur, DeckDirection::Up, params);
        } else if (std::abs(cur.p) > es1) {
            cur = deck(cur, DeckDirection::Down, params);
        } else {
            return {cur};
        }
    }
    // a point on the strip boundary can oscillate between its two
    // representatives by rounding alone; accept either within slack
    const double es1 = std::exp(params.s1(cur.fiber()));
    if (std::abs(cur.q) < 1.0 + 1e-12 && std::abs(cur.p) <= es1 * (1.0 + 1e-12))
        return {cur};
    throw NotInModel("normalize: no formal-domain representative reached");
}

namespace {

double coord_distance(const PointC2& a, const PointC2& b) {
    const Vec4 ra = to_real(a), rb = to_real(b);
    double d = 0.0;
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(ra[k] - rb[k]));
    return d;
}

}  // namespace

double quotient_distance(const PointC2& a, const PointC2& b, const ModelParams& params) {
    const PointC2 na = normalize(a, params).pt;
    const PointC2 nb = normalize(b, params).pt;
    double d = coord_distance(na, nb);
    // a pair straddling the formal-domain boundary normalizes to the two
    // far ends of the strip; one deck step detects that
    for (DeckDirection dir : {DeckDirection::Up, DeckDirection::Down}) {
        try {
            d = std::min(d, coord_distance(deck(na, dir, params), nb));
            d = std::min(d, coord_distance(na, deck(nb, dir, params)));
        } catch (const DivisionAtSingularBranch&) {
        }
    }
    return d;
}

bool same_point(const PointC2& a, const PointC2& b, double tol, const ModelParams& params) {
    return quotient_distance(a, b, params) <= tol;
}

}  // namespace ffgraph
