#pragma once

#include <set>

#include "ffgraph/core.hpp"

namespace ffgraph {

enum class RegionTag {
    X,
    XPrime,
    D0,
    U,
    D,
    DPlus,
    DMinus,
    UPlus,
    UMinus,
    Sigma1Circle,
    Sigma2Circle,
    SingularFiber,
    SingularPoint,
};

const char* region_name(RegionTag tag);

bool in_region(RegionTag tag, const PointC2& pt, const ModelParams& params);

/// All region memberships, with the printed strict/non-strict boundaries.
std::set<RegionTag> classify(const PointC2& pt, const ModelParams& params);

enum class DeckDirection { Up, Down };

/// Closed-form deck transformation realizing the quotient identification.
/// Up moves |q| >= 1 material into the formal domain, Down moves
/// |p| > e^{S1} material; each is one t1-period across the gluing.
PointC2 deck(const PointC2& pt, DeckDirection dir, const ModelParams& params);

/// A point of the formal domain D = {|q| < 1, |p| <= e^{S1(b)}}, the
/// unique representative of a point of X_S.
struct CanonicalPoint {
    PointC2 pt;
};

bool in_formal_domain(const PointC2& pt, const ModelParams& params);

CanonicalPoint normalize(const PointC2& pt, const ModelParams& params);

/// Distance between two points of X_S: coordinate distance of canonical
/// representatives, also probing one deck step for boundary straddles.
double quotient_distance(const PointC2& a, const PointC2& b, const ModelParams& params);

bool same_point(const PointC2& a, const PointC2& b, double tol, const ModelParams& params);

inline bool same_point(const PointC2& a, const PointC2& b, const ModelParams& params) {
    return same_point(a, b, 1e-9, params);
}

}  // namespace ffgraph
