#include "ffgraph/graph.hpp"

#include <cmath>

namespace ffgraph {

namespace {

bool is_singular_point(const PointC2& pt) {
    return pt.p == Complex{} && pt.q == Complex{};
}

bool on_singular_fiber(const PointC2& pt) {
    return pt.p == Complex{} || pt.q == Complex{};
}

bool slot_in_region(SlotRegion region, const PointC2& pt, const ModelParams& params,
                    double margin) {
    const double ap = std::abs(pt.p);
    const double aq = std::abs(pt.q);
    const double es1 = std::exp(params.s1(pt.fiber()));
    if (region == SlotRegion::D0)
        return aq < 1.0 - margin && ap < es1 * (1.0 - margin);
    const double half = params.delta * (1.0 - margin);
    return es1 * std::exp(-half) < ap && ap < es1 * std::exp(half);
}

double tuple_distance(const Tuple6& a, const Tuple6& b) {
    double d = 0.0;
    for (int k = 0; k < 6; ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

}  // namespace

const char* chart_name(GraphChartId id) {
    switch (id) {
        case GraphChartId::E1: return "E1";
        case GraphChartId::E2: return "E2";
        case GraphChartId::E3: return "E3";
        case GraphChartId::E4: return "E4";
        case GraphChartId::E5: return "E5";
        case GraphChartId::E6: return "E6";
    }
    return "?";
}

ChartRecipe chart_recipe(GraphChartId id) {
    using R = SlotRegion;
    switch (id) {
        case GraphChartId::E1: return {GraphMapKind::F1, {R::D0, R::D0, R::D0}};
        case GraphChartId::E2: return {GraphMapKind::F2, {R::D0, R::D0, R::D0}};
        case GraphChartId::E3: return {GraphMapKind::F1, {R::U, R::U, R::U}};
        case GraphChartId::E4: return {GraphMapKind::F1, {R::D0, R::U, R::D0}};
        case GraphChartId::E5: return {GraphMapKind::F1, {R::U, R::D0, R::D0}};
        case GraphChartId::E6: return {GraphMapKind::F2, {R::D0, R::D0, R::U}};
    }
    throw ModelError("chart_recipe: bad chart");
}

Tuple6 graph_map(GraphMapKind which, const Coords3& coords, const InvariantPolynomial& S) {
    const auto [a, b, c] = coords;
    if (which == GraphMapKind::F2) {
        return {-std::conj(b) * std::conj(c), a,
                -std::conj(a) * std::conj(c), b,
                -std::conj(c),               a * b};
    }
    const auto s = S.eval_all(a * b * c);
    const Complex em = std::exp(Complex(-s.s1, -s.s2));
    const Complex ep = std::exp(Complex(s.s1, -s.s2));
    return {std::conj(a),                      -b * c,
            std::conj(b),                      -a * c,
            em * std::conj(a) * std::conj(b),  -ep * c};
}

std::array<PointC2, 3> tuple_points(const Tuple6& t) {
    return {PointC2{t[0], t[1]}, PointC2{t[2], t[3]}, PointC2{t[4], t[5]}};
}

bool chart_contains_margin(GraphChartId id, const Coords3& coords, const ModelParams& params,
                           double margin) {
    const Complex b0 = coords[0] * coords[1] * coords[2];
    if (!(std::abs(b0) < params.epsilon * (1.0 - margin))) return false;
    const ChartRecipe recipe = chart_recipe(id);
    const auto pts = tuple_points(graph_map(recipe.map, coords, params.invariant));
    for (int slot = 0; slot < 3; ++slot)
        if (!slot_in_region(recipe.slots[slot], pts[slot], params, margin)) return false;
    return true;
}

bool chart_contains(GraphChartId id, const Coords3& coords, const ModelParams& params) {
    return chart_contains_margin(id, coords, params, 0.0);
}

GraphPoint chart_embed(GraphChartId id, const Coords3& coords, const ModelParams& params) {
    if (!chart_contains(id, coords, params))
        throw OutsideChartDomain("chart_embed: coords outside chart domain");
    const ChartRecipe recipe = chart_recipe(id);
    const auto pts = tuple_points(graph_map(recipe.map, coords, params.invariant));
    GraphPoint gp;
    CanonicalPoint* out[3] = {&gp.x, &gp.y, &gp.z};
    for (int slot = 0; slot < 3; ++slot) {
        // D0 slots are already canonical; U slots may need one deck step
        *out[slot] = normalize(pts[slot], params);
    }
    return gp;
}

Vec12 chart_embed_raw(GraphChartId id, const Coords3& coords, const ModelParams& params) {
    const ChartRecipe recipe = chart_recipe(id);
    const Tuple6 t = graph_map(recipe.map, coords, params.invariant);
    Vec12 v{};
    for (int k = 0; k < 6; ++k) {
        v[2 * k] = t[k].real();
        v[2 * k + 1] = t[k].imag();
    }
    return v;
}

namespace {

/// Raw X'-representatives a canonical point may take inside a slot region.
std::vector<PointC2> slot_representatives(SlotRegion region, const PointC2& w,
                                          const ModelParams& params) {
    std::vector<PointC2> reps;
    if (slot_in_region(region, w, params, 0.0)) reps.push_back(w);
    if (region == SlotRegion::U && w.q != Complex{}) {
        const PointC2 up = deck(w, DeckDirection::Up, params);
        if (slot_in_region(region, up, params, 0.0)) reps.push_back(up);
    }
    return reps;
}

/// Closed-form inversion of a graph map from a raw image tuple.
Coords3 invert_graph_map(GraphMapKind which, const Tuple6& raw, const ModelParams& params) {
    if (which == GraphMapKind::F2)
        return {raw[1], raw[3], -std::conj(raw[4])};
    const Complex a = std::conj(raw[0]);
    const Complex b = std::conj(raw[2]);
    const Complex b0 = -std::conj(raw[0]) * raw[1];  // fiber of the first pair
    const auto s = params.invariant.eval_all(b0);
    const Complex c = -raw[5] * std::exp(Complex(-s.s1, s.s2));
    return {a, b, c};
}

}  // namespace

std::vector<ChartLocation> locate(const GraphPoint& gp, const ModelParams& params) {
    const bool closure = is_singular_point(gp.x.pt) && is_singular_point(gp.y.pt);
    if (closure) {
        if (!on_singular_fiber(gp.z.pt))
            throw NotOnGraph("closure point must have z on the singular fiber");
    } else {
        const CanonicalPoint sum = add(gp.x, gp.y, params);
        if (quotient_distance(sum.pt, gp.z.pt, params) > 1e-8)
            throw NotOnGraph("triple fails the addition law");
    }

    std::vector<ChartLocation> found;
    const PointC2* pts[3] = {&gp.x.pt, &gp.y.pt, &gp.z.pt};
    for (GraphChartId id : {GraphChartId::E1, GraphChartId::E2, GraphChartId::E3,
                            GraphChartId::E4, GraphChartId::E5, GraphChartId::E6}) {
        const ChartRecipe recipe = chart_recipe(id);
        std::array<std::vector<PointC2>, 3> reps;
        bool feasible = true;
        for (int slot = 0; slot < 3; ++slot) {
            reps[slot] = slot_representatives(recipe.slots[slot], *pts[slot], params);
            if (reps[slot].empty()) feasible = false;
        }
        if (!feasible) continue;
        for (const PointC2& r0 : reps[0]) {
            for (const PointC2& r1 : reps[1]) {
                for (const PointC2& r2 : reps[2]) {
                    const Tuple6 raw{r0.p, r0.q, r1.p, r1.q, r2.p, r2.q};
                    const Coords3 coords = invert_graph_map(recipe.map, raw, params);
                    const Tuple6 forward = graph_map(recipe.map, coords, params.invariant);
                    if (tuple_distance(forward, raw) > 1e-10) continue;
                    if (!chart_contains(id, coords, params)) continue;
                    bool dup = false;
                    for (const ChartLocation& loc : found) {
                        if (loc.chart != id) continue;
                        double d = 0.0;
                        for (int k = 0; k < 3; ++k)
                            d = std::max(d, std::abs(loc.coords[k] - coords[k]));
                        if (d <= 1e-12) dup = true;
                    }
                    if (!dup) found.push_back({id, coords});
                }
            }
        }
    }
    return found;
}

Coords3 chart_transition(GraphChartId from, GraphChartId to, const Coords3& coords,
                         const ModelParams& params) {
    if (!chart_contains(from, coords, params))
        throw NotInOverlap("chart_transition: coords outside source chart");

    const bool e1e6 = (from == GraphChartId::E1 && to == GraphChartId::E6) ||
                      (from == GraphChartId::E6 && to == GraphChartId::E1);
    const bool e2e6 = (from == GraphChartId::E2 && to == GraphChartId::E6) ||
                      (from == GraphChartId::E6 && to == GraphChartId::E2);
    if (e1e6) {
        const Coords3 image = tubular_phi(coords);
        if (!chart_contains(to, image, params))
            throw NotInOverlap("chart_transition: image outside target chart");
        return image;
    }
    if (e2e6) {
        if (!chart_contains(to, coords, params))
            throw NotInOverlap("chart_transition: coords outside target chart");
        return coords;
    }

    // generic path: embed and invert the target chart
    const GraphPoint gp = chart_embed(from, coords, params);
    for (const ChartLocation& loc : locate(gp, params))
        if (loc.chart == to) return loc.coords;
    throw NotInOverlap("chart_transition: point not in target chart");
}

std::pair<CanonicalPoint, CanonicalPoint> project_pr(const GraphPoint& gp) {
    return {gp.x, gp.y};
}

Coords3 tubular_phi(const Coords3& coords) {
    const auto [a, b, c] = coords;
    if (c == Complex{}) throw ZeroThirdCoordinate("tubular_phi: c = 0");
    return {-b * c, -a * c, 1.0 / c};
}

BundlePoint tubular_G(TubularChart chart, const Coords3& coords, const ModelParams& params) {
    const auto [a, b, c] = coords;
    switch (chart) {
        case TubularChart::Chart1:
            if (!chart_contains(GraphChartId::E1, coords, params))
                throw OutsideChartDomain("tubular_G: outside E1");
            return {{Complex(1.0, 0.0), -c}, {b, -b * c, a, -a * c}};
        case TubularChart::Chart2:
            if (!chart_contains(GraphChartId::E2, coords, params))
                throw OutsideChartDomain("tubular_G: outside E2");
            break;
        case TubularChart::Chart6:
            if (!chart_contains(GraphChartId::E6, coords, params))
                throw OutsideChartDomain("tubular_G: outside E6");
            break;
    }
    return {{-c, Complex(1.0, 0.0)}, {-a * c, a, -b * c, b}};
}

double bundle_distance(const BundlePoint& a, const BundlePoint& b) {
    const double na = std::hypot(std::abs(a.lambda[0]), std::abs(a.lambda[1]));
    const double nb = std::hypot(std::abs(b.lambda[0]), std::abs(b.lambda[1]));
    double d = std::abs(a.lambda[0] * b.lambda[1] - a.lambda[1] * b.lambda[0]) / (na * nb);
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(a.v[k] - b.v[k]));
    return d;
}

}  // namespace ffgraph
