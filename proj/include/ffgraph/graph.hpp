#pragma once

#include <vector>

#include "ffgraph/group.hpp"

namespace ffgraph {

enum class GraphChartId { E1, E2, E3, E4, E5, E6 };

const char* chart_name(GraphChartId id);

enum class GraphMapKind { F1, F2 };
enum class SlotRegion { D0, U };

/// Which graph map a chart composes with, and the designated region of
/// each image slot.
struct ChartRecipe {
    GraphMapKind map;
    std::array<SlotRegion, 3> slots;
};

ChartRecipe chart_recipe(GraphChartId id);

using Coords3 = std::array<Complex, 3>;
/// Image tuple ordered (p1, q1, p2, q2, p3, q3).
using Tuple6 = std::array<Complex, 6>;

/// F1 is the sigma_1-origin graph map; its third pair carries the
/// invariant factors so it equals the sigma_1 addition of the first two.
/// F2 is the sigma_2-origin graph map and needs no invariant factor.
Tuple6 graph_map(GraphMapKind which, const Coords3& coords, const InvariantPolynomial& S);

std::array<PointC2, 3> tuple_points(const Tuple6& t);

/// Pullback chart predicate: every image pair in its designated region
/// and |abc| < epsilon.
bool chart_contains(GraphChartId id, const Coords3& coords, const ModelParams& params);

/// chart_contains with every open inequality tightened by the given
/// relative margin; used to keep finite differences in-domain.
bool chart_contains_margin(GraphChartId id, const Coords3& coords, const ModelParams& params,
                           double margin);

/// A point of the closed addition graph: canonical triple satisfying
/// z = x + y, or a closure point over (s,s) with z anywhere on F_s.
struct GraphPoint {
    CanonicalPoint x, y, z;
};

GraphPoint chart_embed(GraphChartId id, const Coords3& coords, const ModelParams& params);

/// Raw chart embedding into X'^3 as 12 real coordinates; smooth in the
/// chart coordinates (no quotient normalization), used for tangent data.
Vec12 chart_embed_raw(GraphChartId id, const Coords3& coords, const ModelParams& params);

struct ChartLocation {
    GraphChartId chart;
    Coords3 coords;
};

/// All chart preimages of a point of the closed graph.
std::vector<ChartLocation> locate(const GraphPoint& gp, const ModelParams& params);

Coords3 chart_transition(GraphChartId from, GraphChartId to, const Coords3& coords,
                         const ModelParams& params);

std::pair<CanonicalPoint, CanonicalPoint> project_pr(const GraphPoint& gp);

/// Tubular-neighborhood gluing map (a,b,c) -> (-bc, -ac, 1/c); involution.
Coords3 tubular_phi(const Coords3& coords);

enum class TubularChart { Chart1, Chart2, Chart6 };

/// A point of O(-1)(+)O(-1) over P^1: both vector component pairs lie on
/// the tautological line over lambda.
struct BundlePoint {
    std::array<Complex, 2> lambda;
    std::array<Complex, 4> v;

    Complex taut_residual_first() const { return v[0] * lambda[1] - v[1] * lambda[0]; }
    Complex taut_residual_second() const { return v[2] * lambda[1] - v[3] * lambda[0]; }
};

BundlePoint tubular_G(TubularChart chart, const Coords3& coords, const ModelParams& params);

/// Distance after projective normalization of lambda; exact in v.
double bundle_distance(const BundlePoint& a, const BundlePoint& b);

}  // namespace ffgraph
