#include "test_common.hpp"

#include <cmath>
#include <random>

#include "ffgraph/graph.hpp"

using namespace ffgraph;
using namespace ffgraph::test;

namespace {

double tuple_err(const Tuple6& a, const Tuple6& b) {
    double d = 0.0;
    for (int k = 0; k < 6; ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

}  // namespace

TEST_CASE("graph maps at frozen points") {
    const InvariantPolynomial zero;
    CHECK(tuple_err(graph_map(GraphMapKind::F1, {Complex{}, Complex{}, Complex{}}, zero),
                    Tuple6{}) == 0.0);

    const Coords3 half{Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0)};
    CHECK(tuple_err(graph_map(GraphMapKind::F1, half, zero),
                    {Complex(0.5, 0), Complex(-0.25, 0), Complex(0.5, 0), Complex(-0.25, 0),
                     Complex(0.25, 0), Complex(-0.5, 0)}) < 1e-15);
    CHECK(tuple_err(graph_map(GraphMapKind::F2, half, zero),
                    {Complex(-0.25, 0), Complex(0.5, 0), Complex(-0.25, 0), Complex(0.5, 0),
                     Complex(-0.5, 0), Complex(0.25, 0)}) < 1e-15);
}

TEST_CASE("graph map images share the fiber abc") {
    const ModelParams params = generic_params();
    const Coords3 coords{Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.15, -0.3)};
    const Complex b0 = coords[0] * coords[1] * coords[2];
    for (GraphMapKind kind : {GraphMapKind::F1, GraphMapKind::F2})
        for (const PointC2& pt : tuple_points(graph_map(kind, coords, params.invariant)))
            CHECK(cx_close(pt.fiber(), b0, 1e-15));
}

TEST_CASE("third pair equals the addition of the first two") {
    const ModelParams params = generic_params();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    for (int n = 0; n < 100; ++n) {
        const Coords3 coords{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                             Complex(u(rng), u(rng))};
        if (std::abs(coords[0] * coords[1] * coords[2]) >= 0.9 * params.epsilon) continue;
        for (GraphMapKind kind : {GraphMapKind::F1, GraphMapKind::F2}) {
            const auto pts = tuple_points(graph_map(kind, coords, params.invariant));
            bool regular = true;
            for (const PointC2& pt : pts)
                if (pt.p == Complex{} || pt.q == Complex{}) regular = false;
            if (!regular) continue;
            const CanonicalPoint x = normalize(pts[0], params);
            const CanonicalPoint y = normalize(pts[1], params);
            CHECK(quotient_distance(add(x, y, params).pt, pts[2], params) < 1e-12);
        }
    }
}

TEST_CASE("chart membership at frozen points") {
    {
        const ModelParams params = zero_params(0.2);
        CHECK(chart_contains(GraphChartId::E1,
                             {Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0)}, params));
        CHECK_FALSE(chart_contains(GraphChartId::E1,
                                   {Complex(1, 0), Complex(0.5, 0), Complex(0.5, 0)}, params));
    }
    {
        const ModelParams params = zero_params();
        CHECK(chart_contains(GraphChartId::E3,
                             {Complex(1, 0), Complex(1, 0), Complex(0.05, 0)}, params));
    }
}

TEST_CASE("chart embeddings at frozen points") {
    {
        const ModelParams params = zero_params(0.2);
        const GraphPoint gp = chart_embed(
            GraphChartId::E1, {Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0)}, params);
        CHECK(pt_close(gp.x.pt, {Complex(0.5, 0), Complex(-0.25, 0)}));
        CHECK(pt_close(gp.y.pt, {Complex(0.5, 0), Complex(-0.25, 0)}));
        CHECK(pt_close(gp.z.pt, {Complex(0.25, 0), Complex(-0.5, 0)}));
    }
    {
        const ModelParams params = zero_params();
        const Complex c(0.04, 0.02);
        const GraphPoint gp =
            chart_embed(GraphChartId::E3, {Complex(1, 0), Complex(1, 0), c}, params);
        for (const CanonicalPoint* pt : {&gp.x, &gp.y, &gp.z})
            CHECK(pt_close(pt->pt, {Complex(1, 0), -c}, 1e-15));

        const GraphPoint closure =
            chart_embed(GraphChartId::E1, {Complex{}, Complex{}, c}, params);
        CHECK(pt_close(closure.x.pt, PointC2{}));
        CHECK(pt_close(closure.y.pt, PointC2{}));
        CHECK(pt_close(closure.z.pt, {Complex{}, -c}));
    }
    CHECK_THROWS_AS(chart_embed(GraphChartId::E1,
                                {Complex(1, 0), Complex(0.5, 0), Complex(0.5, 0)},
                                zero_params(0.2)),
                    OutsideChartDomain);
}

TEST_CASE("locating graph points in the atlas") {
    const ModelParams params = zero_params();
    const CanonicalPoint s{PointC2{}};

    const auto origins = locate({s, s, s}, params);
    REQUIRE(origins.size() == 2);
    std::set<GraphChartId> seen;
    for (const auto& loc : origins) {
        seen.insert(loc.chart);
        for (const Complex& c : loc.coords) CHECK(c == Complex{});
    }
    CHECK(seen == std::set<GraphChartId>{GraphChartId::E1, GraphChartId::E2});

    const Complex b(0.05, 0);
    const CanonicalPoint sig = normalize(section(SectionKind::SigmaS, b, params), params);
    const auto sections = locate({sig, sig, sig}, params);
    REQUIRE(sections.size() == 1);
    CHECK(sections[0].chart == GraphChartId::E3);
    CHECK(cx_close(sections[0].coords[0], Complex(1, 0), 1e-14));
    CHECK(cx_close(sections[0].coords[1], Complex(1, 0), 1e-14));
    CHECK(cx_close(sections[0].coords[2], b, 1e-14));

    const Coords3 interior{Complex(0.3, 0.05), Complex(0.4, -0.1), Complex(0.2, 0.1)};
    REQUIRE(chart_contains(GraphChartId::E1, interior, params));
    const auto found = locate(chart_embed(GraphChartId::E1, interior, params), params);
    bool has_e1 = false;
    for (const auto& loc : found) {
        if (loc.chart != GraphChartId::E1) continue;
        has_e1 = true;
        for (int k = 0; k < 3; ++k) CHECK(cx_close(loc.coords[k], interior[k], 1e-12));
    }
    CHECK(has_e1);
}

TEST_CASE("locate rejects non-graph triples") {
    const ModelParams params = zero_params();
    const Complex b(0.04, 0);
    const CanonicalPoint sig = normalize(section(SectionKind::SigmaS, b, params), params);
    const CanonicalPoint off =
        normalize(flow(section(SectionKind::SigmaS, b, params), {-0.9, 1.0}), params);
    CHECK_THROWS_AS(locate({sig, sig, off}, params), NotOnGraph);
}

TEST_CASE("projection to the first two factors") {
    const ModelParams params = zero_params(0.2);
    const GraphPoint gp = chart_embed(
        GraphChartId::E1, {Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0)}, params);
    const auto [x, y] = project_pr(gp);
    CHECK(pt_close(x.pt, gp.x.pt));
    CHECK(pt_close(y.pt, gp.y.pt));

    const CanonicalPoint s{PointC2{}};
    const GraphPoint closure{s, s, {PointC2{Complex{}, Complex(0.3, 0)}}};
    const auto [cx, cy] = project_pr(closure);
    CHECK(pt_close(cx.pt, PointC2{}));
    CHECK(pt_close(cy.pt, PointC2{}));
}

TEST_CASE("gluing map between the tubular charts") {
    const Coords3 in{Complex(0.1, 0), Complex(0.2, 0), Complex(1, 0)};
    const Coords3 out = tubular_phi(in);
    CHECK(cx_close(out[0], Complex(-0.2, 0)));
    CHECK(cx_close(out[1], Complex(-0.1, 0)));
    CHECK(cx_close(out[2], Complex(1, 0)));

    const Coords3 gen{Complex(0.12, -0.3), Complex(-0.05, 0.2), Complex(0.7, 0.4)};
    const Coords3 back = tubular_phi(tubular_phi(gen));
    for (int k = 0; k < 3; ++k) CHECK(cx_close(back[k], gen[k], 1e-15));

    const Coords3 axis = tubular_phi({Complex{}, Complex{}, Complex(0.5, 0)});
    CHECK(cx_close(axis[0], Complex{}));
    CHECK(cx_close(axis[1], Complex{}));
    CHECK(cx_close(axis[2], Complex(2, 0)));

    CHECK_THROWS_AS(tubular_phi({Complex(0.1, 0), Complex(0.2, 0), Complex{}}),
                    ZeroThirdCoordinate);
}

TEST_CASE("tubular chart maps into the bundle") {
    const ModelParams params = zero_params();
    {
        const BundlePoint bp =
            tubular_G(TubularChart::Chart1, {Complex{}, Complex{}, Complex(0.3, 0)}, params);
        CHECK(cx_close(bp.lambda[0], Complex(1, 0)));
        CHECK(cx_close(bp.lambda[1], Complex(-0.3, 0)));
        for (const Complex& v : bp.v) CHECK(v == Complex{});
    }
    {
        const BundlePoint bp = tubular_G(
            TubularChart::Chart1, {Complex(0.1, 0), Complex(0.2, 0), Complex(0.5, 0)}, params);
        CHECK(cx_close(bp.lambda[0], Complex(1, 0)));
        CHECK(cx_close(bp.lambda[1], Complex(-0.5, 0)));
        CHECK(cx_close(bp.v[0], Complex(0.2, 0)));
        CHECK(cx_close(bp.v[1], Complex(-0.1, 0)));
        CHECK(cx_close(bp.v[2], Complex(0.1, 0)));
        CHECK(cx_close(bp.v[3], Complex(-0.05, 0)));
        CHECK(bp.taut_residual_first() == Complex{});
        CHECK(bp.taut_residual_second() == Complex{});
    }
    CHECK_THROWS_AS(tubular_G(TubularChart::Chart1,
                              {Complex(1, 0), Complex(0.5, 0), Complex(0.5, 0)}, params),
                    OutsideChartDomain);
}

TEST_CASE("tubular charts glue: G2 after phi equals G1") {
    const ModelParams params = zero_params();
    const Coords3 c{Complex(0.05, 0.02), Complex(-0.03, 0.04), Complex(0.8, 0.1)};
    REQUIRE(chart_contains(GraphChartId::E1, c, params));
    const Coords3 image = tubular_phi(c);
    REQUIRE(chart_contains(GraphChartId::E6, image, params));
    CHECK(bundle_distance(tubular_G(TubularChart::Chart1, c, params),
                          tubular_G(TubularChart::Chart6, image, params)) < 1e-15);
}

TEST_CASE("chart transitions") {
    const ModelParams params = zero_params();
    const Coords3 c{Complex(0.05, 0.02), Complex(-0.03, 0.04), Complex(0.8, 0.1)};
    REQUIRE(chart_contains(GraphChartId::E1, c, params));

    const Coords3 in_e6 = chart_transition(GraphChartId::E1, GraphChartId::E6, c, params);
    const Coords3 phi = tubular_phi(c);
    for (int k = 0; k < 3; ++k) CHECK(cx_close(in_e6[k], phi[k], 1e-15));

    const Coords3 back = chart_transition(GraphChartId::E6, GraphChartId::E1, in_e6, params);
    for (int k = 0; k < 3; ++k) CHECK(cx_close(back[k], c[k], 1e-15));

    // the same quotient point through both charts
    const GraphPoint via1 = chart_embed(GraphChartId::E1, c, params);
    const GraphPoint via6 = chart_embed(GraphChartId::E6, in_e6, params);
    CHECK(quotient_distance(via1.x.pt, via6.x.pt, params) < 1e-13);
    CHECK(quotient_distance(via1.y.pt, via6.y.pt, params) < 1e-13);
    CHECK(quotient_distance(via1.z.pt, via6.z.pt, params) < 1e-13);

    if (chart_contains(GraphChartId::E2, in_e6, params)) {
        const Coords3 same =
            chart_transition(GraphChartId::E6, GraphChartId::E2, in_e6, params);
        for (int k = 0; k < 3; ++k) CHECK(cx_close(same[k], in_e6[k]));
    }

    CHECK_THROWS_AS(chart_transition(GraphChartId::E1, GraphChartId::E3, c, params),
                    NotInOverlap);
}
