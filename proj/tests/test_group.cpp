#include "test_common.hpp"

#include <cmath>
#include <random>

#include "ffgraph/group.hpp"

using namespace ffgraph;
using namespace ffgraph::test;

namespace {

CanonicalPoint can(double pr, double pi, double qr, double qi) {
    return {PointC2{Complex(pr, pi), Complex(qr, qi)}};
}

}  // namespace

TEST_CASE("formal addition on both branches") {
    const ModelParams params = zero_params(0.3);
    const Complex b(-0.05, 0.02);
    const CanonicalPoint x =
        normalize(flow(section(SectionKind::SigmaS, b, params), {-0.4, 1.3}), params);
    const CanonicalPoint id = normalize(section(SectionKind::SigmaS, b, params), params);
    CHECK(pt_close(add_formal(x, id, SelectionBranch::SigmaOne, params), x.pt, 1e-14));

    const CanonicalPoint half = can(0.5, 0, 0.5, 0);
    CHECK(pt_close(add_formal(half, half, SelectionBranch::SigmaTwo, params),
                   {Complex(1, 0), Complex(0.25, 0)}, 1e-14));
    CHECK(pt_close(add_formal(half, half, SelectionBranch::SigmaOne, params),
                   {Complex(0.25, 0), Complex(1, 0)}, 1e-14));
}

TEST_CASE("branch selection") {
    const ModelParams params = zero_params(0.3);
    CHECK(select_branch(can(0.5, 0, 0.5, 0), can(0.5, 0, 0.5, 0), params) ==
          SelectionBranch::SigmaTwo);  // tie goes to the sigma_2 branch
    CHECK(select_branch(can(0.9, 0, 0.1, 0), can(0.9, 0, 0.1, 0), params) ==
          SelectionBranch::SigmaOne);
    CHECK(select_branch(can(0.1, 0, 0.9, 0), can(0.1, 0, 0.9, 0), params) ==
          SelectionBranch::SigmaTwo);
}

TEST_CASE("addition at frozen points") {
    const ModelParams params = zero_params(0.3);
    const Complex b(0.03, -0.07);
    const CanonicalPoint x =
        normalize(flow(section(SectionKind::SigmaS, b, params), {-0.8, 0.4}), params);
    const CanonicalPoint id = normalize(section(SectionKind::SigmaS, b, params), params);
    CHECK(same_point(add(x, id, params).pt, x.pt, 1e-13, params));

    CHECK(pt_close(add(can(0.9, 0, 0.1, 0), can(0.9, 0, 0.1, 0), params).pt,
                   {Complex(0.81, 0), Complex(0.1 / 0.9, 0)}, 1e-14));
    CHECK(pt_close(add(can(0.5, 0, 0, 0), can(0, 0, 0.5, 0), params).pt,
                   {Complex(1, 0), Complex(0, 0)}, 1e-14));
    CHECK_THROWS_AS(add(can(0, 0, 0, 0), can(0, 0, 0, 0), params), UndefinedAtDoublePoint);
    CHECK_THROWS_AS(add(can(0.5, 0, 0, 0), can(0.5, 0, 0.5, 0), params), FiberMismatch);
}

TEST_CASE("singular point is absorbing") {
    const ModelParams params = zero_params();
    const CanonicalPoint s = can(0, 0, 0, 0);
    const CanonicalPoint x = can(0.5, 0, 0, 0);
    CHECK(pt_close(add(s, x, params).pt, PointC2{}));
    CHECK(pt_close(add(x, s, params).pt, PointC2{}));
    CHECK_THROWS_AS(inverse(s, params), NoInverseAtSingularPoint);
}

TEST_CASE("inverses") {
    const ModelParams params = zero_params(0.5);
    const Complex b(0.02, 0.04);
    const CanonicalPoint id = normalize(section(SectionKind::SigmaS, b, params), params);
    CHECK(same_point(inverse(id, params).pt, id.pt, 1e-13, params));

    CHECK(pt_close(inverse(can(0.8, 0, 0.5, 0), params).pt,
                   {Complex(0.5, 0), Complex(0.8, 0)}, 1e-14));

    const Complex p(0.3, 0.4);
    const CanonicalPoint axis{PointC2{p, Complex{}}};
    CHECK(pt_close(inverse(axis, params).pt, {Complex{}, std::conj(p)}, 1e-14));
    CHECK(pt_close(add(axis, inverse(axis, params), params).pt, {Complex(1, 0), Complex{}},
                   1e-14));
}

TEST_CASE("C* model of the singular fiber") {
    const ModelParams params = zero_params();
    CHECK(pt_close(cstar_to_fiber(Complex(1, 0), params), {Complex(1, 0), Complex{}}));
    CHECK(pt_close(cstar_to_fiber(Complex(2, 0), params), {Complex{}, Complex(0.5, 0)}));
    CHECK_THROWS_AS(cstar_to_fiber(Complex{}, params), ZeroInput);
    for (const Complex z : {Complex(0.4, -0.3), Complex(2.5, 1.0)})
        CHECK(cx_close(cstar_from_fiber(cstar_to_fiber(z, params), params), z, 1e-14));
    // multiplicativity through the fiber
    const Complex z1(0.8, 0.1), z2(1.7, -0.4);
    const auto sum = add({cstar_to_fiber(z1, params)}, {cstar_to_fiber(z2, params)}, params);
    CHECK(cx_close(cstar_from_fiber(sum.pt, params), z1 * z2, 1e-13));
}

TEST_CASE("flow-time oracle and trivialization invariance") {
    const ModelParams params = zero_params(0.3);
    const CanonicalPoint half = can(0.5, 0, 0.5, 0);
    const TrivializationMatrix identity;
    CHECK(pt_close(add_via_liouville(half, half, identity, params).pt,
                   {Complex(1, 0), Complex(0.25, 0)}, 1e-13));
    const TrivializationMatrix diag{2.0, 0.0, 0.0, 1.0};
    CHECK(pt_close(add_via_liouville(half, half, diag, params).pt,
                   {Complex(1, 0), Complex(0.25, 0)}, 1e-13));

    const Complex b(0.01, -0.02);
    const CanonicalPoint x =
        normalize(flow(section(SectionKind::SigmaS, b, params), {-1.1, 2.0}), params);
    const CanonicalPoint id = normalize(section(SectionKind::SigmaS, b, params), params);
    CHECK(same_point(add_via_liouville(x, id, diag, params).pt, x.pt, 1e-12, params));

    CHECK_THROWS_AS(add_via_liouville(half, half, {1, 1, 1, 1}, params), SingularMatrix);
}

TEST_CASE("add agrees with the oracle on random pairs") {
    const ModelParams params = generic_params();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-3.14, 3.14), rad(0.2, 0.9);
    const TrivializationMatrix identity;
    for (int n = 0; n < 200; ++n) {
        const Complex b = std::polar(rad(rng) * params.epsilon, ang(rng));
        const double period = travel_time(b, params).t1;
        const auto pick = [&] {
            return normalize(flow(section(SectionKind::SigmaS, b, params),
                                  {-rad(rng) * period, ang(rng)}),
                             params);
        };
        const CanonicalPoint x = pick(), y = pick();
        CHECK(quotient_distance(add(x, y, params).pt,
                                add_via_liouville(x, y, identity, params).pt,
                                params) < 1e-10);
        CHECK(quotient_distance(add(x, y, params).pt, add(y, x, params).pt, params) < 1e-12);
    }
}

TEST_CASE("section change") {
    const ModelParams params = zero_params(0.3);
    const Complex b(0.04, 0.01);
    const CanonicalPoint x =
        normalize(flow(section(SectionKind::SigmaS, b, params), {-0.6, 0.9}), params);
    const GraphTriple triple{x, x, add(x, x, params)};

    const auto zero_shift = [](Complex) { return TimePair{0.0, 0.0}; };
    const GraphTriple same = change_section(triple, zero_shift, params);
    CHECK(pt_close(same.z.pt, triple.z.pt));

    const auto half_turn = [](Complex) { return TimePair{0.0, kTwoPi / 2.0}; };
    const GraphTriple turned = change_section(triple, half_turn, params);
    CHECK(pt_close(turned.z.pt,
                   normalize(flow(triple.z.pt, {0.0, -kTwoPi / 2.0}), params).pt, 1e-14));

    const CanonicalPoint s = can(0, 0, 0, 0);
    const GraphTriple fixed = change_section({s, s, s}, half_turn, params);
    CHECK(pt_close(fixed.z.pt, PointC2{}));
}

TEST_CASE("invariant partials recovered from the measured period") {
    ModelParams params = zero_params(0.3);
    auto [s1, s2] = recover_partials(Complex(-0.25, 0), params);
    CHECK(s1 == doctest::Approx(0.0));
    CHECK(s2 == doctest::Approx(0.0));

    params.invariant.add_term(1, 0, 1.0);  // S = b1
    auto [t1, t2] = recover_partials(Complex(-0.25, 0), params);
    CHECK(t1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t2 == doctest::Approx(0.0));

    CHECK_THROWS_AS(recover_partials(Complex{}, params), SingularFiber);
}

TEST_CASE("fiber projection preserves flow times") {
    const ModelParams params = generic_params();
    const Complex b(0.05, 0.01), b2(0.049, 0.011);
    const CanonicalPoint x =
        normalize(flow(section(SectionKind::SigmaS, b, params), {-0.5, 1.0}), params);
    const CanonicalPoint moved = project_to_fiber(x, b2, params);
    CHECK(cx_close(moved.pt.fiber(), b2, 1e-14));
    const TimePair ta = liouville_time(x, params), tb = liouville_time(moved, params);
    CHECK(ta.t1 == doctest::Approx(tb.t1).epsilon(1e-12));
    CHECK(wrap_angle(ta.t2 - tb.t2) == doctest::Approx(0.0));
}
