#include "ffgraph/group.hpp"

#include <cmath>

namespace ffgraph {

namespace {

bool on_singular_fiber(const PointC2& pt) {
    return pt.p == Complex{} || pt.q == Complex{};
}

bool is_singular_point(const PointC2& pt) {
    return pt.p == Complex{} && pt.q == Complex{};
}

Complex shared_fiber(const CanonicalPoint& x, const CanonicalPoint& y) {
    const Complex bx = x.pt.fiber(), by = y.pt.fiber();
    if (!fibers_match(bx, by))
        throw FiberMismatch("operands lie on different fibers");
    return 0.5 * (bx + by);
}

/// Prop. 3.5 case analysis on the singular fiber.
CanonicalPoint add_singular(const PointC2& x, const PointC2& y, const ModelParams& params) {
    if (is_singular_point(x) && is_singular_point(y))
        throw UndefinedAtDoublePoint("(s,s) has no addition value");
    if (is_singular_point(x) || is_singular_point(y))
        return {PointC2{}};  // the singular point is absorbing

    const auto s = params.invariant.eval_all(Complex{});
    const double es1 = std::exp(s.s1);
    const bool xp = (x.q == Complex{});  // x on the p-axis branch
    const bool yp = (y.q == Complex{});

    if (xp && yp) {
        const Complex e = std::exp(Complex(-s.s1, -s.s2));
        return {PointC2{x.p * y.p * e, Complex{}}};
    }
    if (!xp && !yp) {
        return {PointC2{Complex{}, x.q * y.q}};
    }
    const Complex p = xp ? x.p : y.p;
    const Complex q = xp ? y.q : x.q;
    if (std::abs(p / q) <= es1) {
        return {PointC2{p / std::conj(q), Complex{}}};
    }
    const Complex e = std::exp(Complex(s.s1, -s.s2));
    return {PointC2{Complex{}, e * q / std::conj(p)}};
}

}  // namespace

bool fibers_match(Complex ba, Complex bb) {
    const double scale = std::max(std::abs(ba), std::abs(bb));
    return std::abs(ba - bb) <= 1e-12 * std::max(1.0, scale);
}

PointC2 add_formal(const CanonicalPoint& x, const CanonicalPoint& y, SelectionBranch branch,
                   const ModelParams& params) {
    return detail::add_formal_biased(x, y, branch, params, 0.0);
}

PointC2 detail::add_formal_biased(const CanonicalPoint& x, const CanonicalPoint& y,
                                  SelectionBranch branch, const ModelParams& params,
                                  double s1_bias) {
    const Complex b = shared_fiber(x, y);
    if (b == Complex{} || on_singular_fiber(x.pt) || on_singular_fiber(y.pt))
        throw SingularFiberInput("add_formal: singular fiber");
    const auto [p1, q1] = x.pt;
    const auto [p2, q2] = y.pt;
    if (branch == SelectionBranch::SigmaOne) {
        const auto s = params.invariant.eval_all(b);
        const Complex em = std::exp(Complex(-s.s1 - s1_bias, -s.s2));
        const Complex ep = std::exp(Complex(s.s1 + s1_bias, -s.s2));
        return {em * p1 * p2, ep * q1 / std::conj(p2)};
    }
    return {p1 / std::conj(q2), q1 * q2};
}

SelectionBranch select_branch(const CanonicalPoint& x, const CanonicalPoint& y,
                              const ModelParams& params) {
    const Complex b = shared_fiber(x, y);
    if (b == Complex{} || on_singular_fiber(x.pt) || on_singular_fiber(y.pt))
        throw SingularFiberInput("select_branch: singular fiber");
    const double lhs = std::abs(x.pt.q * y.pt.q);
    const double rhs = std::exp(-params.s1(b)) * std::abs(b);
    return lhs >= rhs ? SelectionBranch::SigmaTwo : SelectionBranch::SigmaOne;
}

CanonicalPoint add(const CanonicalPoint& x, const CanonicalPoint& y, const ModelParams& params) {
    const bool xs = on_singular_fiber(x.pt);
    const bool ys = on_singular_fiber(y.pt);
    if (xs != ys)
        throw FiberMismatch("one operand is singular, the other regular");
    if (xs && ys) return add_singular(x.pt, y.pt, params);
    const SelectionBranch branch = select_branch(x, y, params);
    return normalize(add_formal(x, y, branch, params), params);
}

CanonicalPoint inverse(const CanonicalPoint& x, const ModelParams& params) {
    if (is_singular_point(x.pt))
        throw NoInverseAtSingularPoint("the singular point is absorbing");
    if (on_singular_fiber(x.pt)) {
        const Complex z = cstar_from_fiber(x.pt, params);
        return {cstar_to_fiber(1.0 / z, params)};
    }
    const Complex b = x.pt.fiber();
    // Add2-derived candidate; verified against the flow-time oracle
    const PointC2 raw{-std::conj(b) * std::conj(x.pt.q), 1.0 / x.pt.q};
    return normalize(raw, params);
}

PointC2 cstar_to_fiber(Complex z, const ModelParams& params) {
    if (z == Complex{}) throw ZeroInput("cstar_to_fiber: z = 0");
    if (std::abs(z) <= 1.0) {
        const auto s = params.invariant.eval_all(Complex{});
        return {z * std::exp(Complex(s.s1, s.s2)), Complex{}};
    }
    return {Complex{}, 1.0 / std::conj(z)};
}

Complex cstar_from_fiber(const PointC2& pt, const ModelParams& params) {
    if (is_singular_point(pt)) throw SingularPointInput("cstar_from_fiber: singular point");
    if (!on_singular_fiber(pt)) throw FiberMismatch("cstar_from_fiber: not on the singular fiber");
    if (pt.q == Complex{}) {
        const auto s = params.invariant.eval_all(Complex{});
        return pt.p * std::exp(Complex(-s.s1, -s.s2));
    }
    return 1.0 / std::conj(pt.q);
}

TimePair liouville_time(const CanonicalPoint& x, const ModelParams& params) {
    if (on_singular_fiber(x.pt))
        throw SingularFiberInput("liouville_time: singular fiber");
    const Complex b = x.pt.fiber();
    const auto s = params.invariant.eval_all(b);
    return {std::log(std::abs(x.pt.p)) - s.s1, wrap_angle(std::arg(x.pt.p) - s.s2)};
}

CanonicalPoint add_via_liouville(const CanonicalPoint& x, const CanonicalPoint& y,
                                 const TrivializationMatrix& A, const ModelParams& params) {
    if (std::abs(A.det()) < 1e-14) throw SingularMatrix("trivialization matrix is singular");
    const Complex b = shared_fiber(x, y);
    if (b == Complex{} || on_singular_fiber(x.pt) || on_singular_fiber(y.pt))
        throw SingularFiberInput("add_via_liouville: singular fiber");

    // t = A^T s for the time coordinates s of the trivialization A o H
    const auto to_s = [&](const TimePair& t) {
        const double inv_det = 1.0 / A.det();
        // A^{-T} t
        return TimePair{inv_det * (A.a22 * t.t1 - A.a21 * t.t2),
                        inv_det * (-A.a12 * t.t1 + A.a11 * t.t2)};
    };
    const auto to_t = [&](const TimePair& s) {
        return TimePair{A.a11 * s.t1 + A.a21 * s.t2, A.a12 * s.t1 + A.a22 * s.t2};
    };

    const TimePair sx = to_s(liouville_time(x, params));
    const TimePair sy = to_s(liouville_time(y, params));
    const TimePair total = to_t({sx.t1 + sy.t1, sx.t2 + sy.t2});
    return normalize(flow(section(SectionKind::SigmaS, b, params), total), params);
}

GraphTriple change_section(const GraphTriple& triple,
                           const std::function<TimePair(Complex)>& t, const ModelParams& params) {
    const Complex b = triple.z.pt.fiber();
    const TimePair tb = t(b);
    const PointC2 shifted = flow(triple.z.pt, {-tb.t1, -tb.t2});
    return {triple.x, triple.y, normalize(shifted, params)};
}

std::pair<double, double> recover_partials(Complex b, const ModelParams& params) {
    if (b == Complex{}) throw SingularFiber("recover_partials: b = 0");
    // Match flow(sigma_2(b), t) to sigma_1(b); the p-component fixes both
    // unknowns, the q-component is checked as a residual.
    const PointC2 from = section(SectionKind::Sigma2, b, params);
    const PointC2 to = section(SectionKind::Sigma1, b, params);
    const Complex ratio = to.p / from.p;
    const TimePair t{std::log(std::abs(ratio)), std::arg(ratio)};
    const PointC2 reached = flow(from, t);
    if (std::abs(reached.q - to.q) > 1e-9 * (1.0 + std::abs(to.q)))
        throw ModelError("recover_partials: period solve residual too large");
    return {t.t1 + std::log(std::abs(b)),
            wrap_angle(t.t2 - std::arg(b) + kTwoPi / 2.0)};
}

CanonicalPoint project_to_fiber(const CanonicalPoint& x, Complex b, const ModelParams& params) {
    if (on_singular_fiber(x.pt) || b == Complex{})
        throw SingularFiberInput("project_to_fiber: singular fiber");
    const TimePair t = liouville_time(x, params);
    return normalize(flow(section(SectionKind::SigmaS, b, params), t), params);
}

}  // namespace ffgraph
