#include "ffgraph/core.hpp"

#include <cmath>

namespace ffgraph {

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a <= -kTwoPi / 2.0) a += kTwoPi;
    if (a > kTwoPi / 2.0) a -= kTwoPi;
    return a;
}

Complex hamiltonian(const PointC2& pt) { return -std::conj(pt.p) * pt.q; }

PointC2 flow(const PointC2& pt, const TimePair& t) {
    const Complex fp = std::exp(Complex(t.t1, t.t2));
    const Complex fq = std::exp(Complex(-t.t1, t.t2));
    return {fp * pt.p, fq * pt.q};
}

PointC2 section(SectionKind kind, Complex b, const ModelParams& params) {
    if (std::abs(b) >= params.epsilon)
        throw FiberOutOfRange("section: |b| >= epsilon");
    switch (kind) {
        case SectionKind::Sigma0:
            return {Complex(1.0, 0.0), -b};
        case SectionKind::Sigma2:
            return {-std::conj(b), Complex(1.0, 0.0)};
        case SectionKind::Sigma1:
        case SectionKind::SigmaS: {
            const auto s = params.invariant.eval_all(b);
            const Complex e1 = std::exp(Complex(s.s1, s.s2));
            const Complex e2 = std::exp(Complex(-s.s1, s.s2));
            return {e1, -e2 * b};
        }
    }
    throw ModelError("section: bad kind");
}

TimePair travel_time(Complex b, const ModelParams& params) {
    if (std::abs(b) >= params.epsilon)
        throw FiberOutOfRange("travel_time: |b| >= epsilon");
    if (b == Complex(0.0, 0.0))
        throw SingularFiber("travel_time: b = 0");
    const auto s = params.invariant.eval_all(b);
    return {s.s1 - std::log(std::abs(b)), s.s2 + std::arg(b) - kTwoPi / 2.0};
}

PointC2 liouville(SectionKind kind, Complex b, const TimePair& t, const ModelParams& params) {
    return flow(section(kind, b, params), t);
}

PeriodLattice period_lattice(Complex b, const ModelParams& params) {
    return {TimePair{0.0, kTwoPi}, travel_time(b, params)};
}

Vec4 to_real(const PointC2& pt) {
    return {pt.p.real(), pt.p.imag(), pt.q.real(), pt.q.imag()};
}

PointC2 from_real(const Vec4& v) {
    return {Complex(v[0], v[1]), Complex(v[2], v[3])};
}

double omega(const Vec4& v, const Vec4& w) {
    // dp1^dq1 + dp2^dq2 in coordinates (p1, p2, q1, q2)
    return v[0] * w[2] - v[2] * w[0] + v[1] * w[3] - v[3] * w[1];
}

double omega_tilde(const Vec12& v, const Vec12& w) {
    return omega_tilde_signed(v, w, {-1.0, -1.0, 1.0});
}

double omega_tilde_signed(const Vec12& v, const Vec12& w, const std::array<double, 3>& signs) {
    double total = 0.0;
    for (int slot = 0; slot < 3; ++slot) {
        Vec4 a{}, b{};
        for (int k = 0; k < 4; ++k) {
            a[k] = v[4 * slot + k];
            b[k] = w[4 * slot + k];
        }
        total += signs[slot] * omega(a, b);
    }
    return total;
}

double ModelParams::s1_max() const {
    if (invariant.is_zero()) return 0.0;
    // polar grid over the closed disc; S1 is polynomial so a modest grid
    // with the validation slack is enough
    double m = 0.0;
    const int nr = 48, na = 96;
    for (int ir = 0; ir <= nr; ++ir) {
        const double r = epsilon * ir / nr;
        for (int ia = 0; ia < na; ++ia) {
            const double th = kTwoPi * ia / na;
            const double v = std::abs(invariant.d1(r * std::cos(th), r * std::sin(th)));
            if (v > m) m = v;
        }
    }
    return m;
}

void ModelParams::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 0.25))
        throw InvalidParams("epsilon must lie in (0, 0.25]");
    if (!(delta > 0.0 && delta <= 0.5))
        throw InvalidParams("delta must lie in (0, 0.5]");
    const double bound = std::log(1.0 / epsilon) - delta;
    if (s1_max() > bound)
        throw InvalidParams("max |S1| over the fiber disc exceeds ln(1/epsilon) - delta");
}

}  // namespace ffgraph
