#pragma once

#include <array>

#include "ffgraph/model.hpp"

namespace ffgraph {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Wraps an angle to the principal range (-pi, pi].
double wrap_angle(double a);

/// The moment map b = -conj(p) q = H1 + i H2.
Complex hamiltonian(const PointC2& pt);

/// Joint Hamiltonian flow: (p,q) -> (e^{t1+i t2} p, e^{-t1+i t2} q).
PointC2 flow(const PointC2& pt, const TimePair& t);

/// Lagrangian sections sigma_0, sigma_1, sigma_2; SigmaS returns the
/// sigma_1 formula, the canonical formal-domain representative.
PointC2 section(SectionKind kind, Complex b, const ModelParams& params);

/// Time for sigma_2 to flow to sigma_1 on the fiber b, i.e. one period
/// of sigma_S: (S1(b) - ln|b|, S2(b) + arg(b) - pi).
TimePair travel_time(Complex b, const ModelParams& params);

/// Liouville parametrization Psi(b,t) = flow(section(b), t).
PointC2 liouville(SectionKind kind, Complex b, const TimePair& t, const ModelParams& params);

struct PeriodLattice {
    TimePair gen_rotation{0.0, kTwoPi};
    TimePair gen_monodromy;  // travel time t(b)
};

PeriodLattice period_lattice(Complex b, const ModelParams& params);

// Real coordinates for a point are ordered (Re p, Im p, Re q, Im q).
using Vec4 = std::array<double, 4>;
using Vec12 = std::array<double, 12>;

Vec4 to_real(const PointC2& pt);
PointC2 from_real(const Vec4& v);

/// omega_0 = dp1^dq1 + dp2^dq2 evaluated on real tangent 4-vectors.
double omega(const Vec4& v, const Vec4& w);

/// (-omega)(+)(-omega)(+)omega on tangent 12-vectors over a point triple.
double omega_tilde(const Vec12& v, const Vec12& w);

/// omega_tilde with configurable slot signs (negative-control hook).
double omega_tilde_signed(const Vec12& v, const Vec12& w, const std::array<double, 3>& signs);

}  // namespace ffgraph
