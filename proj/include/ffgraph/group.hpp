#pragma once

#include <functional>

#include "ffgraph/neighborhood.hpp"

namespace ffgraph {

enum class SelectionBranch { SigmaOne, SigmaTwo };

/// Linear change of local trivialization acting on (H1, H2).
struct TrivializationMatrix {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    double det() const { return a11 * a22 - a12 * a21; }
};

/// Fiber equality within relative tolerance 1e-12.
bool fibers_match(Complex ba, Complex bb);

/// Raw formal addition formula, not normalized. SigmaOne is the
/// sigma_1-origin formula, SigmaTwo the sigma_2-origin one.
PointC2 add_formal(const CanonicalPoint& x, const CanonicalPoint& y, SelectionBranch branch,
                   const ModelParams& params);

namespace detail {
/// add_formal with the e^{S1} factor of the sigma_1 formula biased by
/// exp(s1_bias); the negative-control hook for the check suite.
PointC2 add_formal_biased(const CanonicalPoint& x, const CanonicalPoint& y,
                          SelectionBranch branch, const ModelParams& params, double s1_bias);
}  // namespace detail

/// SigmaTwo iff |q1 q2| >= e^{-S1(b)} |b|; ties go to SigmaTwo.
SelectionBranch select_branch(const CanonicalPoint& x, const CanonicalPoint& y,
                              const ModelParams& params);

/// The fiberwise group law on X_S, including the singular-fiber case
/// analysis; undefined only for (s,s).
CanonicalPoint add(const CanonicalPoint& x, const CanonicalPoint& y, const ModelParams& params);

CanonicalPoint inverse(const CanonicalPoint& x, const ModelParams& params);

/// Isomorphism (C^*, x) -> regular part of the singular fiber.
PointC2 cstar_to_fiber(Complex z, const ModelParams& params);
Complex cstar_from_fiber(const PointC2& pt, const ModelParams& params);

/// Liouville time coordinates of a canonical point relative to sigma_S
/// on its (regular) fiber.
TimePair liouville_time(const CanonicalPoint& x, const ModelParams& params);

/// Flow-time addition oracle: sums t-coordinates in the trivialization
/// A o H and flows from the section.
CanonicalPoint add_via_liouville(const CanonicalPoint& x, const CanonicalPoint& y,
                                 const TrivializationMatrix& A, const ModelParams& params);

struct GraphTriple {
    CanonicalPoint x, y, z;
};

/// Moves an addition triple for sigma_S to the triple for the shifted
/// section sigma' = flow^{t(b)} o sigma_S.
GraphTriple change_section(const GraphTriple& triple,
                           const std::function<TimePair(Complex)>& t, const ModelParams& params);

/// Measures the sigma_S period on fiber b and converts it back to the
/// invariant partials (S1(b), S2(b)).
std::pair<double, double> recover_partials(Complex b, const ModelParams& params);

/// Re-seats a canonical point onto fiber b, preserving its Liouville
/// time coordinates; helper for noisy same-fiber inputs.
CanonicalPoint project_to_fiber(const CanonicalPoint& x, Complex b, const ModelParams& params);

}  // namespace ffgraph
