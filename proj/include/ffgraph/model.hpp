#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "ffgraph/invariant.hpp"

namespace ffgraph {

using Complex = std::complex<double>;

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FiberOutOfRange : ModelError { using ModelError::ModelError; };
struct SingularFiber : ModelError { using ModelError::ModelError; };
struct DivisionAtSingularBranch : ModelError { using ModelError::ModelError; };
struct NotInModel : ModelError { using ModelError::ModelError; };
struct FiberMismatch : ModelError { using ModelError::ModelError; };
struct SingularFiberInput : ModelError { using ModelError::ModelError; };
struct UndefinedAtDoublePoint : ModelError { using ModelError::ModelError; };
struct NoInverseAtSingularPoint : ModelError { using ModelError::ModelError; };
struct ZeroInput : ModelError { using ModelError::ModelError; };
struct SingularPointInput : ModelError { using ModelError::ModelError; };
struct SingularMatrix : ModelError { using ModelError::ModelError; };
struct OutsideChartDomain : ModelError { using ModelError::ModelError; };
struct NotInOverlap : ModelError { using ModelError::ModelError; };
struct NotOnGraph : ModelError { using ModelError::ModelError; };
struct ZeroThirdCoordinate : ModelError { using ModelError::ModelError; };
struct UnknownCheckId : ModelError { using ModelError::ModelError; };
struct DimensionMismatch : ModelError { using ModelError::ModelError; };
struct InvalidParams : ModelError { using ModelError::ModelError; };

/// Flow times for (H1, H2). t2 is meaningful modulo 2*pi.
struct TimePair {
    double t1 = 0.0;
    double t2 = 0.0;
};

/// A point (p,q) of C^2 carrying the fiber value b = -conj(p) q.
struct PointC2 {
    Complex p{0.0, 0.0};
    Complex q{0.0, 0.0};

    Complex fiber() const { return -std::conj(p) * q; }
};

enum class SectionKind { Sigma0, Sigma1, Sigma2, SigmaS };

/// Model-neighborhood parameters: fiber-disc radius, gluing strip width,
/// and the classifying invariant.
struct ModelParams {
    double epsilon = 0.1;
    double delta = 0.3;
    InvariantPolynomial invariant;

    double s1(Complex b) const { return invariant.d1(b.real(), b.imag()); }
    double s2(Complex b) const { return invariant.d2(b.real(), b.imag()); }

    /// Grid estimate of max |S1| over the closed epsilon-disc.
    double s1_max() const;

    /// Rejects parameters for which the gluing strips would leave the model:
    /// requires 0 < eps <= 0.25, 0 < delta <= 0.5 and
    /// max |S1| <= ln(1/eps) - delta over the closed fiber disc.
    void validate() const;
};

}  // namespace ffgraph
