#pragma once

#include <Eigen/Dense>
#include <functional>

#include "ffgraph/core.hpp"

namespace ffgraph {

using RealMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central-difference Jacobian. The maps here involve conjugation, so
/// they are smooth but not holomorphic; only real steps are valid.
Eigen::MatrixXd jacobian(const RealMap& map, const Eigen::VectorXd& point, double step);

double min_singular_value(const Eigen::MatrixXd& m);

/// Rank r iff exactly r singular values exceed rank_tol * largest.
int matrix_rank(const Eigen::MatrixXd& m, double rank_tol);

/// omega_0 as a matrix in coordinates (p1, p2, q1, q2).
Eigen::Matrix4d omega_matrix();

/// Hamiltonian vector field of H_i (i = 0 for H1, 1 for H2) from the
/// duality omega(X, .) = -dH_i, with a finite-difference gradient.
Eigen::Vector4d hamiltonian_vector_field(const PointC2& pt, int component, double step);

}  // namespace ffgraph
