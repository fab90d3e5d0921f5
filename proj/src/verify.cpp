#include "ffgraph/verify.hpp"

namespace ffgraph {

Eigen::MatrixXd jacobian(const RealMap& map, const Eigen::VectorXd& point, double step) {
    const Eigen::VectorXd f0 = map(point);
    Eigen::MatrixXd jac(f0.size(), point.size());
    for (Eigen::Index k = 0; k < point.size(); ++k) {
        Eigen::VectorXd hi = point, lo = point;
        hi[k] += step;
        lo[k] -= step;
        const Eigen::VectorXd fhi = map(hi);
        const Eigen::VectorXd flo = map(lo);
        if (fhi.size() != f0.size() || flo.size() != f0.size())
            throw DimensionMismatch("jacobian: inconsistent map output size");
        // divide by the realized step to cancel representation error
        jac.col(k) = (fhi - flo) / (hi[k] - lo[k]);
    }
    return jac;
}

double min_singular_value(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

int matrix_rank(const Eigen::MatrixXd& m, double rank_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double cutoff = rank_tol * sv(0);
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cutoff) ++rank;
    return rank;
}

Eigen::Matrix4d omega_matrix() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    m(2, 0) = -1.0;
    m(3, 1) = -1.0;
    return m;
}

Eigen::Vector4d hamiltonian_vector_field(const PointC2& pt, int component, double step) {
    const Vec4 base = to_real(pt);
    Eigen::Vector4d grad;
    for (int k = 0; k < 4; ++k) {
        Vec4 hi = base, lo = base;
        hi[k] += step;
        lo[k] -= step;
        const Complex bh = hamiltonian(from_real(hi));
        const Complex bl = hamiltonian(from_real(lo));
        const double fh = component == 0 ? bh.real() : bh.imag();
        const double fl = component == 0 ? bl.real() : bl.imag();
        grad[k] = (fh - fl) / (2.0 * step);
    }
    // omega(X, .) = -dH  =>  X = -Omega^{-T} grad = -Omega grad
    return -omega_matrix() * grad;
}

}  // namespace ffgraph
