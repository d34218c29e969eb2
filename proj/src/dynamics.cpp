#include "pinsync/dynamics.hpp"

#include <cmath>

#include "pinsync/spectral.hpp"

namespace pinsync {

Vec chen_vector_field(double /*t*/, const Vec& z) {
    if (z.size() != 3)
        throw DimensionMismatch("chen_vector_field: state must have length 3, got " +
                                std::to_string(z.size()));
    return {35.0 * z[1] - 35.0 * z[0],
            -7.0 * z[0] - z[0] * z[2] + 28.0 * z[1],
            z[0] * z[1] - 3.0 * z[2]};
}

NodeDynamics chen_dynamics() {
    NodeDynamics d;
    d.dim = 3;
    d.one_sided_gamma = kChenOneSidedGamma;
    d.field = [](double, std::span<const double> z, std::span<double> dz) {
        dz[0] = 35.0 * z[1] - 35.0 * z[0];
        dz[1] = -7.0 * z[0] - z[0] * z[2] + 28.0 * z[1];
        dz[2] = z[0] * z[1] - 3.0 * z[2];
    };
    return d;
}

NodeDynamics zero_dynamics(int dim) {
    if (dim < 1) throw DimensionMismatch("zero_dynamics: dim must be positive");
    NodeDynamics d;
    d.dim = dim;
    d.one_sided_gamma = 0.0;
    d.field = [](double, std::span<const double>, std::span<double> dz) {
        for (double& v : dz) v = 0.0;
    };
    return d;
}

NodeDynamics linear_dynamics(const Mat& a, double gamma) {
    if (!a.square() || a.rows() == 0)
        throw DimensionMismatch("linear_dynamics: matrix must be square and nonempty");
    if (gamma < 0.0) throw Error("linear_dynamics: gamma must be nonnegative");
    NodeDynamics d;
    d.dim = static_cast<int>(a.rows());
    d.one_sided_gamma = gamma;
    d.field = [a](double, std::span<const double> z, std::span<double> dz) {
        const std::size_t n = a.rows();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * z[j];
            dz[i] = s;
        }
    };
    return d;
}

InnerCoupling make_inner_coupling(const Mat& gamma_matrix) {
    if (!gamma_matrix.square() || gamma_matrix.rows() == 0)
        throw DimensionMismatch("inner coupling matrix must be square and nonempty");
    if (!all_finite(gamma_matrix)) throw Error("inner coupling matrix has non-finite entries");

    Mat sym(gamma_matrix.rows(), gamma_matrix.cols());
    for (std::size_t i = 0; i < gamma_matrix.rows(); ++i)
        for (std::size_t j = 0; j < gamma_matrix.cols(); ++j)
            sym(i, j) = 0.5 * (gamma_matrix(i, j) + gamma_matrix(j, i));

    const Vec eig = symmetric_eigenvalues(sym);
    const double tol = 1e-12 * std::max(1.0, max_abs_entry(gamma_matrix));
    if (eig.front() <= tol)
        throw NotPositiveDefinite("inner coupling matrix is not positive definite "
                                  "(smallest eigenvalue " +
                                  std::to_string(eig.front()) + ")");
    return InnerCoupling(gamma_matrix, eig.back());
}

}  // namespace pinsync
