#pragma once

#include <functional>
#include <span>

#include "pinsync/errors.hpp"
#include "pinsync/matrix.hpp"

namespace pinsync {

using VectorField =
    std::function<void(double t, std::span<const double> z, std::span<double> dz)>;

/// Node vector field together with the one-sided growth constant gamma,
/// i.e. (x-y)^T (f(t,x)-f(t,y)) <= gamma (x-y)^T Gamma (x-y).
struct NodeDynamics {
    int dim = 0;
    VectorField field;  // deterministic: same inputs give the same output
    double one_sided_gamma = 0.0;
};

/// One-sided constant for the Chen system with inner coupling diag(1,2,1).
inline constexpr double kChenOneSidedGamma = 30.9342;

/// Chen system right-hand side; independent of t.
Vec chen_vector_field(double t, const Vec& z);

NodeDynamics chen_dynamics();
NodeDynamics zero_dynamics(int dim);
/// f(z) = a z with a caller-supplied one-sided constant.
NodeDynamics linear_dynamics(const Mat& a, double gamma);

/// Positive-definite inner coupling matrix. Definiteness is checked on the
/// symmetrized matrix; the spectral norm is cached for the bound formulas.
class InnerCoupling {
public:
    int dim() const { return static_cast<int>(m_.rows()); }
    const Mat& matrix() const { return m_; }
    double spectral_norm() const { return spectral_norm_; }

    friend InnerCoupling make_inner_coupling(const Mat& gamma_matrix);

private:
    InnerCoupling(Mat m, double norm) : m_(std::move(m)), spectral_norm_(norm) {}
    Mat m_;
    double spectral_norm_ = 0.0;
};

/// Throws NotPositiveDefinite when the smallest eigenvalue of the
/// symmetrized matrix is not positive (tolerance 1e-12 * max(1, max|entry|)).
InnerCoupling make_inner_coupling(const Mat& gamma_matrix);

}  // namespace pinsync
