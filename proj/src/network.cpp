#include "pinsync/network.hpp"

#include <cmath>
#include <limits>

#include "pinsync/rng.hpp"

namespace pinsync {

void validate_policy(const CouplingPolicy& policy) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FixedCoupling>) {
                if (!(p.c > 0.0)) throw Error("fixed coupling requires c > 0");
            } else if constexpr (std::is_same_v<T, AdaptiveCoupling>) {
                if (!(p.zeta > 0.0)) throw Error("adaptive coupling requires zeta > 0");
                if (p.c0 < 0.0) throw Error("adaptive coupling requires c0 >= 0");
            } else {
                if (!(p.zeta > 0.0)) throw Error("saturated coupling requires zeta > 0");
                if (p.c0 < 0.0) throw Error("saturated coupling requires c0 >= 0");
                if (!(p.cap > p.c0)) throw Error("saturated coupling requires cap > c0");
            }
        },
        policy);
}

double initial_coupling(const CouplingPolicy& policy) {
    return std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FixedCoupling>)
                return p.c;
            else
                return p.c0;
        },
        policy);
}

void validate_spec(const NetworkSpec& spec) {
    validate_policy(spec.coupling);
    if (spec.inner.dim() != spec.dynamics.dim)
        throw DimensionMismatch("inner coupling dimension " + std::to_string(spec.inner.dim()) +
                                " does not match dynamics dimension " +
                                std::to_string(spec.dynamics.dim));
    if (!spec.dynamics.field) throw Error("network spec has no vector field");
    if (spec.dynamics.one_sided_gamma < 0.0)
        throw Error("one-sided gamma must be nonnegative");
}

AssumptionReport verify_one_sided_bound(const NodeDynamics& dynamics,
                                        const InnerCoupling& inner, const Box& box,
                                        long n_samples, std::uint64_t seed) {
    const int n = dynamics.dim;
    if (static_cast<int>(box.size()) != n)
        throw DimensionMismatch("box has " + std::to_string(box.size()) +
                                " intervals for dimension " + std::to_string(n));
    if (inner.dim() != n) throw DimensionMismatch("inner coupling dimension mismatch");
    if (n_samples < 1) throw Error("n_samples must be at least 1");

    bool any_width = false;
    for (const auto& iv : box) {
        if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi)) || iv.hi < iv.lo)
            throw Error("box intervals must be finite with lo <= hi");
        if (iv.hi > iv.lo) any_width = true;
    }
    if (!any_width)
        throw DegenerateBox("every box interval has zero width; all sampled pairs coincide");

    AssumptionReport report;
    report.n_samples = n_samples;
    report.seed = seed;
    report.declared_gamma = dynamics.one_sided_gamma;
    report.box = box;
    report.empirical_gamma_hat = -std::numeric_limits<double>::infinity();

    SplitMix64 rng(seed);
    Vec x(n), y(n), fx(n), fy(n), diff(n);
    const double gamma = dynamics.one_sided_gamma;
    const Mat& g = inner.matrix();

    for (long s = 0; s < n_samples; ++s) {
        for (int j = 0; j < n; ++j) x[j] = rng.uniform_open(box[j].lo, box[j].hi);
        for (int j = 0; j < n; ++j) y[j] = rng.uniform_open(box[j].lo, box[j].hi);
        dynamics.field(0.0, x, fx);
        dynamics.field(0.0, y, fy);

        double lhs = 0.0;
        for (int j = 0; j < n; ++j) {
            diff[j] = x[j] - y[j];
            lhs += diff[j] * (fx[j] - fy[j]);
        }
        double quad = 0.0;  // (x-y)^T Gamma (x-y)
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += g(i, j) * diff[j];
            quad += diff[i] * row;
        }
        const double rhs = gamma * quad;
        if (lhs > rhs + 1e-9 * (1.0 + std::abs(rhs))) ++report.violation_count;
        if (quad > 0.0)
            report.empirical_gamma_hat = std::max(report.empirical_gamma_hat, lhs / quad);
    }
    return report;
}

}  // namespace pinsync
