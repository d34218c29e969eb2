#pragma once

#include <cstdint>
#include <variant>

#include "pinsync/dynamics.hpp"
#include "pinsync/topology.hpp"

namespace pinsync {

struct FixedCoupling {
    double c = 0.0;
};
struct AdaptiveCoupling {
    double c0 = 0.0;
    double zeta = 0.0;
};
struct SaturatedAdaptiveCoupling {
    double c0 = 0.0;
    double zeta = 0.0;
    double cap = 0.0;
};

using CouplingPolicy = std::variant<FixedCoupling, AdaptiveCoupling, SaturatedAdaptiveCoupling>;

/// Throws Error when the policy parameters are out of range
/// (c > 0; zeta > 0, c0 >= 0; cap > c0).
void validate_policy(const CouplingPolicy& policy);

/// Coupling strength at t0: c for Fixed, c0 otherwise.
double initial_coupling(const CouplingPolicy& policy);

/// The coupled network: topology, inner coupling, node dynamics and the
/// coupling strength policy. Immutable value type.
struct NetworkSpec {
    Topology topology;
    InnerCoupling inner;
    NodeDynamics dynamics;
    CouplingPolicy coupling;
};

/// Dimension and policy consistency checks.
void validate_spec(const NetworkSpec& spec);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
using Box = std::vector<Interval>;

struct AssumptionReport {
    long n_samples = 0;
    std::uint64_t seed = 0;
    long violation_count = 0;
    double empirical_gamma_hat = 0.0;  // max of the one-sided quotient over samples
    double declared_gamma = 0.0;
    Box box;
};

/// Monte Carlo check of the one-sided bound with K = gamma I over a box:
/// draws n_samples pairs (x, y), counts pairs where
/// (x-y)^T (f(0,x)-f(0,y)) > gamma (x-y)^T Gamma (x-y) + 1e-9 (1 + |rhs|),
/// and reports the empirical quotient maximum. Deterministic given seed.
/// Throws DegenerateBox when every coordinate interval has zero width.
AssumptionReport verify_one_sided_bound(const NodeDynamics& dynamics,
                                        const InnerCoupling& inner, const Box& box,
                                        long n_samples, std::uint64_t seed);

}  // namespace pinsync
