#pragma once

#include <optional>
#include <vector>

#include "pinsync/simulator.hpp"

namespace pinsync {

/// Constants from the synchronization analysis. epsilon and mu are free
/// parameters (defaults epsilon = 1, mu = beta_check / 2); the rest are
/// derived: theta, alpha_hat = theta * max alpha_j, beta_check = min beta_j,
/// m_bound = w_t0 + alpha_hat / (beta_check - mu).
struct BoundParams {
    double epsilon = 1.0;
    double mu = 0.0;
    double theta = 0.0;
    double alpha_hat = 0.0;
    double beta_check = 0.0;
    double m_bound = 0.0;
};

/// theta = (1/(2 epsilon)) (N-l) c^2 gamma^2 l^2 max a_ij^2 over unpinned
/// rows i and pinned columns j. Throws BoundsError for l = 0 or l = N.
double theta_bound(const Topology& topology, const PinSet& pins, double c, double gamma,
                   double epsilon);

BoundParams make_bound_params(const Topology& topology, const PinSet& pins,
                              const TriggerParams& triggers, double c, double gamma,
                              double w_t0, std::optional<double> epsilon = {},
                              std::optional<double> mu = {});

/// Growth-rate bound for pinned node i between events:
/// 2 ||Gamma|| (gamma alpha_i - c a_ii sqrt(alpha_i) (sum_j sqrt(alpha_j)
/// + (N-l) sqrt(M))). Throws IsolatedPinnedNode when a_ii = 0.
double sigma_bound(const Topology& topology, const InnerCoupling& inner, const PinSet& pins,
                   const TriggerParams& triggers, int node, double c, double gamma,
                   double m_bound);

/// Unique T > 0 with (1-d)^2 V_k + sigma T = alpha exp(-beta (t_k + T - t0)),
/// located by bisection on a doubling bracket to residual <= 1e-12 alpha.
/// Requires V_k on the threshold at t_k within 1e-9 relative tolerance.
double inter_event_lower_bound(double v_k, double t_k, double t0, double alpha, double beta,
                               double d, double sigma);

struct NodeEventStats {
    int node = 0;
    long count = 0;
    std::optional<double> min_gap;   // empty with fewer than two events
    std::optional<double> mean_gap;  // empty with fewer than two events
};

struct ZenoReport {
    std::vector<NodeEventStats> per_node;
    std::optional<double> global_min_gap;
};

/// Per-node event counts and inter-event gap statistics. `nodes` adds
/// entries for nodes without logged events (their counts report as 0).
/// Throws BoundsError for unsorted logs or times outside the horizon.
ZenoReport zeno_diagnostics(const EventLog& log, double t0, double t_end,
                            const std::vector<int>& nodes = {});

}  // namespace pinsync
