#include "pinsync/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pinsync {

double theta_bound(const Topology& topology, const PinSet& pins, double c, double gamma,
                   double epsilon) {
    if (!(epsilon > 0.0)) throw Error("theta_bound: epsilon must be positive");
    const int n = topology.n_nodes();
    const int l = pins.l();
    if (l == 0)
        throw BoundsError(BoundsError::Kind::NoPinnedNodes, "theta_bound: no pinned nodes");
    const auto unpinned = pins.unpinned(n);
    if (unpinned.empty())
        throw BoundsError(BoundsError::Kind::NoUnpinnedNodes, "theta_bound: no unpinned nodes");

    double max_sq = 0.0;
    for (int i : unpinned)
        for (int j : pins.indices())
            max_sq = std::max(max_sq, topology.entry(i, j) * topology.entry(i, j));

    const double nl = static_cast<double>(n - l);
    const double ll = static_cast<double>(l);
    return 1.0 / (2.0 * epsilon) * nl * c * c * gamma * gamma * ll * ll * max_sq;
}

BoundParams make_bound_params(const Topology& topology, const PinSet& pins,
                              const TriggerParams& triggers, double c, double gamma,
                              double w_t0, std::optional<double> epsilon,
                              std::optional<double> mu) {
    if (w_t0 < 0.0) throw Error("make_bound_params: W(t0) must be nonnegative");
    if (pins.l() == 0)
        throw BoundsError(BoundsError::Kind::NoPinnedNodes, "make_bound_params: no pinned nodes");

    BoundParams params;
    params.epsilon = epsilon.value_or(1.0);
    params.theta = theta_bound(topology, pins, c, gamma, params.epsilon);

    double alpha_max = 0.0;
    double beta_min = std::numeric_limits<double>::infinity();
    for (int node : pins.indices()) {
        const NodeTrigger& trig = triggers.at(node);
        alpha_max = std::max(alpha_max, trig.alpha);
        beta_min = std::min(beta_min, trig.beta);
    }
    params.alpha_hat = params.theta * alpha_max;
    params.beta_check = beta_min;
    params.mu = mu.value_or(0.5 * beta_min);
    if (!(params.mu > 0.0 && params.mu < params.beta_check))
        throw Error("make_bound_params: mu must lie strictly in (0, beta_check)");
    params.m_bound = w_t0 + params.alpha_hat / (params.beta_check - params.mu);
    return params;
}

double sigma_bound(const Topology& topology, const InnerCoupling& inner, const PinSet& pins,
                   const TriggerParams& triggers, int node, double c, double gamma,
                   double m_bound) {
    if (!pins.contains(node))
        throw IndexOutOfRange("sigma_bound: node " + std::to_string(node) + " is not pinned");
    if (m_bound < 0.0) throw Error("sigma_bound: M must be nonnegative");
    const double a_ii = topology.entry(node, node);
    if (a_ii == 0.0)
        throw BoundsError(BoundsError::Kind::IsolatedPinnedNode,
                          "sigma_bound: pinned node " + std::to_string(node) +
                              " has no connections (a_ii = 0)");

    const double alpha_i = triggers.at(node).alpha;
    double sqrt_alpha_sum = 0.0;
    for (int j : pins.indices()) sqrt_alpha_sum += std::sqrt(triggers.at(j).alpha);
    const double n_minus_l = static_cast<double>(topology.n_nodes() - pins.l());

    return 2.0 * inner.spectral_norm() *
           (gamma * alpha_i -
            c * a_ii * std::sqrt(alpha_i) * (sqrt_alpha_sum + n_minus_l * std::sqrt(m_bound)));
}

double inter_event_lower_bound(double v_k, double t_k, double t0, double alpha, double beta,
                               double d, double sigma) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw Error("inter_event_lower_bound: alpha, beta > 0");
    if (!(d > 0.0 && d < 1.0))
        throw GainOutOfRange("inter_event_lower_bound: d must be in (0,1)");
    if (!(sigma > 0.0)) throw Error("inter_event_lower_bound: sigma must be positive");
    if (t_k < t0) throw Error("inter_event_lower_bound: t_k must not precede t0");

    const double threshold = alpha * std::exp(-beta * (t_k - t0));
    if (std::abs(v_k - threshold) > 1e-9 * threshold)
        throw BoundsError(BoundsError::Kind::PreconditionViolation,
                          "inter_event_lower_bound: V_k is not on the threshold at t_k");

    const double start = (1.0 - d) * (1.0 - d) * v_k;
    // residual f(T) = lhs(T) - rhs(T); increasing, f(0) < 0
    auto f = [&](double T) {
        return start + sigma * T - alpha * std::exp(-beta * (t_k + T - t0));
    };

    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    double lo = 0.0;
    const double tol = 1e-12 * alpha;
    double mid = 0.5 * hi;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double r = f(mid);
        if (std::abs(r) <= tol) break;
        if (r > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return mid;
}

ZenoReport zeno_diagnostics(const EventLog& log, double t0, double t_end,
                            const std::vector<int>& nodes) {
    std::map<int, std::vector<double>> times;
    for (int node : nodes) times[node];
    for (const EventRecord& ev : log) {
        if (ev.t < t0 || ev.t > t_end)
            throw BoundsError(BoundsError::Kind::LogOutsideHorizon,
                              "zeno_diagnostics: event time outside the horizon");
        times[ev.node].push_back(ev.t);
    }

    ZenoReport report;
    for (const auto& [node, ts] : times) {
        NodeEventStats stats;
        stats.node = node;
        stats.count = static_cast<long>(ts.size());
        if (ts.size() >= 2) {
            double min_gap = std::numeric_limits<double>::infinity();
            double sum_gap = 0.0;
            for (std::size_t k = 1; k < ts.size(); ++k) {
                const double gap = ts[k] - ts[k - 1];
                if (gap <= 0.0)
                    throw BoundsError(BoundsError::Kind::UnsortedLog,
                                      "zeno_diagnostics: event times for node " +
                                          std::to_string(node) + " are not increasing");
                min_gap = std::min(min_gap, gap);
                sum_gap += gap;
            }
            stats.min_gap = min_gap;
            stats.mean_gap = sum_gap / static_cast<double>(ts.size() - 1);
            if (!report.global_min_gap || min_gap < *report.global_min_gap)
                report.global_min_gap = min_gap;
        }
        report.per_node.push_back(stats);
    }
    return report;
}

}  // namespace pinsync
