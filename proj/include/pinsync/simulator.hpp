#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pinsync/network.hpp"
#include "pinsync/spectral.hpp"

namespace pinsync {

struct NodeTrigger {
    double alpha = 0.0;  // threshold scale, > 0
    double beta = 0.0;   // threshold decay rate, > 0
    double d = 0.0;      // impulse gain, in (0,1)
};

/// Per-node trigger parameters, keyed by node index.
class TriggerParams {
public:
    TriggerParams() = default;
    explicit TriggerParams(std::map<int, NodeTrigger> by_node);

    const std::map<int, NodeTrigger>& by_node() const { return by_node_; }
    const NodeTrigger& at(int node) const;
    bool has(int node) const { return by_node_.count(node) != 0; }

private:
    std::map<int, NodeTrigger> by_node_;
};

struct SimConfig {
    NetworkSpec spec;
    PinSet pins;
    TriggerParams triggers;  // one entry per pinned node
    double t0 = 0.0;
    double t_end = 0.0;
    double step = 1e-3;
    double event_tol = 1e-9;  // event-time localization tolerance, < step
    std::vector<Vec> initial_states;
    Vec initial_isolated;
    long max_events_per_node = 1000000;
};

/// Structural checks (dimensions, trigger coverage, step/horizon/tolerance
/// ranges). The startup condition V_i(t0) < alpha_i is checked by simulate,
/// which reports it as SimError::StartupViolation.
void validate_sim_config(const SimConfig& config);

struct TraceRow {
    double t = 0.0;
    int jump = 0;  // 0 flow sample, 1 pre-impulse, 2 post-impulse
    double c = 0.0;
    Vec states;    // N*n, row-major by node
    Vec isolated;  // z
    Vec v_per_node;
    double v_total = 0.0;
    double w_unpinned = 0.0;
};

struct HybridTrace {
    int n_nodes = 0;
    int dim = 0;
    std::vector<TraceRow> rows;
};

struct EventRecord {
    int node = 0;
    long ordinal = 0;  // per-node event counter, starting at 1
    double t = 0.0;
    double v_before = 0.0;
    double v_after = 0.0;
    double c_at_event = 0.0;
};

using EventLog = std::vector<EventRecord>;

struct SimResult {
    HybridTrace trace;
    EventLog events;
};

/// Coupled right-hand side f(t, x_i) + c sum_j a_ij Gamma (x_j - x_i).
/// The difference form is used so the consensus manifold is exactly
/// invariant in floating point; it equals the plain sum because row sums
/// vanish.
std::vector<Vec> coupled_vector_field(const NetworkSpec& spec, double t,
                                      const std::vector<Vec>& states, double c_now);

/// Event predicate V_i >= alpha exp(-beta (t - t0)), inclusive.
bool trigger_fired(double v_i, double alpha, double beta, double t, double t0);

/// e -> (1 - d) e. Throws GainOutOfRange unless d is in (0,1).
Vec apply_impulse(const Vec& e, double d);

/// zeta * sum over unpinned j of (x_j - z)^T Gamma (x_j - z); zero when
/// every node is pinned.
double adaptive_coupling_rate(const NetworkSpec& spec, const PinSet& pins,
                              const std::vector<Vec>& states, const Vec& z, double zeta);

struct LyapunovComponents {
    Vec per_node;     // V_i = ||x_i - z||^2
    double total;     // V
    double unpinned;  // W
};

LyapunovComponents lyapunov_components(const std::vector<Vec>& states, const Vec& z,
                                       const PinSet& pins);

/// Classical fixed-step 4th-order one-step integrator with reusable
/// workspace. System signature: void(double t, const Vec& y, Vec& dy).
class Rk4Stepper {
public:
    explicit Rk4Stepper(std::size_t dim)
        : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    template <class System>
    void step(System&& system, double t, double h, const Vec& y, Vec& out) {
        const std::size_t n = y.size();
        system(t, y, k1_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
        system(t + 0.5 * h, tmp_, k2_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
        system(t + 0.5 * h, tmp_, k3_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
        system(t + h, tmp_, k4_);
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = y[i] + h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }

private:
    Vec k1_, k2_, k3_, k4_, tmp_;
};

/// Integrates the closed loop from t0 to t_end: fixed-step flow between
/// samples, per-node trigger checks at step boundaries, bisection of the
/// earliest crossing to event_tol, impulse application and logging. Under
/// SaturatedAdaptive the coupling strength is clamped at cap from the first
/// instant it reaches it. Throws SimError for startup violations, non-finite
/// states and event storms.
SimResult simulate(const SimConfig& config);

}  // namespace pinsync
