#include "pinsync/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace pinsync {

TriggerParams::TriggerParams(std::map<int, NodeTrigger> by_node) : by_node_(std::move(by_node)) {
    for (const auto& [node, trig] : by_node_) {
        if (node < 0) throw IndexOutOfRange("trigger node index is negative");
        if (!(trig.alpha > 0.0))
            throw Error("trigger alpha for node " + std::to_string(node) + " must be > 0");
        if (!(trig.beta > 0.0))
            throw Error("trigger beta for node " + std::to_string(node) + " must be > 0");
        if (!(trig.d > 0.0 && trig.d < 1.0))
            throw GainOutOfRange("impulse gain d for node " + std::to_string(node) +
                                 " must be in the open interval (0,1)");
    }
}

const NodeTrigger& TriggerParams::at(int node) const {
    auto it = by_node_.find(node);
    if (it == by_node_.end())
        throw IndexOutOfRange("no trigger parameters for node " + std::to_string(node));
    return it->second;
}

void validate_sim_config(const SimConfig& config) {
    validate_spec(config.spec);
    const int n_nodes = config.spec.topology.n_nodes();
    const int dim = config.spec.dynamics.dim;

    config.pins.unpinned(n_nodes);  // range-checks the pin indices
    for (int node : config.pins.indices())
        if (!config.triggers.has(node))
            throw Error("pinned node " + std::to_string(node) + " has no trigger parameters");
    for (const auto& [node, trig] : config.triggers.by_node())
        if (!config.pins.contains(node))
            throw Error("trigger parameters given for unpinned node " + std::to_string(node));

    if (!(config.t_end > config.t0)) throw Error("t_end must exceed t0");
    if (!(config.step > 0.0)) throw Error("step must be positive");
    if (config.step > config.t_end - config.t0)
        throw Error("step must not exceed the horizon length");
    if (!(config.event_tol > 0.0 && config.event_tol < config.step))
        throw Error("event_tol must lie in (0, step)");
    if (config.max_events_per_node < 1) throw Error("max_events_per_node must be >= 1");

    if (static_cast<int>(config.initial_states.size()) != n_nodes)
        throw DimensionMismatch("expected " + std::to_string(n_nodes) + " initial states, got " +
                                std::to_string(config.initial_states.size()));
    for (const auto& x : config.initial_states)
        if (static_cast<int>(x.size()) != dim)
            throw DimensionMismatch("initial state dimension mismatch");
    if (static_cast<int>(config.initial_isolated.size()) != dim)
        throw DimensionMismatch("isolated initial state dimension mismatch");
}

std::vector<Vec> coupled_vector_field(const NetworkSpec& spec, double t,
                                      const std::vector<Vec>& states, double c_now) {
    const int n_nodes = spec.topology.n_nodes();
    const int dim = spec.dynamics.dim;
    if (static_cast<int>(states.size()) != n_nodes)
        throw DimensionMismatch("coupled_vector_field: expected " + std::to_string(n_nodes) +
                                " states");
    for (const auto& x : states)
        if (static_cast<int>(x.size()) != dim)
            throw DimensionMismatch("coupled_vector_field: state dimension mismatch");

    const Mat& a = spec.topology.matrix();
    const Mat& g = spec.inner.matrix();
    std::vector<Vec> out(n_nodes, Vec(dim, 0.0));
    Vec acc(dim), gacc(dim);
    for (int i = 0; i < n_nodes; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int j = 0; j < n_nodes; ++j) {
            if (j == i) continue;
            const double w = a(i, j);
            if (w == 0.0) continue;
            for (int k = 0; k < dim; ++k) acc[k] += w * (states[j][k] - states[i][k]);
        }
        for (int r = 0; r < dim; ++r) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += g(r, k) * acc[k];
            gacc[r] = s;
        }
        spec.dynamics.field(t, states[i], out[i]);
        for (int k = 0; k < dim; ++k) out[i][k] += c_now * gacc[k];
    }
    return out;
}

bool trigger_fired(double v_i, double alpha, double beta, double t, double t0) {
    return v_i >= alpha * std::exp(-beta * (t - t0));
}

Vec apply_impulse(const Vec& e, double d) {
    if (!(d > 0.0 && d < 1.0))
        throw GainOutOfRange("impulse gain must be in the open interval (0,1)");
    Vec out(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) out[k] = (1.0 - d) * e[k];
    return out;
}

double adaptive_coupling_rate(const NetworkSpec& spec, const PinSet& pins,
                              const std::vector<Vec>& states, const Vec& z, double zeta) {
    if (!(zeta > 0.0)) throw Error("adaptive_coupling_rate: zeta must be positive");
    const int dim = spec.dynamics.dim;
    const Mat& g = spec.inner.matrix();
    double rate = 0.0;
    for (int j : pins.unpinned(spec.topology.n_nodes())) {
        for (int r = 0; r < dim; ++r) {
            double row = 0.0;
            for (int k = 0; k < dim; ++k) row += g(r, k) * (states[j][k] - z[k]);
            rate += (states[j][r] - z[r]) * row;
        }
    }
    return zeta * rate;
}

LyapunovComponents lyapunov_components(const std::vector<Vec>& states, const Vec& z,
                                       const PinSet& pins) {
    LyapunovComponents out;
    out.per_node.resize(states.size());
    out.total = 0.0;
    out.unpinned = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].size() != z.size())
            throw DimensionMismatch("lyapunov_components: state dimension mismatch");
        double v = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const double e = states[i][k] - z[k];
            v += e * e;
        }
        out.per_node[i] = v;
        out.total += v;
        if (!pins.contains(static_cast<int>(i))) out.unpinned += v;
    }
    return out;
}

namespace {

/// Flat augmented state layout: [x_0 .. x_{N-1} | z | c].
class ClosedLoop {
public:
    ClosedLoop(const SimConfig& config)
        : spec_(config.spec),
          pins_unpinned_(config.pins.unpinned(config.spec.topology.n_nodes())),
          n_nodes_(config.spec.topology.n_nodes()),
          dim_(config.spec.dynamics.dim),
          fx_(dim_),
          acc_(dim_) {
        if (auto* p = std::get_if<AdaptiveCoupling>(&spec_.coupling)) {
            adaptive_ = true;
            zeta_ = p->zeta;
        } else if (auto* s = std::get_if<SaturatedAdaptiveCoupling>(&spec_.coupling)) {
            adaptive_ = true;
            zeta_ = s->zeta;
            cap_ = s->cap;
        } else {
            fixed_c_ = std::get<FixedCoupling>(spec_.coupling).c;
        }
    }

    std::size_t flat_size() const { return static_cast<std::size_t>(n_nodes_) * dim_ + dim_ + 1; }
    int n_nodes() const { return n_nodes_; }
    int dim() const { return dim_; }
    bool adaptive() const { return adaptive_; }
    double cap() const { return cap_; }

    double effective_c(double c_state) const {
        if (!adaptive_) return fixed_c_;
        return cap_ > 0.0 ? std::min(c_state, cap_) : c_state;
    }

    void operator()(double t, const Vec& y, Vec& dy) const {
        const Mat& a = spec_.topology.matrix();
        const Mat& g = spec_.inner.matrix();
        const double* z = y.data() + static_cast<std::size_t>(n_nodes_) * dim_;
        const double c_eff = effective_c(y.back());
        dy.resize(y.size());

        for (int i = 0; i < n_nodes_; ++i) {
            const double* xi = y.data() + static_cast<std::size_t>(i) * dim_;
            double* dxi = dy.data() + static_cast<std::size_t>(i) * dim_;
            spec_.dynamics.field(t, std::span<const double>(xi, dim_),
                                 std::span<double>(fx_.data(), dim_));
            // difference form of the coupling; exact zero on consensus
            for (int k = 0; k < dim_; ++k) acc_[k] = 0.0;
            for (int j = 0; j < n_nodes_; ++j) {
                if (j == i) continue;
                const double w = a(i, j);
                if (w == 0.0) continue;
                const double* xj = y.data() + static_cast<std::size_t>(j) * dim_;
                for (int k = 0; k < dim_; ++k) acc_[k] += w * (xj[k] - xi[k]);
            }
            for (int r = 0; r < dim_; ++r) {
                double s = 0.0;
                for (int k = 0; k < dim_; ++k) s += g(r, k) * acc_[k];
                dxi[r] = fx_[r] + c_eff * s;
            }
        }

        double* dz = dy.data() + static_cast<std::size_t>(n_nodes_) * dim_;
        spec_.dynamics.field(t, std::span<const double>(z, dim_), std::span<double>(dz, dim_));

        double rate = 0.0;
        if (adaptive_ && !(cap_ > 0.0 && y.back() >= cap_)) {
            for (int j : pins_unpinned_) {
                const double* xj = y.data() + static_cast<std::size_t>(j) * dim_;
                for (int r = 0; r < dim_; ++r) {
                    double row = 0.0;
                    for (int k = 0; k < dim_; ++k) row += g(r, k) * (xj[k] - z[k]);
                    rate += (xj[r] - z[r]) * row;
                }
            }
            rate *= zeta_;
        }
        dy.back() = rate;
    }

    void clamp(Vec& y) const {
        if (adaptive_ && cap_ > 0.0 && y.back() > cap_) y.back() = cap_;
    }

private:
    const NetworkSpec& spec_;
    std::vector<int> pins_unpinned_;
    int n_nodes_;
    int dim_;
    bool adaptive_ = false;
    double zeta_ = 0.0;
    double cap_ = 0.0;  // 0 means no saturation
    double fixed_c_ = 0.0;
    mutable Vec fx_;
    mutable Vec acc_;
};

}  // namespace

SimResult simulate(const SimConfig& config) {
    validate_sim_config(config);
    const int n_nodes = config.spec.topology.n_nodes();
    const int dim = config.spec.dynamics.dim;
    const double t0 = config.t0;
    const auto& pinned = config.pins.indices();

    ClosedLoop loop(config);
    Rk4Stepper stepper(loop.flat_size());

    Vec y(loop.flat_size());
    for (int i = 0; i < n_nodes; ++i)
        for (int k = 0; k < dim; ++k) y[static_cast<std::size_t>(i) * dim + k] =
            config.initial_states[i][k];
    for (int k = 0; k < dim; ++k) y[static_cast<std::size_t>(n_nodes) * dim + k] =
        config.initial_isolated[k];
    y.back() = initial_coupling(config.spec.coupling);

    auto v_of = [&](const Vec& state, int node) {
        const double* x = state.data() + static_cast<std::size_t>(node) * dim;
        const double* z = state.data() + static_cast<std::size_t>(n_nodes) * dim;
        double v = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double e = x[k] - z[k];
            v += e * e;
        }
        return v;
    };

    for (int node : pinned)
        if (v_of(y, node) >= config.triggers.at(node).alpha)
            throw SimError(SimError::Kind::StartupViolation, t0, node);

    // Nodes whose trigger fires at (t, state); empty when none do.
    auto fired_nodes = [&](double t, const Vec& state) {
        std::vector<int> out;
        for (int node : pinned) {
            const NodeTrigger& trig = config.triggers.at(node);
            if (trigger_fired(v_of(state, node), trig.alpha, trig.beta, t, t0))
                out.push_back(node);
        }
        return out;
    };

    auto ensure_finite = [&](const Vec& state, double t) {
        for (double v : state)
            if (!std::isfinite(v)) throw SimError(SimError::Kind::NonFiniteState, t, -1);
    };

    SimResult result;
    result.trace.n_nodes = n_nodes;
    result.trace.dim = dim;

    auto push_row = [&](double t, int jump, const Vec& state) {
        TraceRow row;
        row.t = t;
        row.jump = jump;
        row.c = loop.effective_c(state.back());
        row.states.assign(state.begin(), state.begin() + static_cast<std::size_t>(n_nodes) * dim);
        row.isolated.assign(state.begin() + static_cast<std::size_t>(n_nodes) * dim,
                            state.begin() + static_cast<std::size_t>(n_nodes) * dim + dim);
        row.v_per_node.resize(n_nodes);
        row.v_total = 0.0;
        row.w_unpinned = 0.0;
        for (int i = 0; i < n_nodes; ++i) {
            const double v = v_of(state, i);
            row.v_per_node[i] = v;
            row.v_total += v;
            if (!config.pins.contains(i)) row.w_unpinned += v;
        }
        result.trace.rows.push_back(std::move(row));
    };

    std::map<int, long> event_count;
    for (int node : pinned) event_count[node] = 0;

    push_row(t0, 0, y);

    double t = t0;
    long m = 1;
    Vec y_next(loop.flat_size()), y_mid(loop.flat_size()), y_hit(loop.flat_size());

    while (t < config.t_end) {
        double target = t0 + static_cast<double>(m) * config.step;
        if (target > config.t_end) target = config.t_end;
        if (target <= t) {
            ++m;
            continue;
        }
        const double dt = target - t;

        stepper.step(loop, t, dt, y, y_next);
        loop.clamp(y_next);
        ensure_finite(y_next, target);

        if (fired_nodes(target, y_next).empty()) {
            y.swap(y_next);
            t = target;
            push_row(t, 0, y);
            if (t >= config.t_end) break;
            ++m;
            continue;
        }

        // Earliest crossing inside (t, target]: bisect the substep length,
        // keeping "no trigger at lo" / "trigger at hi" as the invariant.
        double lo = 0.0, hi = dt;
        y_hit = y_next;
        for (int iter = 0; iter < 60 && hi - lo > config.event_tol; ++iter) {
            const double mid = 0.5 * (lo + hi);
            stepper.step(loop, t, mid, y, y_mid);
            loop.clamp(y_mid);
            ensure_finite(y_mid, t + mid);
            if (!fired_nodes(t + mid, y_mid).empty()) {
                hi = mid;
                y_hit.swap(y_mid);
            } else {
                lo = mid;
            }
        }

        const double tau = t + hi;
        y.swap(y_hit);
        t = tau;
        push_row(tau, 1, y);

        const double c_at_event = loop.effective_c(y.back());
        double* z = y.data() + static_cast<std::size_t>(n_nodes) * dim;
        for (int node : fired_nodes(tau, y)) {
            const NodeTrigger& trig = config.triggers.at(node);
            const double v_before = v_of(y, node);
            double* x = y.data() + static_cast<std::size_t>(node) * dim;
            for (int k = 0; k < dim; ++k) x[k] = z[k] + (1.0 - trig.d) * (x[k] - z[k]);
            const double v_after = v_of(y, node);

            const double threshold = trig.alpha * std::exp(-trig.beta * (tau - t0));
            if (v_after >= threshold)
                throw Error("impulse left node " + std::to_string(node) +
                            " on or above its threshold; gain too small for the overshoot");

            long ordinal = ++event_count[node];
            if (ordinal > config.max_events_per_node)
                throw SimError(SimError::Kind::EventStorm, tau, node);
            result.events.push_back({node, ordinal, tau, v_before, v_after, c_at_event});
        }
        push_row(tau, 2, y);

        if (t >= config.t_end) break;
        if (target <= t) ++m;  // the event consumed the whole substep
    }

    return result;
}

}  // namespace pinsync
