#include "pinsync/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pinsync/rng.hpp"

namespace pinsync {

namespace {

using nlohmann::json;

/// Collects issues across the whole document; only syntax errors abort
/// parsing early.
class Collector {
public:
    void add(ConfigIssueKind kind, std::string path, std::string message) {
        issues_.push_back({kind, std::move(path), std::move(message)});
    }
    bool ok() const { return issues_.empty(); }
    void throw_if_any() {
        if (!issues_.empty()) throw ConfigError(std::move(issues_));
    }

private:
    std::vector<ConfigIssue> issues_;
};

/// Tracks which keys of an object were consumed so leftovers can be
/// reported as UnknownField.
class Fields {
public:
    Fields(const json& obj, std::string path, Collector& issues)
        : obj_(obj), path_(std::move(path)), issues_(issues) {}

    const json* get(const std::string& name) {
        seen_.insert(name);
        auto it = obj_.find(name);
        return it == obj_.end() ? nullptr : &*it;
    }

    const json* require(const std::string& name) {
        const json* v = get(name);
        if (!v) issues_.add(ConfigIssueKind::MissingField, join(name), "required field missing");
        return v;
    }

    void finish() {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                issues_.add(ConfigIssueKind::UnknownField, join(it.key()), "unrecognized field");
    }

    std::string join(const std::string& name) const {
        return path_.empty() ? name : path_ + "." + name;
    }

private:
    const json& obj_;
    std::string path_;
    Collector& issues_;
    std::set<std::string> seen_;
};

bool read_number(const json* v, const std::string& path, Collector& issues, double& out) {
    if (!v) return false;
    if (!v->is_number()) {
        issues.add(ConfigIssueKind::InvariantViolation, path, "expected a number");
        return false;
    }
    out = v->get<double>();
    return true;
}

bool read_u64(const json* v, const std::string& path, Collector& issues, std::uint64_t& out) {
    if (!v) return false;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
        issues.add(ConfigIssueKind::InvariantViolation, path, "expected a nonnegative integer");
        return false;
    }
    out = v->get<std::uint64_t>();
    return true;
}

bool read_matrix(const json* v, const std::string& path, Collector& issues, Mat& out) {
    if (!v) return false;
    if (!v->is_array() || v->empty()) {
        issues.add(ConfigIssueKind::InvariantViolation, path, "expected a nonempty array of rows");
        return false;
    }
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const json& row = (*v)[i];
        if (!row.is_array()) {
            issues.add(ConfigIssueKind::InvariantViolation,
                       path + "[" + std::to_string(i) + "]", "expected an array of numbers");
            return false;
        }
        Vec r;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_number()) {
                issues.add(ConfigIssueKind::InvariantViolation,
                           path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                           "expected a number");
                return false;
            }
            r.push_back(row[j].get<double>());
        }
        rows.push_back(std::move(r));
    }
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) {
            issues.add(ConfigIssueKind::InvariantViolation, path, "rows have unequal lengths");
            return false;
        }
    out = Mat::from_rows(rows);
    return true;
}

bool read_vector(const json* v, const std::string& path, Collector& issues, Vec& out) {
    if (!v) return false;
    if (!v->is_array()) {
        issues.add(ConfigIssueKind::InvariantViolation, path, "expected an array of numbers");
        return false;
    }
    Vec r;
    for (std::size_t j = 0; j < v->size(); ++j) {
        if (!(*v)[j].is_number()) {
            issues.add(ConfigIssueKind::InvariantViolation, path + "[" + std::to_string(j) + "]",
                       "expected a number");
            return false;
        }
        r.push_back((*v)[j].get<double>());
    }
    out = std::move(r);
    return true;
}

void parse_dynamics(Fields& top, Collector& issues, RunConfig& config) {
    const json* dyn = top.require("dynamics");
    const json* dim = top.get("dim");
    const json* gamma = top.get("gamma");

    bool dim_given = false;
    double dim_value = 0.0;
    if (dim) {
        if (read_number(dim, "dim", issues, dim_value)) {
            if (dim_value < 1 || dim_value != static_cast<int>(dim_value))
                issues.add(ConfigIssueKind::InvariantViolation, "dim",
                           "expected a positive integer");
            else
                dim_given = true;
        }
    }

    if (dyn) {
        if (dyn->is_string() && dyn->get<std::string>() == "chen") {
            config.dynamics_kind = DynamicsKind::Chen;
            config.dim = 3;
            if (dim_given && static_cast<int>(dim_value) != 3)
                issues.add(ConfigIssueKind::InvariantViolation, "dim",
                           "chen dynamics are 3-dimensional");
        } else if (dyn->is_string() && dyn->get<std::string>() == "zero") {
            config.dynamics_kind = DynamicsKind::Zero;
            if (dim_given)
                config.dim = static_cast<int>(dim_value);
            else
                issues.add(ConfigIssueKind::MissingField, "dim",
                           "zero dynamics need an explicit dimension");
        } else if (dyn->is_object() && dyn->contains("linear") && dyn->size() == 1) {
            config.dynamics_kind = DynamicsKind::Linear;
            Mat m;
            if (read_matrix(&(*dyn)["linear"], "dynamics.linear", issues, m)) {
                if (!m.square())
                    issues.add(ConfigIssueKind::InvariantViolation, "dynamics.linear",
                               "matrix must be square");
                else {
                    config.linear_matrix = m;
                    config.dim = static_cast<int>(m.rows());
                    if (dim_given && static_cast<int>(dim_value) != config.dim)
                        issues.add(ConfigIssueKind::InvariantViolation, "dim",
                                   "does not match the linear matrix size");
                }
            }
        } else {
            issues.add(ConfigIssueKind::InvariantViolation, "dynamics",
                       "expected \"chen\", \"zero\" or {\"linear\": [[...]]}");
        }
    }

    if (gamma) {
        double g = 0.0;
        if (read_number(gamma, "gamma", issues, g)) {
            if (g < 0.0)
                issues.add(ConfigIssueKind::InvariantViolation, "gamma",
                           "must be nonnegative");
            else
                config.gamma = g;
        }
    } else if (config.dynamics_kind == DynamicsKind::Chen) {
        config.gamma = kChenOneSidedGamma;
    } else {
        issues.add(ConfigIssueKind::MissingField, "gamma",
                   "required unless dynamics is chen");
    }
}

void parse_topology(Fields& top, Collector& issues, const std::filesystem::path& base_dir,
                    RunConfig& config) {
    const json* topo = top.require("topology");
    if (!topo) return;
    if (!topo->is_object()) {
        issues.add(ConfigIssueKind::InvariantViolation, "topology",
                   "expected {\"inline\": [[...]]} or {\"file\": \"path\"}");
        return;
    }
    Fields fields(*topo, "topology", issues);
    const json* inline_m = fields.get("inline");
    const json* file = fields.get("file");
    fields.finish();
    if ((inline_m != nullptr) == (file != nullptr)) {
        issues.add(ConfigIssueKind::InvariantViolation, "topology",
                   "exactly one of inline / file");
        return;
    }
    Mat raw;
    if (inline_m) {
        if (!read_matrix(inline_m, "topology.inline", issues, raw)) return;
    } else {
        if (!file->is_string()) {
            issues.add(ConfigIssueKind::InvariantViolation, "topology.file",
                       "expected a path string");
            return;
        }
        std::filesystem::path p = file->get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        try {
            raw = load_topology_file(p.string());
        } catch (const Error& e) {
            issues.add(ConfigIssueKind::InvariantViolation, "topology.file", e.what());
            return;
        }
    }
    for (const TopologyIssue& issue : topology_issues(raw))
        issues.add(ConfigIssueKind::InvariantViolation, "topology", to_string(issue));
    config.topology_raw = raw;
}

void parse_coupling(Fields& top, Collector& issues, RunConfig& config) {
    const json* coup = top.require("coupling");
    if (!coup) return;
    if (!coup->is_object()) {
        issues.add(ConfigIssueKind::InvariantViolation, "coupling", "expected an object");
        return;
    }
    Fields fields(*coup, "coupling", issues);
    const json* type = fields.require("type");
    if (!type || !type->is_string()) {
        if (type)
            issues.add(ConfigIssueKind::InvariantViolation, "coupling.type",
                       "expected \"fixed\", \"adaptive\" or \"saturated_adaptive\"");
        fields.finish();
        return;
    }
    const std::string kind = type->get<std::string>();
    if (kind == "fixed") {
        double c = 0.0;
        if (read_number(fields.require("c"), "coupling.c", issues, c)) {
            if (!(c > 0.0))
                issues.add(ConfigIssueKind::InvariantViolation, "coupling.c",
                           "must be positive");
            else
                config.coupling = FixedCoupling{c};
        }
    } else if (kind == "adaptive" || kind == "saturated_adaptive") {
        double c0 = 0.0, zeta = 0.0;
        bool ok = true;
        if (read_number(fields.require("c0"), "coupling.c0", issues, c0)) {
            if (c0 < 0.0) {
                issues.add(ConfigIssueKind::InvariantViolation, "coupling.c0",
                           "must be nonnegative");
                ok = false;
            }
        } else {
            ok = false;
        }
        if (read_number(fields.require("zeta"), "coupling.zeta", issues, zeta)) {
            if (!(zeta > 0.0)) {
                issues.add(ConfigIssueKind::InvariantViolation, "coupling.zeta",
                           "must be positive");
                ok = false;
            }
        } else {
            ok = false;
        }
        if (kind == "adaptive") {
            if (ok) config.coupling = AdaptiveCoupling{c0, zeta};
        } else {
            double cap = 0.0;
            if (read_number(fields.require("cap"), "coupling.cap", issues, cap)) {
                if (!(cap > c0)) {
                    issues.add(ConfigIssueKind::InvariantViolation, "coupling.cap",
                               "must exceed c0");
                    ok = false;
                }
            } else {
                ok = false;
            }
            if (ok) config.coupling = SaturatedAdaptiveCoupling{c0, zeta, cap};
        }
    } else {
        issues.add(ConfigIssueKind::InvariantViolation, "coupling.type",
                   "expected \"fixed\", \"adaptive\" or \"saturated_adaptive\"");
    }
    fields.finish();
}

void parse_triggers(Fields& top, Collector& issues, RunConfig& config) {
    const json* trig = top.require("triggers");
    if (!trig) return;
    if (!trig->is_object()) {
        issues.add(ConfigIssueKind::InvariantViolation, "triggers",
                   "expected an object keyed by node index");
        return;
    }
    for (auto it = trig->begin(); it != trig->end(); ++it) {
        int node = -1;
        try {
            std::size_t used = 0;
            node = std::stoi(it.key(), &used);
            if (used != it.key().size() || node < 0) node = -1;
        } catch (...) {
            node = -1;
        }
        const std::string path = "triggers." + it.key();
        if (node < 0) {
            issues.add(ConfigIssueKind::InvariantViolation, path,
                       "keys must be nonnegative node indices");
            continue;
        }
        if (!it.value().is_object()) {
            issues.add(ConfigIssueKind::InvariantViolation, path, "expected an object");
            continue;
        }
        Fields fields(it.value(), path, issues);
        double beta = 0.0;
        if (read_number(fields.require("beta"), path + ".beta", issues, beta)) {
            if (!(beta > 0.0))
                issues.add(ConfigIssueKind::InvariantViolation, path + ".beta",
                           "must be positive");
            else
                config.trigger_beta[node] = beta;
        }
        const json* alpha = fields.get("alpha");
        const json* d = fields.get("d");
        fields.finish();
        if (config.seeded) {
            if (alpha)
                issues.add(ConfigIssueKind::InvariantViolation, path + ".alpha",
                           "alpha is generated in seeded mode");
            if (d)
                issues.add(ConfigIssueKind::InvariantViolation, path + ".d",
                           "d is generated in seeded mode");
            continue;
        }
        double a = 0.0;
        if (!alpha)
            issues.add(ConfigIssueKind::MissingField, path + ".alpha",
                       "required with literal initial states");
        else if (read_number(alpha, path + ".alpha", issues, a)) {
            if (!(a > 0.0))
                issues.add(ConfigIssueKind::InvariantViolation, path + ".alpha",
                           "must be positive");
            else
                config.trigger_alpha[node] = a;
        }
        double dv = 0.0;
        if (!d)
            issues.add(ConfigIssueKind::MissingField, path + ".d",
                       "required with literal initial states");
        else if (read_number(d, path + ".d", issues, dv)) {
            if (!(dv > 0.0 && dv < 1.0))
                issues.add(ConfigIssueKind::InvariantViolation, path + ".d",
                           "must be in open interval (0,1)");
            else
                config.trigger_d[node] = dv;
        }
    }
}

void parse_initial(Fields& top, Collector& issues, RunConfig& config) {
    const json* init = top.require("initial");
    if (!init) return;
    if (!init->is_object()) {
        issues.add(ConfigIssueKind::InvariantViolation, "initial", "expected an object");
        return;
    }
    Fields fields(*init, "initial", issues);
    const json* seed = fields.get("seed");
    const json* states = fields.get("states");
    const json* z = fields.require("z");
    fields.finish();
    if ((seed != nullptr) == (states != nullptr)) {
        issues.add(ConfigIssueKind::InvariantViolation, "initial",
                   "exactly one of seed / states");
        return;
    }
    if (seed) {
        config.seeded = true;
        read_u64(seed, "initial.seed", issues, config.seed);
    } else {
        config.seeded = false;
        if (states->is_array()) {
            for (std::size_t i = 0; i < states->size(); ++i) {
                Vec row;
                if (read_vector(&(*states)[i], "initial.states[" + std::to_string(i) + "]",
                                issues, row))
                    config.literal_states.push_back(std::move(row));
            }
        } else {
            issues.add(ConfigIssueKind::InvariantViolation, "initial.states",
                       "expected an array of state vectors");
        }
    }
    if (read_vector(z, "initial.z", issues, config.z0) &&
        static_cast<int>(config.z0.size()) != config.dim)
        issues.add(ConfigIssueKind::InvariantViolation, "initial.z",
                   "expected length " + std::to_string(config.dim));
}

void parse_assumption_check(Fields& top, Collector& issues, RunConfig& config) {
    const json* block = top.get("assumption_check");
    if (!block) return;
    if (!block->is_object()) {
        issues.add(ConfigIssueKind::InvariantViolation, "assumption_check",
                   "expected an object");
        return;
    }
    Fields fields(*block, "assumption_check", issues);
    const json* box = fields.require("box");
    const json* samples = fields.get("samples");
    const json* seed = fields.get("seed");
    fields.finish();
    if (box) {
        if (!box->is_array()) {
            issues.add(ConfigIssueKind::InvariantViolation, "assumption_check.box",
                       "expected an array of [lo, hi] pairs");
        } else {
            Box b;
            bool ok = true;
            for (std::size_t k = 0; k < box->size(); ++k) {
                const json& pair = (*box)[k];
                const std::string path = "assumption_check.box[" + std::to_string(k) + "]";
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                    !pair[1].is_number()) {
                    issues.add(ConfigIssueKind::InvariantViolation, path,
                               "expected [lo, hi] numbers");
                    ok = false;
                    continue;
                }
                Interval iv{pair[0].get<double>(), pair[1].get<double>()};
                if (iv.hi < iv.lo) {
                    issues.add(ConfigIssueKind::InvariantViolation, path, "needs lo <= hi");
                    ok = false;
                }
                b.push_back(iv);
            }
            if (ok) config.check_box = std::move(b);
        }
    }
    if (samples) {
        double s = 0.0;
        if (read_number(samples, "assumption_check.samples", issues, s)) {
            if (s < 1 || s != static_cast<long>(s))
                issues.add(ConfigIssueKind::InvariantViolation, "assumption_check.samples",
                           "expected a positive integer");
            else
                config.check_samples = static_cast<long>(s);
        }
    }
    if (seed) read_u64(seed, "assumption_check.seed", issues, config.check_seed);
}

void parse_bounds_block(Fields& top, Collector& issues, RunConfig& config) {
    const json* block = top.get("bounds");
    if (!block) return;
    if (!block->is_object()) {
        issues.add(ConfigIssueKind::InvariantViolation, "bounds", "expected an object");
        return;
    }
    Fields fields(*block, "bounds", issues);
    const json* eps = fields.get("epsilon");
    const json* mu = fields.get("mu");
    fields.finish();
    double v = 0.0;
    if (eps && read_number(eps, "bounds.epsilon", issues, v)) {
        if (!(v > 0.0))
            issues.add(ConfigIssueKind::InvariantViolation, "bounds.epsilon",
                       "must be positive");
        else
            config.bounds_epsilon = v;
    }
    if (mu && read_number(mu, "bounds.mu", issues, v)) {
        if (!(v > 0.0))
            issues.add(ConfigIssueKind::InvariantViolation, "bounds.mu", "must be positive");
        else
            config.bounds_mu = v;
    }
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({{ConfigIssueKind::SyntaxError, "byte " + std::to_string(e.byte),
                            e.what()}});
    }
    Collector issues;
    if (!doc.is_object()) {
        issues.add(ConfigIssueKind::SyntaxError, "", "top level must be an object");
        issues.throw_if_any();
    }

    RunConfig config;
    Fields top(doc, "", issues);

    // dynamics fixes the dimension; the initial block fixes the mode the
    // trigger validation depends on
    parse_dynamics(top, issues, config);
    parse_initial(top, issues, config);
    parse_topology(top, issues, base_dir, config);
    parse_coupling(top, issues, config);
    parse_triggers(top, issues, config);

    Mat inner;
    if (read_matrix(top.require("inner_coupling"), "inner_coupling", issues, inner)) {
        if (!inner.square() || static_cast<int>(inner.rows()) != config.dim) {
            issues.add(ConfigIssueKind::InvariantViolation, "inner_coupling",
                       "expected a " + std::to_string(config.dim) + "x" +
                           std::to_string(config.dim) + " matrix");
        } else {
            try {
                make_inner_coupling(inner);
                config.inner = inner;
            } catch (const Error& e) {
                issues.add(ConfigIssueKind::InvariantViolation, "inner_coupling", e.what());
            }
        }
    }

    const json* pins = top.require("pins");
    if (pins) {
        if (!pins->is_array()) {
            issues.add(ConfigIssueKind::InvariantViolation, "pins",
                       "expected an array of node indices");
        } else {
            std::set<int> seen;
            for (std::size_t k = 0; k < pins->size(); ++k) {
                const std::string path = "pins[" + std::to_string(k) + "]";
                if (!(*pins)[k].is_number_integer()) {
                    issues.add(ConfigIssueKind::InvariantViolation, path,
                               "expected an integer");
                    continue;
                }
                const int node = (*pins)[k].get<int>();
                if (node < 0)
                    issues.add(ConfigIssueKind::InvariantViolation, path,
                               "must be nonnegative");
                else if (!seen.insert(node).second)
                    issues.add(ConfigIssueKind::InvariantViolation, path,
                               "repeated pin index");
                else
                    config.pins.push_back(node);
            }
        }
    }

    const bool have_t0 = read_number(top.require("t0"), "t0", issues, config.t0);
    const bool have_t_end = read_number(top.require("t_end"), "t_end", issues, config.t_end);
    const bool have_step = read_number(top.require("step"), "step", issues, config.step);
    if (const json* v = top.get("event_tol")) read_number(v, "event_tol", issues, config.event_tol);
    if (const json* v = top.get("max_events_per_node")) {
        double mev = 0.0;
        if (read_number(v, "max_events_per_node", issues, mev)) {
            if (mev < 1 || mev != static_cast<long>(mev))
                issues.add(ConfigIssueKind::InvariantViolation, "max_events_per_node",
                           "expected a positive integer");
            else
                config.max_events_per_node = static_cast<long>(mev);
        }
    }
    if (const json* v = top.get("out_dir")) {
        if (v->is_string())
            config.out_dir = v->get<std::string>();
        else
            issues.add(ConfigIssueKind::InvariantViolation, "out_dir", "expected a string");
    }
    parse_assumption_check(top, issues, config);
    parse_bounds_block(top, issues, config);
    top.finish();

    // cross-field checks, only meaningful when the pieces parsed
    if (have_t0 && have_t_end && !(config.t_end > config.t0))
        issues.add(ConfigIssueKind::InvariantViolation, "t_end", "must exceed t0");
    if (have_step && !(config.step > 0.0))
        issues.add(ConfigIssueKind::InvariantViolation, "step", "must be positive");
    else if (have_step && have_t0 && have_t_end && config.t_end > config.t0 &&
             config.step > config.t_end - config.t0)
        issues.add(ConfigIssueKind::InvariantViolation, "step",
                   "must not exceed the horizon length");
    if (have_step && config.step > 0.0 &&
        !(config.event_tol > 0.0 && config.event_tol < config.step))
        issues.add(ConfigIssueKind::InvariantViolation, "event_tol",
                   "must lie in (0, step)");

    const int n = static_cast<int>(config.topology_raw.rows());
    if (n > 0) {
        for (std::size_t k = 0; k < config.pins.size(); ++k)
            if (config.pins[k] >= n)
                issues.add(ConfigIssueKind::InvariantViolation,
                           "pins[" + std::to_string(k) + "]",
                           "node index must be below " + std::to_string(n));
        for (int node : config.pins)
            if (node < n && !config.trigger_beta.count(node))
                issues.add(ConfigIssueKind::MissingField, "triggers." + std::to_string(node),
                           "pinned node has no trigger block");
        for (const auto& [node, beta] : config.trigger_beta)
            if (std::find(config.pins.begin(), config.pins.end(), node) == config.pins.end())
                issues.add(ConfigIssueKind::InvariantViolation,
                           "triggers." + std::to_string(node), "node is not pinned");
        if (!config.seeded &&
            static_cast<int>(config.literal_states.size()) != n)
            issues.add(ConfigIssueKind::InvariantViolation, "initial.states",
                       "expected " + std::to_string(n) + " state vectors");
    }
    if (!config.seeded)
        for (std::size_t i = 0; i < config.literal_states.size(); ++i)
            if (static_cast<int>(config.literal_states[i].size()) != config.dim)
                issues.add(ConfigIssueKind::InvariantViolation,
                           "initial.states[" + std::to_string(i) + "]",
                           "expected length " + std::to_string(config.dim));
    if (config.check_box &&
        static_cast<int>(config.check_box->size()) != config.dim)
        issues.add(ConfigIssueKind::InvariantViolation, "assumption_check.box",
                   "expected " + std::to_string(config.dim) + " intervals");
    if (config.bounds_mu && !config.trigger_beta.empty()) {
        double beta_min = std::numeric_limits<double>::infinity();
        for (const auto& [node, beta] : config.trigger_beta) beta_min = std::min(beta_min, beta);
        if (*config.bounds_mu >= beta_min)
            issues.add(ConfigIssueKind::InvariantViolation, "bounds.mu",
                       "must be below the smallest trigger beta");
    }

    issues.throw_if_any();
    return config;
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.has_parent_path() ? path.parent_path()
                                                          : std::filesystem::path("."));
}

NodeDynamics dynamics_from_config(const RunConfig& config) {
    NodeDynamics d;
    switch (config.dynamics_kind) {
        case DynamicsKind::Chen:
            d = chen_dynamics();
            break;
        case DynamicsKind::Zero:
            d = zero_dynamics(config.dim);
            break;
        case DynamicsKind::Linear:
            d = linear_dynamics(config.linear_matrix, config.gamma);
            break;
    }
    d.one_sided_gamma = config.gamma;
    return d;
}

BuiltRun build_run(const RunConfig& config) {
    BuiltRun built;

    NetworkSpec spec{validate_topology(config.topology_raw), make_inner_coupling(config.inner),
                     dynamics_from_config(config), config.coupling};
    const int n = spec.topology.n_nodes();
    const int dim = spec.dynamics.dim;

    SimConfig sim;
    sim.spec = std::move(spec);
    sim.pins = PinSet(config.pins);
    sim.t0 = config.t0;
    sim.t_end = config.t_end;
    sim.step = config.step;
    sim.event_tol = config.event_tol;
    sim.max_events_per_node = config.max_events_per_node;
    sim.initial_isolated = config.z0;

    std::map<int, NodeTrigger> triggers;
    if (config.seeded) {
        built.seed = config.seed;
        SplitMix64 rng(config.seed);
        sim.initial_states.assign(n, Vec(dim));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < dim; ++k)
                sim.initial_states[i][k] = rng.uniform_open(-1.0, 1.0);
        for (int node : config.pins) {
            double d = 0.0;
            do {
                d = rng.uniform_open(-1.0, 1.0);
            } while (!(d > 0.0 && d < 1.0));
            double v0 = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double e = sim.initial_states[node][k] - config.z0[k];
                v0 += e * e;
            }
            triggers[node] = NodeTrigger{1.01 * v0, config.trigger_beta.at(node), d};
        }
    } else {
        sim.initial_states = config.literal_states;
        for (int node : config.pins)
            triggers[node] = NodeTrigger{config.trigger_alpha.at(node),
                                         config.trigger_beta.at(node),
                                         config.trigger_d.at(node)};
    }
    sim.triggers = TriggerParams(std::move(triggers));

    validate_sim_config(sim);
    built.sim = std::move(sim);
    return built;
}

}  // namespace pinsync
