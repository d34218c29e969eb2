#include "pinsync/errors.hpp"

#include <sstream>

namespace pinsync {

namespace {

std::string join_topology_issues(const std::vector<TopologyIssue>& issues) {
    std::ostringstream os;
    os << "invalid topology (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s")
       << "):";
    for (const auto& issue : issues) os << "\n  - " << to_string(issue);
    return os.str();
}

std::string sim_error_message(SimError::Kind kind, double t, int node) {
    std::ostringstream os;
    switch (kind) {
        case SimError::Kind::StartupViolation:
            os << "startup violation: V_" << node << "(t0) >= alpha_" << node;
            break;
        case SimError::Kind::NonFiniteState:
            os << "non-finite state first detected at t = " << t;
            break;
        case SimError::Kind::EventStorm:
            os << "event storm: node " << node << " exceeded the per-node event limit by t = "
               << t;
            break;
    }
    return os.str();
}

std::string join_config_issues(const std::vector<ConfigIssue>& issues) {
    std::ostringstream os;
    os << "invalid config (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s")
       << "):";
    for (const auto& issue : issues) os << "\n  - " << to_string(issue);
    return os.str();
}

}  // namespace

std::string to_string(const TopologyIssue& issue) {
    std::ostringstream os;
    switch (issue.kind) {
        case TopologyIssueKind::NonSquare:
            os << "NonSquare: matrix is not square";
            break;
        case TopologyIssueKind::AsymmetricEntry:
            os << "AsymmetricEntry(" << issue.i << "," << issue.j << ")";
            break;
        case TopologyIssueKind::NegativeOffDiagonal:
            os << "NegativeOffDiagonal(" << issue.i << "," << issue.j << ")";
            break;
        case TopologyIssueKind::RowSumNonzero:
            os << "RowSumNonzero(" << issue.i << ")";
            break;
        case TopologyIssueKind::PositiveDiagonal:
            os << "PositiveDiagonal(" << issue.i << ")";
            break;
    }
    return os.str();
}

TopologyError::TopologyError(std::vector<TopologyIssue> list)
    : Error(join_topology_issues(list)), issues(std::move(list)) {}

SimError::SimError(Kind k, double t, int n)
    : Error(sim_error_message(k, t, n)), kind(k), time(t), node(n) {}

BoundsError::BoundsError(Kind k, std::string message) : Error(std::move(message)), kind(k) {}

std::string to_string(const ConfigIssue& issue) {
    std::ostringstream os;
    switch (issue.kind) {
        case ConfigIssueKind::SyntaxError:
            os << "SyntaxError";
            break;
        case ConfigIssueKind::UnknownField:
            os << "UnknownField";
            break;
        case ConfigIssueKind::MissingField:
            os << "MissingField";
            break;
        case ConfigIssueKind::InvariantViolation:
            os << "InvariantViolation";
            break;
    }
    if (!issue.path.empty()) os << " at " << issue.path;
    if (!issue.message.empty()) os << ": " << issue.message;
    return os.str();
}

ConfigError::ConfigError(std::vector<ConfigIssue> list)
    : Error(join_config_issues(list)), issues(std::move(list)) {}

}  // namespace pinsync
