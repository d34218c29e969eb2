#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pinsync {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct NotSymmetric : Error {
    using Error::Error;
};
struct EmptyMatrix : Error {
    using Error::Error;
};
struct NotPositiveDefinite : Error {
    using Error::Error;
};
struct AllNodesPinned : Error {
    using Error::Error;
};
struct InvalidPinSet : Error {
    using Error::Error;
};
struct GainOutOfRange : Error {
    using Error::Error;
};
struct DegenerateBox : Error {
    using Error::Error;
};

enum class TopologyIssueKind {
    NonSquare,
    AsymmetricEntry,
    NegativeOffDiagonal,
    RowSumNonzero,
    PositiveDiagonal,
};

struct TopologyIssue {
    TopologyIssueKind kind;
    int i = -1;
    int j = -1;
};

std::string to_string(const TopologyIssue& issue);

/// Carries the complete list of violated topology invariants.
struct TopologyError : Error {
    explicit TopologyError(std::vector<TopologyIssue> list);
    std::vector<TopologyIssue> issues;
};

/// Simulation failures that are outcomes, not crashes.
struct SimError : Error {
    enum class Kind { StartupViolation, NonFiniteState, EventStorm };
    SimError(Kind k, double t, int n);
    Kind kind;
    double time;
    int node;
};

struct BoundsError : Error {
    enum class Kind {
        NoPinnedNodes,
        NoUnpinnedNodes,
        IsolatedPinnedNode,
        PreconditionViolation,
        UnsortedLog,
        LogOutsideHorizon,
        MissingRunArtifacts,
    };
    BoundsError(Kind k, std::string message);
    Kind kind;
};

enum class ConfigIssueKind { SyntaxError, UnknownField, MissingField, InvariantViolation };

struct ConfigIssue {
    ConfigIssueKind kind;
    std::string path;
    std::string message;
};

std::string to_string(const ConfigIssue& issue);

struct ConfigError : Error {
    explicit ConfigError(std::vector<ConfigIssue> list);
    std::vector<ConfigIssue> issues;
};

}  // namespace pinsync
