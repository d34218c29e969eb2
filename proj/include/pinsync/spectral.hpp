#pragma once

#include <optional>
#include <vector>

#include "pinsync/errors.hpp"
#include "pinsync/matrix.hpp"
#include "pinsync/topology.hpp"

namespace pinsync {

/// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi sweeps until
/// the off-diagonal Frobenius norm falls below 1e-14 * ||m||_F. Input must
/// be symmetric within 1e-10 entrywise; it is symmetrized before sweeping.
Vec symmetric_eigenvalues(const Mat& m);

/// Largest eigenvalue. Throws NotSymmetric / EmptyMatrix.
double lambda_max_symmetric(const Mat& m);

/// Ordered set of distinct pinned-node indices. Order is meaningful for
/// reporting (mandatory nodes first, greedy additions after); reductions
/// always use ascending unpinned order.
class PinSet {
public:
    PinSet() = default;
    explicit PinSet(std::vector<int> indices);

    int l() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }
    bool contains(int node) const;
    /// Ascending complement in [0, n_nodes). Throws IndexOutOfRange when a
    /// pinned index is not a valid node.
    std::vector<int> unpinned(int n_nodes) const;

private:
    std::vector<int> indices_;
};

/// Principal submatrix of the coupling matrix on the unpinned indices.
/// Throws AllNodesPinned when l = N.
Mat reduced_matrix(const Topology& topology, const PinSet& pins);

struct ConditionReport {
    std::optional<double> lambda_max_abar;  // empty when all nodes are pinned
    double min_coupling = 0.0;  // gamma/|lambda|; 0 when no topology condition
                                // applies (l = N); +inf when lambda >= 0
    bool satisfied = false;
    int l = 0;
    double gamma = 0.0;
    double c = 0.0;
};

/// Spectral synchronization condition gamma + c * lambda_max(Abar) < 0.
/// With every node pinned the condition is vacuous and the report carries
/// the 0 sentinel for min_coupling.
ConditionReport check_sync_condition(double gamma, double c, const Topology& topology,
                                     const PinSet& pins);

struct SelectionStep {
    std::vector<int> pins;
    std::optional<int> added;  // empty for the initial mandatory set
    ConditionReport report;
};

struct SelectionResult {
    PinSet pins;
    std::vector<SelectionStep> trail;
};

/// Pins every node with degree <= gamma/c, then adds one node at a time
/// (largest degree first, ties to the lowest index) until the condition
/// holds or every node is pinned. The trail records each intermediate
/// report.
SelectionResult select_pinned_nodes(const Topology& topology, double gamma, double c);

}  // namespace pinsync
