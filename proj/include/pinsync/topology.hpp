#pragma once

#include <string>
#include <vector>

#include "pinsync/errors.hpp"
#include "pinsync/matrix.hpp"

namespace pinsync {

/// Symmetric coupling matrix with zero row sums and nonpositive diagonal.
/// Immutable once validated; safe to share across threads.
class Topology {
public:
    int n_nodes() const { return static_cast<int>(a_.rows()); }
    const Mat& matrix() const { return a_; }
    double entry(int i, int j) const { return a_(i, j); }

    friend Topology validate_topology(const Mat& raw);

private:
    explicit Topology(Mat a) : a_(std::move(a)) {}
    Mat a_;
};

/// Checks the four topology invariants and reports every violation.
/// Row sums are compared against 1e-12 * max(1, max_j |a_ij|) per row.
std::vector<TopologyIssue> topology_issues(const Mat& raw);

/// Returns a Topology iff all invariants hold, otherwise throws a
/// TopologyError carrying the complete issue list.
Topology validate_topology(const Mat& raw);

/// Degree of node i, |a_ii|. Throws IndexOutOfRange.
double node_degree(const Topology& topology, int i);

/// Plain-text matrix format: one row per line, whitespace-separated decimal
/// entries, blank lines ignored.
Mat parse_topology_text(const std::string& text);
Mat load_topology_file(const std::string& path);

}  // namespace pinsync
