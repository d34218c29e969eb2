#include "pinsync/topology.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pinsync {

std::vector<TopologyIssue> topology_issues(const Mat& raw) {
    std::vector<TopologyIssue> issues;
    if (!raw.square() || raw.rows() == 0) {
        issues.push_back({TopologyIssueKind::NonSquare});
        return issues;
    }
    if (!all_finite(raw)) throw Error("topology matrix has non-finite entries");

    const int n = static_cast<int>(raw.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (raw(i, j) != raw(j, i))
                issues.push_back({TopologyIssueKind::AsymmetricEntry, i, j});

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && raw(i, j) < 0.0)
                issues.push_back({TopologyIssueKind::NegativeOffDiagonal, i, j});

    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        double row_scale = 0.0;
        for (int j = 0; j < n; ++j) {
            sum += raw(i, j);
            row_scale = std::max(row_scale, std::abs(raw(i, j)));
        }
        if (std::abs(sum) > 1e-12 * std::max(1.0, row_scale))
            issues.push_back({TopologyIssueKind::RowSumNonzero, i});
    }

    for (int i = 0; i < n; ++i)
        if (raw(i, i) > 0.0) issues.push_back({TopologyIssueKind::PositiveDiagonal, i});

    return issues;
}

Topology validate_topology(const Mat& raw) {
    auto issues = topology_issues(raw);
    if (!issues.empty()) throw TopologyError(std::move(issues));
    return Topology(raw);
}

double node_degree(const Topology& topology, int i) {
    if (i < 0 || i >= topology.n_nodes())
        throw IndexOutOfRange("node_degree: index " + std::to_string(i) + " out of range");
    return std::abs(topology.entry(i, i));
}

Mat parse_topology_text(const std::string& text) {
    std::vector<Vec> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        Vec row;
        double v;
        while (fields >> v) row.push_back(v);
        if (!fields.eof()) throw Error("topology text: unparsable entry in line: " + line);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("topology text: no rows");
    for (const auto& row : rows)
        if (row.size() != rows.front().size()) throw Error("topology text: ragged rows");
    return Mat::from_rows(rows);
}

Mat load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open topology file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_topology_text(buf.str());
}

}  // namespace pinsync
