#include "pinsync/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace pinsync {

namespace {

constexpr double kSymmetryTol = 1e-10;   // entrywise, absolute
constexpr double kSweepTol = 1e-14;      // off-diagonal Frobenius vs ||m||_F
constexpr int kMaxSweeps = 100;

double offdiag_frobenius(const Mat& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

}  // namespace

Vec symmetric_eigenvalues(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) throw EmptyMatrix("symmetric_eigenvalues: empty matrix");
    if (!m.square()) throw NotSymmetric("symmetric_eigenvalues: matrix not square");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > kSymmetryTol)
                throw NotSymmetric("symmetric_eigenvalues: entry (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") asymmetric beyond 1e-10");

    // Work on the symmetrized copy so sub-tolerance asymmetry cannot drift.
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));

    const double scale = frobenius_norm(a);
    if (scale > 0.0 && n > 1) {
        int sweep = 0;
        while (offdiag_frobenius(a) > kSweepTol * scale) {
            if (++sweep > kMaxSweeps)
                throw Error("symmetric_eigenvalues: jacobi sweeps did not converge");
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a(p, q);
                    if (apq == 0.0) continue;
                    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                    const double cos = 1.0 / std::sqrt(t * t + 1.0);
                    const double sin = t * cos;

                    const double app = a(p, p);
                    const double aqq = a(q, q);
                    a(p, p) = app - t * apq;
                    a(q, q) = aqq + t * apq;
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        if (k == p || k == q) continue;
                        const double akp = a(k, p);
                        const double akq = a(k, q);
                        a(k, p) = cos * akp - sin * akq;
                        a(p, k) = a(k, p);
                        a(k, q) = sin * akp + cos * akq;
                        a(q, k) = a(k, q);
                    }
                }
            }
        }
    }

    Vec eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double lambda_max_symmetric(const Mat& m) { return symmetric_eigenvalues(m).back(); }

PinSet::PinSet(std::vector<int> indices) : indices_(std::move(indices)) {
    std::set<int> seen;
    for (int i : indices_) {
        if (i < 0) throw InvalidPinSet("pin index " + std::to_string(i) + " is negative");
        if (!seen.insert(i).second)
            throw InvalidPinSet("pin index " + std::to_string(i) + " repeated");
    }
}

bool PinSet::contains(int node) const {
    return std::find(indices_.begin(), indices_.end(), node) != indices_.end();
}

std::vector<int> PinSet::unpinned(int n_nodes) const {
    for (int i : indices_)
        if (i >= n_nodes)
            throw IndexOutOfRange("pin index " + std::to_string(i) + " not below " +
                                  std::to_string(n_nodes));
    std::vector<int> out;
    out.reserve(n_nodes - l());
    for (int i = 0; i < n_nodes; ++i)
        if (!contains(i)) out.push_back(i);
    return out;
}

Mat reduced_matrix(const Topology& topology, const PinSet& pins) {
    const auto unpinned = pins.unpinned(topology.n_nodes());
    if (unpinned.empty())
        throw AllNodesPinned("reduced_matrix: every node pinned, the reduced matrix is empty");
    Mat abar(unpinned.size(), unpinned.size());
    for (std::size_t i = 0; i < unpinned.size(); ++i)
        for (std::size_t j = 0; j < unpinned.size(); ++j)
            abar(i, j) = topology.entry(unpinned[i], unpinned[j]);
    return abar;
}

ConditionReport check_sync_condition(double gamma, double c, const Topology& topology,
                                     const PinSet& pins) {
    if (gamma < 0.0) throw Error("check_sync_condition: gamma must be nonnegative");
    if (c <= 0.0) throw Error("check_sync_condition: c must be positive");

    ConditionReport report;
    report.l = pins.l();
    report.gamma = gamma;
    report.c = c;

    if (pins.unpinned(topology.n_nodes()).empty()) {
        // All nodes pinned: no topology condition applies (0 sentinel).
        report.satisfied = true;
        report.min_coupling = 0.0;
        return report;
    }

    const double lam = lambda_max_symmetric(reduced_matrix(topology, pins));
    report.lambda_max_abar = lam;
    report.min_coupling =
        lam < 0.0 ? gamma / std::abs(lam) : std::numeric_limits<double>::infinity();
    report.satisfied = gamma + c * lam < 0.0;
    return report;
}

SelectionResult select_pinned_nodes(const Topology& topology, double gamma, double c) {
    if (c <= 0.0) throw Error("select_pinned_nodes: c must be positive");
    const int n = topology.n_nodes();

    std::vector<int> pinned;
    for (int i = 0; i < n; ++i)
        if (node_degree(topology, i) <= gamma / c) pinned.push_back(i);

    SelectionResult result;
    auto record = [&](std::optional<int> added) {
        PinSet pins(pinned);
        ConditionReport report = check_sync_condition(gamma, c, topology, pins);
        result.trail.push_back({pinned, added, report});
        return report.satisfied;
    };

    bool satisfied = record(std::nullopt);
    while (!satisfied && static_cast<int>(pinned.size()) < n) {
        // Largest degree first, ties to the lowest index.
        int best = -1;
        double best_degree = -1.0;
        for (int i = 0; i < n; ++i) {
            if (std::find(pinned.begin(), pinned.end(), i) != pinned.end()) continue;
            const double deg = node_degree(topology, i);
            if (deg > best_degree) {
                best = i;
                best_degree = deg;
            }
        }
        pinned.push_back(best);
        satisfied = record(best);
    }

    result.pins = PinSet(pinned);
    return result;
}

}  // namespace pinsync
