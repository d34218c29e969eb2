#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pinsync/bounds.hpp"
#include "pinsync/simulator.hpp"

namespace pinsync {

enum class DynamicsKind { Chen, Zero, Linear };

/// Fully validated run description parsed from the JSON config document.
/// Node indices are 0-based everywhere.
struct RunConfig {
    DynamicsKind dynamics_kind = DynamicsKind::Chen;
    Mat linear_matrix;  // Linear only
    int dim = 3;
    double gamma = kChenOneSidedGamma;

    Mat inner;         // n x n inner coupling
    Mat topology_raw;  // resolved from inline entries or file

    std::vector<int> pins;
    CouplingPolicy coupling = FixedCoupling{1.0};

    std::map<int, double> trigger_beta;   // per pinned node
    std::map<int, double> trigger_alpha;  // literal mode only
    std::map<int, double> trigger_d;      // literal mode only

    double t0 = 0.0;
    double t_end = 0.0;
    double step = 1e-3;
    double event_tol = 1e-9;
    long max_events_per_node = 1000000;

    bool seeded = false;  // exactly one of seeded / literal initial states
    std::uint64_t seed = 0;
    std::vector<Vec> literal_states;
    Vec z0;

    std::string out_dir;  // optional; the --out flag takes precedence

    std::optional<Box> check_box;  // verify-assumption block
    long check_samples = 100000;
    std::uint64_t check_seed = 0;

    std::optional<double> bounds_epsilon;  // bounds block
    std::optional<double> bounds_mu;
};

/// Parses and validates the whole document, collecting every issue before
/// throwing ConfigError. `base_dir` resolves relative topology file paths.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);

RunConfig load_config_file(const std::filesystem::path& path);

NodeDynamics dynamics_from_config(const RunConfig& config);

struct BuiltRun {
    SimConfig sim;
    std::optional<std::uint64_t> seed;  // set when initial data was generated
};

/// Materializes the SimConfig. In seeded mode the initial states x_ij(0) are
/// drawn uniformly from (-1,1) node-major, each pinned node's d_i is drawn
/// from (-1,1) redrawing until it lands in (0,1) (in the order pins are
/// listed), and alpha_i = 1.01 ||x_i(0) - z(0)||^2.
BuiltRun build_run(const RunConfig& config);

}  // namespace pinsync
