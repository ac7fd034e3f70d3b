#pragma once

#include <map>
#include <optional>

#include "dichotomy/checks.hpp"
#include "dichotomy/constrained.hpp"
#include "dichotomy/io.hpp"

namespace dichotomy {

enum class ProtocolKind {
    equality,
    inequality,
    altafini,
    friedkin_johnsen,
    constrained,
    thm1_counterexample,
};

const char* to_string(ProtocolKind kind);

struct CheckRequest {
    std::string name;
    nlohmann::json params;
};

struct ToleranceConfig {
    double classify_tol = 1e-8;
    long tail_window = 50;
    double bound_threshold = 1e6;
};

/// A fully resolved batch run: sequence, protocol, initial state (seeded
/// randomness resolved at load time so runs are deterministic), horizon,
/// checks and expectations.
struct Scenario {
    std::string name;
    ProtocolKind protocol = ProtocolKind::equality;
    long horizon = 0;

    std::optional<MatrixSequence> seq;
    std::optional<SignedMatrixSequence> signed_seq;

    Eigen::VectorXd x0;      // scalar protocols
    Eigen::MatrixXd xi0;     // constrained
    SlackPolicy slack = SlackPolicy::none();
    std::optional<StochasticMatrix> fj_w;
    Eigen::VectorXd fj_lambda, fj_u;
    std::vector<ConvexSet> sets;
    ConstrainedVariant variant = ConstrainedVariant::nedic;
    int cx_i = 0, cx_j = 0;  // thm1_counterexample arc

    std::vector<CheckRequest> checks;
    ToleranceConfig tolerances;

    std::optional<std::string> expect_classification;
    std::map<std::string, bool> expect_checks;

    nlohmann::json raw;  // config echo
};

Scenario load_scenario(const std::string& path);

struct RunReport {
    std::string scenario;
    std::string classification;
    std::optional<double> consensus_value;
    std::vector<Verdict> verdicts;
    std::optional<nlohmann::json> constrained_report;
    std::vector<std::string> artifacts;
    double wall_ms = 0.0;  // timing metadata; everything else is deterministic
    nlohmann::json config_echo;
    bool ok = false;  // checks match expectations, classification matches if declared

    nlohmann::json to_json() const;
};

/// Runs the protocol, executes every requested check, writes trajectory /
/// sorted-view CSVs and verdicts JSON into out_dir. Deterministic given the
/// scenario (wall_ms aside).
RunReport run_scenario(const Scenario& s, const std::string& out_dir);

struct SweepRow {
    std::string name;
    std::string status;  // ok | fail | error
    std::string classification;
    int checks_passed = 0;
    int checks_failed = 0;
    double runtime_ms = 0.0;
    std::string error;
};

/// Runs every *.json scenario under dir (up to `jobs` concurrently), writes
/// <out_dir>/summary.csv sorted by name. Per-scenario failures become error
/// rows; the sweep itself never aborts.
std::vector<SweepRow> sweep(const std::string& dir, const std::string& out_dir, int jobs = 1);

}  // namespace dichotomy
