#pragma once

#include <optional>

#include "dichotomy/projection.hpp"
#include "dichotomy/sequence.hpp"

namespace dichotomy {

/// The three projected averaging protocols.
/// nedic: xi_i <- P_i[ sum_j w_ij xi_j ]
/// morse: xi_i <- P_i[ sum_j w_ij P_j(xi_j) ]
/// tempo: xi_i <- w_ii P_i(xi_i) + sum_{j != i} w_ij xi_j
enum class ConstrainedVariant { nedic, morse, tempo };

const char* to_string(ConstrainedVariant v);

/// Per-step record. xi row i is agent i's state; eta_i = sum_j w_ij xi_j(k) is
/// the pre-projection average and e_i = xi_i(k+1) - eta_i the projection
/// error (absent at the final step); dist_i = d_i(xi_i(k)).
struct ConstrainedState {
    Eigen::MatrixXd xi;                   // n x d
    std::optional<Eigen::MatrixXd> eta;   // n x d
    std::optional<Eigen::MatrixXd> e;     // n x d
    Eigen::VectorXd dist;                 // n
};

std::vector<ConstrainedState> run_constrained(ConstrainedVariant variant,
                                              const MatrixSequence& seq,
                                              const std::vector<ConvexSet>& sets,
                                              const Eigen::MatrixXd& xi0, long K);

struct ConstrainedReport {
    bool consensus = false;            // tails agree within tol
    bool limit_feasible = false;       // common limit within tol of every set
    Eigen::VectorXd limit;             // d-vector (mean of final states)
    Eigen::VectorXd dist_to_sets;      // per-set distance of the limit
    double tail_spread = 0.0;          // max over tail of cross-agent spread
    double tail_max_error = 0.0;       // max over tail of ||e_i(k)||
    double tail_max_dist = 0.0;        // max over tail of d_i(xi_i(k))
    double tol = 0.0;

    bool ok() const {
        return consensus && limit_feasible && tail_max_error <= tol && tail_max_dist <= tol;
    }
};

/// Tail diagnostics for a constrained run; requires at least 2*tail_window
/// steps (HorizonTooShort).
ConstrainedReport constrained_consensus_report(const std::vector<ConstrainedState>& states,
                                               const std::vector<ConvexSet>& sets, double tol,
                                               long tail_window = 50);

}  // namespace dichotomy
