#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dichotomy/sequence.hpp"

namespace dichotomy {

enum class TrajectoryKind { equality, inequality, altafini, friedkin_johnsen, constrained };

const char* to_string(TrajectoryKind kind);

/// Time-indexed states x(0..K). Inequality trajectories must satisfy
/// x(k+1) <= W(k) x(k) entrywise within kTrajectoryTol; equality-style kinds
/// satisfy their recursion to round-off. The generating sequence rides along
/// so checkers can form evolutionary matrices.
inline constexpr double kTrajectoryTol = 1e-12;

class Trajectory {
public:
    Trajectory(TrajectoryKind kind, std::vector<Eigen::VectorXd> states,
               std::shared_ptr<const MatrixSequence> seq = nullptr);

    TrajectoryKind kind() const { return kind_; }
    long steps() const { return static_cast<long>(states_.size()) - 1; }  // K
    int agents() const { return static_cast<int>(states_.front().size()); }
    const Eigen::VectorXd& state(long k) const { return states_.at(static_cast<std::size_t>(k)); }
    const std::vector<Eigen::VectorXd>& states() const { return states_; }
    const std::shared_ptr<const MatrixSequence>& sequence() const { return seq_; }

    /// Re-checks the kind's defining relation; throws PreconditionViolated on
    /// violation. For inequality kinds requires a generating sequence.
    void validate(double tol = kTrajectoryTol) const;

    /// Worst signed violation of x(k+1) <= W(k) x(k): max over steps and
    /// agents of x_i(k+1) - (W(k)x(k))_i. <= 0 means the inequality holds
    /// exactly in floating point.
    double max_inequality_violation() const;

private:
    TrajectoryKind kind_;
    std::vector<Eigen::VectorXd> states_;
    std::shared_ptr<const MatrixSequence> seq_;
};

/// Ascending sort of each state with the sorting permutation.
/// y(k) = x(k) sorted ascending; sigma(k)[r] = original index of the r-th
/// smallest (0-based; ties keep smallest original index first).
/// J_i(k) = first i entries of sigma(k), the paper's prefix index sets.
struct SortedTrajectoryView {
    std::vector<Eigen::VectorXd> y;
    std::vector<std::vector<int>> sigma;

    const Eigen::VectorXd& sorted(long k) const { return y.at(static_cast<std::size_t>(k)); }
    /// i in [1, n]; returns the original indices of the i smallest entries.
    std::vector<int> J_set(long k, int i) const;
};

SortedTrajectoryView sorted_view(const Trajectory& traj);

/// Nonnegative per-step slack s(k), applied as x(k+1) = W(k)x(k) - s(k).
/// The summable kinds keep the total slack mass finite, so generated
/// inequality solutions stay bounded from below.
class SlackPolicy {
public:
    static SlackPolicy none();
    static SlackPolicy geometric(double rate, double scale);
    static SlackPolicy seeded_random_summable(std::uint64_t seed, double scale, double rate = 0.9);

    Eigen::VectorXd at(long k, int n) const;
    bool is_none() const { return kind_ == Kind::none; }

private:
    enum class Kind { none, geometric, random_summable };
    SlackPolicy(Kind kind) : kind_(kind) {}
    Kind kind_;
    double rate_ = 0.0;
    double scale_ = 0.0;
    std::uint64_t seed_ = 0;
};

enum class Classification {
    consensus,
    equilibrium,
    modulus_consensus,
    divergent_below,
    non_convergent_bounded,
    undecided,
};

const char* to_string(Classification c);

struct ConvergenceReport {
    Classification classification = Classification::undecided;
    std::optional<double> consensus_value;        // consensus / modulus_consensus
    std::optional<Eigen::VectorXd> limit_vector;  // equilibrium
    Eigen::VectorXd residuals;                    // per-agent tail max-oscillation
    double spread = 0.0;                          // cross-agent spread at the end
    double tol = 0.0;
    long tail_window = 0;
};

/// Tail-based classification. Requires K >= 2*tail_window (HorizonTooShort).
ConvergenceReport classify_convergence(const Trajectory& traj, double tol = 1e-8,
                                       long tail_window = 50, double bound_threshold = 1e6);

}  // namespace dichotomy
