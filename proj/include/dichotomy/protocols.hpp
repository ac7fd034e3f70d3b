#pragma once

#include "dichotomy/trajectory.hpp"

namespace dichotomy {

/// x(k+1) = W(k) x(k), k = 0..K-1.
Trajectory run_equality(const MatrixSequence& seq, const Eigen::VectorXd& x0, long K);

/// x(k+1) = W(k) x(k) - s(k). With slack none this reproduces run_equality
/// bit for bit. The result satisfies the inequality invariant and the
/// max_i x_i(0) upper bound.
Trajectory run_inequality(const MatrixSequence& seq, const Eigen::VectorXd& x0,
                          const SlackPolicy& slack, long K);

struct AltafiniRun {
    Trajectory xi;                                   // signed states, kind=altafini
    Trajectory modulus;                              // |xi|, kind=inequality
    std::shared_ptr<const SignedMatrixSequence> seq;
};

/// xi(k+1) = A(k) xi(k). Also returns the modulus trajectory x(k) = |xi(k)|,
/// checked to satisfy x(k+1) <= |A(k)| x(k).
AltafiniRun run_altafini(const SignedMatrixSequence& seq, const Eigen::VectorXd& xi0, long K);

struct StabilityResult {
    bool stable = false;           // every node is in I_d or reaches it
    double rho = 0.0;              // spectral radius
    StochasticMatrix completion;   // A with each row's deficiency spread uniformly
    std::vector<int> deficiency_rows;
};

/// Schur stability of a substochastic matrix via the reachability condition:
/// stable iff every node belongs to the deficiency set I_d or reaches it.
/// Internally asserts the equivalence stable <=> rho < 1 - 1e-8.
StabilityResult substochastic_stability(const SubstochasticMatrix& a);

struct FriedkinJohnsenRun {
    Trajectory traj;                         // kind=friedkin_johnsen
    bool stable = false;                     // substochastic_stability of Lambda*W
    double rho = 0.0;
    std::optional<Eigen::VectorXd> limit;    // (I - Lambda W)^{-1}(I - Lambda) u
    std::optional<double> final_gap;         // ||x(K) - limit||_inf
};

/// x(k+1) = Lambda W x(k) + (I - Lambda) u with x(0) = u; lambda_ii in [0,1].
/// When Lambda W is Schur stable the closed-form limit is returned and checked
/// against the fixed-point identity.
FriedkinJohnsenRun run_friedkin_johnsen(const StochasticMatrix& w, const Eigen::VectorXd& lambda,
                                        const Eigen::VectorXd& u, long K);

}  // namespace dichotomy
