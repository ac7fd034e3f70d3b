#include "dichotomy/protocols.hpp"

#include <cmath>

#include "dichotomy/graph.hpp"
#include "dichotomy/log.hpp"
#include "dichotomy/spectral.hpp"

namespace dichotomy {

Trajectory run_equality(const MatrixSequence& seq, const Eigen::VectorXd& x0, long K) {
    if (x0.size() != seq.size()) throw DimensionMismatch("x0 size does not match sequence");
    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(K) + 1);
    states.push_back(x0);
    for (long k = 0; k < K; ++k) states.push_back(seq.at(k).apply(states.back()));
    return Trajectory(TrajectoryKind::equality, std::move(states),
                      std::make_shared<MatrixSequence>(seq));
}

Trajectory run_inequality(const MatrixSequence& seq, const Eigen::VectorXd& x0,
                          const SlackPolicy& slack, long K) {
    if (x0.size() != seq.size()) throw DimensionMismatch("x0 size does not match sequence");
    const int n = seq.size();
    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(K) + 1);
    states.push_back(x0);
    for (long k = 0; k < K; ++k) {
        Eigen::VectorXd next = seq.at(k).apply(states.back());
        if (!slack.is_none()) next -= slack.at(k, n);
        states.push_back(std::move(next));
    }
    return Trajectory(TrajectoryKind::inequality, std::move(states),
                      std::make_shared<MatrixSequence>(seq));
}

AltafiniRun run_altafini(const SignedMatrixSequence& seq, const Eigen::VectorXd& xi0, long K) {
    if (xi0.size() != seq.size()) throw DimensionMismatch("xi0 size does not match sequence");
    std::vector<Eigen::VectorXd> xi_states, abs_states;
    xi_states.reserve(static_cast<std::size_t>(K) + 1);
    abs_states.reserve(static_cast<std::size_t>(K) + 1);
    xi_states.push_back(xi0);
    abs_states.push_back(xi0.cwiseAbs());
    for (long k = 0; k < K; ++k) {
        xi_states.push_back(seq.at(k).apply(xi_states.back()));
        abs_states.push_back(xi_states.back().cwiseAbs());
    }
    auto modulus_seq = std::make_shared<MatrixSequence>(seq.modulus_sequence());
    AltafiniRun run{Trajectory(TrajectoryKind::altafini, std::move(xi_states)),
                    Trajectory(TrajectoryKind::inequality, std::move(abs_states), modulus_seq),
                    std::make_shared<SignedMatrixSequence>(seq)};
    run.modulus.validate();  // |xi(k+1)| <= |A(k)| |xi(k)|
    return run;
}

StabilityResult substochastic_stability(const SubstochasticMatrix& a) {
    const int n = a.size();
    const auto& deficiency = a.deficiency_rows();

    const ThresholdGraph g = build_graph(a, 0.0);
    bool stable = n > 0;
    for (int v = 0; v < n && stable; ++v) stable = reaches_set(g, v, deficiency);

    Eigen::MatrixXd w = a.entries();
    for (int i = 0; i < n; ++i) {
        const double spread = (1.0 - a.entries().row(i).sum()) / n;
        for (int j = 0; j < n; ++j) w(i, j) += spread;
    }

    StabilityResult res{stable, spectral_radius(a),
                        StochasticMatrix::validated(std::move(w)), deficiency};
    if (res.stable && res.rho >= 1.0 - 1e-8)
        throw Error("internal: reachability condition held but rho >= 1 - 1e-8");
    if (!res.stable && res.rho < 1.0 - 1e-8)
        throw Error("internal: reachability condition failed but rho < 1 - 1e-8");
    return res;
}

FriedkinJohnsenRun run_friedkin_johnsen(const StochasticMatrix& w, const Eigen::VectorXd& lambda,
                                        const Eigen::VectorXd& u, long K) {
    const int n = w.size();
    if (lambda.size() != n || u.size() != n)
        throw DimensionMismatch("friedkin-johnsen inputs of mixed sizes");
    for (int i = 0; i < n; ++i)
        if (lambda[i] < 0.0 || lambda[i] > 1.0)
            throw PreconditionViolated("susceptibilities must lie in [0,1]");
    for (int i = 0; i < n; ++i) {
        const bool zero_lambda = lambda[i] == 0.0;
        const bool self_row = w(i, i) == 1.0;
        if (zero_lambda != self_row)
            log::info("agent %d: lambda_ii = 0 and w_ii = 1 usually go together "
                      "(lambda=%g, w_ii=%g)",
                      i, lambda[i], w(i, i));
    }

    const Eigen::MatrixXd lw = lambda.asDiagonal() * w.entries();
    const Eigen::VectorXd input = (Eigen::VectorXd::Ones(n) - lambda).cwiseProduct(u);

    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(K) + 1);
    states.push_back(u);
    for (long k = 0; k < K; ++k) states.push_back(lw * states.back() + input);

    FriedkinJohnsenRun run{Trajectory(TrajectoryKind::friedkin_johnsen, std::move(states)),
                           false, 0.0, std::nullopt, std::nullopt};

    const auto stability = substochastic_stability(SubstochasticMatrix::validated(lw));
    run.stable = stability.stable;
    run.rho = stability.rho;
    if (stability.stable) {
        const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - lw;
        Eigen::VectorXd limit = system.partialPivLu().solve(input);
        const double fixed_point_gap =
            (limit - (lw * limit + input)).lpNorm<Eigen::Infinity>();
        if (fixed_point_gap > 1e-10)
            throw Error("internal: closed-form limit is not a fixed point");
        run.final_gap = (run.traj.state(K) - limit).lpNorm<Eigen::Infinity>();
        run.limit = std::move(limit);
    }
    return run;
}

}  // namespace dichotomy
