#include "dichotomy/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dichotomy {

const char* to_string(TrajectoryKind kind) {
    switch (kind) {
        case TrajectoryKind::equality: return "equality";
        case TrajectoryKind::inequality: return "inequality";
        case TrajectoryKind::altafini: return "altafini";
        case TrajectoryKind::friedkin_johnsen: return "friedkin_johnsen";
        case TrajectoryKind::constrained: return "constrained";
    }
    return "?";
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::consensus: return "consensus";
        case Classification::equilibrium: return "equilibrium";
        case Classification::modulus_consensus: return "modulus_consensus";
        case Classification::divergent_below: return "divergent_below";
        case Classification::non_convergent_bounded: return "non_convergent_bounded";
        case Classification::undecided: return "undecided";
    }
    return "?";
}

Trajectory::Trajectory(TrajectoryKind kind, std::vector<Eigen::VectorXd> states,
                       std::shared_ptr<const MatrixSequence> seq)
    : kind_(kind), states_(std::move(states)), seq_(std::move(seq)) {
    if (states_.empty()) throw PreconditionViolated("trajectory needs at least x(0)");
    const auto n = states_.front().size();
    for (const auto& x : states_)
        if (x.size() != n) throw DimensionMismatch("trajectory states of mixed sizes");
}

double Trajectory::max_inequality_violation() const {
    if (!seq_) throw PreconditionViolated("trajectory has no generating sequence");
    double worst = -std::numeric_limits<double>::infinity();
    for (long k = 0; k + 1 <= steps(); ++k) {
        const Eigen::VectorXd bound = seq_->at(k).apply(state(k));
        worst = std::max(worst, (state(k + 1) - bound).maxCoeff());
    }
    return worst;
}

void Trajectory::validate(double tol) const {
    if (kind_ == TrajectoryKind::inequality || kind_ == TrajectoryKind::altafini) {
        if (max_inequality_violation() > tol)
            throw PreconditionViolated("inequality invariant violated beyond tolerance");
        return;
    }
    if (kind_ == TrajectoryKind::equality) {
        if (!seq_) throw PreconditionViolated("trajectory has no generating sequence");
        for (long k = 0; k + 1 <= steps(); ++k) {
            const Eigen::VectorXd next = seq_->at(k).apply(state(k));
            if ((state(k + 1) - next).cwiseAbs().maxCoeff() > tol)
                throw PreconditionViolated("equality recursion violated beyond tolerance");
        }
    }
    // friedkin_johnsen / constrained recursions are validated by their runners.
}

SortedTrajectoryView sorted_view(const Trajectory& traj) {
    SortedTrajectoryView view;
    const int n = traj.agents();
    view.y.reserve(traj.states().size());
    view.sigma.reserve(traj.states().size());
    for (const auto& x : traj.states()) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&x](int a, int b) { return x[a] < x[b]; });
        Eigen::VectorXd y(n);
        for (int r = 0; r < n; ++r) y[r] = x[order[r]];
        view.y.push_back(std::move(y));
        view.sigma.push_back(std::move(order));
    }
    return view;
}

std::vector<int> SortedTrajectoryView::J_set(long k, int i) const {
    const auto& perm = sigma.at(static_cast<std::size_t>(k));
    if (i < 1 || i > static_cast<int>(perm.size()))
        throw PreconditionViolated("J_set index must be in [1, n]");
    return std::vector<int>(perm.begin(), perm.begin() + i);
}

SlackPolicy SlackPolicy::none() { return SlackPolicy(Kind::none); }

SlackPolicy SlackPolicy::geometric(double rate, double scale) {
    if (rate < 0.0 || rate >= 1.0) throw PreconditionViolated("geometric slack rate in [0,1)");
    if (scale < 0.0) throw PreconditionViolated("slack scale must be >= 0");
    SlackPolicy s(Kind::geometric);
    s.rate_ = rate;
    s.scale_ = scale;
    return s;
}

SlackPolicy SlackPolicy::seeded_random_summable(std::uint64_t seed, double scale, double rate) {
    if (rate < 0.0 || rate >= 1.0) throw PreconditionViolated("slack rate in [0,1)");
    if (scale < 0.0) throw PreconditionViolated("slack scale must be >= 0");
    SlackPolicy s(Kind::random_summable);
    s.seed_ = seed;
    s.scale_ = scale;
    s.rate_ = rate;
    return s;
}

namespace {
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

Eigen::VectorXd SlackPolicy::at(long k, int n) const {
    switch (kind_) {
        case Kind::none:
            return Eigen::VectorXd::Zero(n);
        case Kind::geometric:
            return Eigen::VectorXd::Constant(n, scale_ * std::pow(rate_, static_cast<double>(k)));
        case Kind::random_summable: {
            std::mt19937_64 rng(mix(seed_ ^ mix(static_cast<std::uint64_t>(k) + 1)));
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            Eigen::VectorXd s(n);
            const double envelope = scale_ * std::pow(rate_, static_cast<double>(k));
            for (int i = 0; i < n; ++i) s[i] = envelope * unif(rng);
            return s;
        }
    }
    throw Error("unreachable slack kind");
}

ConvergenceReport classify_convergence(const Trajectory& traj, double tol, long tail_window,
                                       double bound_threshold) {
    const long K = traj.steps();
    if (K < 2 * tail_window) throw HorizonTooShort("need K >= 2*tail_window");
    const int n = traj.agents();

    ConvergenceReport report;
    report.tol = tol;
    report.tail_window = tail_window;

    Eigen::VectorXd tail_max = traj.state(K), tail_min = traj.state(K);
    Eigen::VectorXd abs_max = traj.state(K).cwiseAbs(), abs_min = abs_max;
    for (long k = K - tail_window; k <= K; ++k) {
        const auto& x = traj.state(k);
        tail_max = tail_max.cwiseMax(x);
        tail_min = tail_min.cwiseMin(x);
        abs_max = abs_max.cwiseMax(x.cwiseAbs());
        abs_min = abs_min.cwiseMin(x.cwiseAbs());
    }
    report.residuals = tail_max - tail_min;
    const auto& last = traj.state(K);
    report.spread = last.maxCoeff() - last.minCoeff();

    const bool settled = report.residuals.maxCoeff() <= tol;
    const double abs_osc = (abs_max - abs_min).maxCoeff();
    const double abs_spread = last.cwiseAbs().maxCoeff() - last.cwiseAbs().minCoeff();
    const bool settled_abs = abs_osc <= tol;

    if (last.minCoeff() < -bound_threshold) {
        report.classification = Classification::divergent_below;
        return report;
    }
    if (settled && report.spread <= tol) {
        report.classification = Classification::consensus;
        report.consensus_value = last.mean();
        return report;
    }
    // A bipartite fixed point settles per-agent with nonzero spread; for the
    // signed protocol the modulus view decides before equilibrium does.
    if (traj.kind() == TrajectoryKind::altafini && settled_abs && abs_spread <= tol) {
        report.classification = Classification::modulus_consensus;
        report.consensus_value = last.cwiseAbs().mean();
        return report;
    }
    if (settled) {
        report.classification = Classification::equilibrium;
        report.limit_vector = last;
        return report;
    }
    if (settled_abs && abs_spread <= tol) {
        report.classification = Classification::modulus_consensus;
        report.consensus_value = last.cwiseAbs().mean();
        return report;
    }
    const double osc_floor = std::max(1e3 * tol, 1e-4);
    report.classification = report.residuals.maxCoeff() > osc_floor
                                ? Classification::non_convergent_bounded
                                : Classification::undecided;
    return report;
}

}  // namespace dichotomy
