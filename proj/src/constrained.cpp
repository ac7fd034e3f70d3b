#include "dichotomy/constrained.hpp"

#include <cmath>

namespace dichotomy {

const char* to_string(ConstrainedVariant v) {
    switch (v) {
        case ConstrainedVariant::nedic: return "nedic";
        case ConstrainedVariant::morse: return "morse";
        case ConstrainedVariant::tempo: return "tempo";
    }
    return "?";
}

std::vector<ConstrainedState> run_constrained(ConstrainedVariant variant,
                                              const MatrixSequence& seq,
                                              const std::vector<ConvexSet>& sets,
                                              const Eigen::MatrixXd& xi0, long K) {
    const int n = seq.size();
    if (static_cast<int>(sets.size()) != n)
        throw DimensionMismatch("one constraint set per agent required");
    if (xi0.rows() != n) throw DimensionMismatch("xi0 must have one row per agent");
    const int d = static_cast<int>(xi0.cols());
    for (const auto& s : sets)
        if (s.dim() != d) throw DimensionMismatch("constraint sets must share the state dimension");

    std::vector<ConstrainedState> states;
    states.reserve(static_cast<std::size_t>(K) + 1);
    Eigen::MatrixXd xi = xi0;
    for (long k = 0; k < K; ++k) {
        const StochasticMatrix w = seq.at(k);
        const Eigen::MatrixXd eta = w.entries() * xi;

        Eigen::MatrixXd next(n, d);
        switch (variant) {
            case ConstrainedVariant::nedic:
                for (int i = 0; i < n; ++i) next.row(i) = sets[i].project(eta.row(i)).transpose();
                break;
            case ConstrainedVariant::morse: {
                Eigen::MatrixXd projected(n, d);
                for (int j = 0; j < n; ++j)
                    projected.row(j) = sets[j].project(xi.row(j)).transpose();
                const Eigen::MatrixXd avg = w.entries() * projected;
                for (int i = 0; i < n; ++i) next.row(i) = sets[i].project(avg.row(i)).transpose();
                break;
            }
            case ConstrainedVariant::tempo:
                for (int i = 0; i < n; ++i) {
                    Eigen::VectorXd acc = w(i, i) * sets[i].project(xi.row(i));
                    for (int j = 0; j < n; ++j)
                        if (j != i) acc += w(i, j) * xi.row(j).transpose();
                    next.row(i) = acc.transpose();
                }
                break;
        }

        ConstrainedState state;
        state.xi = xi;
        state.eta = eta;
        state.e = next - eta;
        state.dist.resize(n);
        for (int i = 0; i < n; ++i) state.dist[i] = sets[i].distance(xi.row(i));
        states.push_back(std::move(state));
        xi = std::move(next);
    }
    ConstrainedState last;
    last.xi = xi;
    last.dist.resize(n);
    for (int i = 0; i < n; ++i) last.dist[i] = sets[i].distance(xi.row(i));
    states.push_back(std::move(last));
    return states;
}

ConstrainedReport constrained_consensus_report(const std::vector<ConstrainedState>& states,
                                               const std::vector<ConvexSet>& sets, double tol,
                                               long tail_window) {
    const long K = static_cast<long>(states.size()) - 1;
    if (K < 2 * tail_window) throw HorizonTooShort("need K >= 2*tail_window");
    const int n = static_cast<int>(states.front().xi.rows());

    ConstrainedReport report;
    report.tol = tol;
    report.tail_spread = 0.0;
    report.tail_max_error = 0.0;
    report.tail_max_dist = 0.0;
    for (long k = K - tail_window; k <= K; ++k) {
        const auto& st = states[static_cast<std::size_t>(k)];
        double spread = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                spread = std::max(spread, (st.xi.row(i) - st.xi.row(j)).norm());
        report.tail_spread = std::max(report.tail_spread, spread);
        if (st.e)
            for (int i = 0; i < n; ++i)
                report.tail_max_error = std::max(report.tail_max_error, st.e->row(i).norm());
        report.tail_max_dist = std::max(report.tail_max_dist, st.dist.maxCoeff());
    }
    report.consensus = report.tail_spread <= tol;
    report.limit = states.back().xi.colwise().mean();
    report.dist_to_sets.resize(static_cast<int>(sets.size()));
    for (std::size_t s = 0; s < sets.size(); ++s)
        report.dist_to_sets[static_cast<int>(s)] = sets[s].distance(report.limit);
    report.limit_feasible = report.dist_to_sets.maxCoeff() <= tol;
    return report;
}

}  // namespace dichotomy
