#include "dichotomy/spectral.hpp"

#include <cmath>
#include <deque>

#include "dichotomy/graph.hpp"

namespace dichotomy {

namespace {

double irreducible_rho(const Eigen::MatrixXd& a, int period, int max_iter, double tol) {
    const int n = static_cast<int>(a.rows());
    const int p = std::max(period, 1);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    std::deque<double> growth;  // per-step infinity-norm growth factors
    double prev_estimate = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        x = a * x;
        const double norm = x.lpNorm<Eigen::Infinity>();
        if (norm == 0.0) return 0.0;
        growth.push_back(norm);
        x /= norm;
        if (static_cast<int>(growth.size()) > 2 * p) growth.pop_front();
        if (static_cast<int>(growth.size()) == 2 * p) {
            double logsum = 0.0;
            for (int s = p; s < 2 * p; ++s) logsum += std::log(growth[s]);
            const double estimate = std::exp(logsum / p);
            if (prev_estimate >= 0.0 && std::abs(estimate - prev_estimate) <= tol)
                return estimate;
            prev_estimate = estimate;
        }
    }
    throw NoConvergence(max_iter);
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& a, int max_iter, double tol) {
    if (a.rows() != a.cols()) throw DimensionMismatch("spectral radius of non-square matrix");
    if (a.rows() == 0) return 0.0;
    if (a.minCoeff() < 0.0)
        throw PreconditionViolated("spectral_radius expects a nonnegative matrix");

    const ThresholdGraph g = build_graph(a, 0.0);
    const SccDecomposition scc = strong_components(g);
    double rho = 0.0;
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
        const auto& comp = scc.components[c];
        if (comp.size() == 1) {
            const int v = comp.front();
            rho = std::max(rho, a(v, v));
            continue;
        }
        Eigen::MatrixXd block(comp.size(), comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = 0; j < comp.size(); ++j) block(i, j) = a(comp[i], comp[j]);
        rho = std::max(rho, irreducible_rho(block, scc.periods[c], max_iter, tol));
    }
    return rho;
}

double spectral_radius(const SubstochasticMatrix& a, int max_iter, double tol) {
    return spectral_radius(a.entries(), max_iter, tol);
}

}  // namespace dichotomy
