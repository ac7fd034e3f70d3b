#pragma once

#include <nlohmann/json.hpp>

#include "dichotomy/protocols.hpp"

namespace dichotomy {

/// Finite-horizon parameters for the checkers. The "for any k" clauses of the
/// theorems are truncated to k <= horizon_K; existential searches for m are
/// capped at search_cap_M.
struct CheckerConfig {
    double eps = 0.0;      // S_eps threshold
    double delta = 0.0;    // uniform positivity floor
    long window_B = 1;     // joint-connectivity window
    long horizon_K = 1;    // truncation of "for any k"
    long search_cap_M = 0; // cap on m when hunting Phi(m,k) in S_eps

    void validate() const;
    static long default_cap(int n, long horizon) { return std::max(horizon + 1, 50L * n); }
};

/// Outcome of a finite-horizon check. `witnesses` carries per-k evidence
/// (the m found, or the violating entry); `truncation_note` states the finite
/// horizon that stands in for an unbounded quantifier.
struct Verdict {
    std::string check;
    bool holds = false;
    long horizon = 0;
    std::vector<nlohmann::json> witnesses;
    std::string truncation_note;

    nlohmann::json to_json() const;
};

struct Theorem1Result {
    bool dichotomic = false;
    bool consensus_dichotomic = false;
};

/// Static dichotomy classifier: dichotomic iff all strong components of the
/// zero-threshold graph are isolated and aperiodic; consensus dichotomic iff
/// the graph is strongly connected and aperiodic (primitivity).
Theorem1Result check_theorem1_static(const StochasticMatrix& w);

/// Bounded non-convergent solution of x(k+1) <= W x(k) built from an arc
/// (i,j) that leaves the strong component of j: x_i alternates +-1, nodes
/// reachable from j sit at M = ceil(2/w_ij), everyone else at -1. Requires
/// w_ij > 0 and i not reachable from j (PreconditionViolated otherwise).
/// The returned trajectory is verified pointwise against the inequality.
Trajectory construct_thm1_counterexample(const StochasticMatrix& w, int i, int j, long K = 1000);

/// Bounded non-convergent equality solution for a graph whose strong
/// components are isolated but contain a component of period >= 2: the values
/// rotate along the component's cyclic classes. Complements the arc-based
/// construction, whose precondition is unsatisfiable in this case.
Trajectory construct_periodic_counterexample(const StochasticMatrix& w, long K = 1000);

/// For each k <= horizon_K, search m in (k, search_cap_M] with
/// Phi(m,k) in S_eps. A miss is reported as not-found-within-cap evidence,
/// never as a disproof.
Verdict check_theorem2_condition(const MatrixSequence& seq, const CheckerConfig& cfg);

/// Uniform positivity: diagonal >= delta and every positive weight >= delta,
/// for all k <= horizon_K.
Verdict check_assumption1(const MatrixSequence& seq, double delta, long horizon_K);

/// Repeated joint strong connectivity: the window-sum graph
/// W(k)+...+W(k+B-1) is strongly connected for all k <= horizon_K.
Verdict check_assumption2(const MatrixSequence& seq, long B, long horizon_K);

/// Infinite joint strong connectivity, finite-horizon proxy: arcs whose
/// partial weight sums over k <= horizon_K reach mass_floor form the
/// E_inf approximation; the verdict tests its strong connectivity and
/// carries an explicit truncation note (divergence is undecidable from a
/// finite prefix).
Verdict check_assumption3(const MatrixSequence& seq, long horizon_K, double mass_floor = 1.0);

/// Constructive content of the B-window bound: under Assumptions 1 and 2,
/// Phi(k+B,k) in S_{delta^B} for every k <= horizon_K. Throws
/// PreconditionViolated when either assumption fails on the horizon.
Verdict check_corollary1_bound(const MatrixSequence& seq, double delta, long B, long horizon_K);

/// Sequences drawn from {W0} and matrices commuting with the primitive W0,
/// with W0 occurring at least min_count times on the horizon; cross-validated
/// by running check_theorem2_condition with eps derived from W0's positive
/// power. Throws NotPrimitive when W0 is not primitive.
Verdict check_corollary2(const MatrixSequence& seq, const StochasticMatrix& w0, long horizon_K,
                         long min_count, const CheckerConfig& thm2_cfg);

/// Sorted-value contraction at a step pair with Phi(m,k) in S_eps:
/// y_{i+1}(m) <= (1-eps) y_n(k) + eps y_i(k), slack >= -1e-12. The index i is
/// the paper's 1-based sorted position, 1 <= i < n. Throws
/// PreconditionViolated when Phi(m,k) is not in S_eps.
bool check_lemma_contraction(const Trajectory& traj, long k, long m, double eps, int i);

/// Bidirectional-case step search: the minimal m <= cap such that some arc
/// crosses between J_i(k) and its complement at step m-1; asserts
/// y_{i+1}(m) <= (1-delta) y_n(k) + delta y_i(k) at the found m.
/// Throws NotBidirectional on the first asymmetric support, and
/// NotFoundWithinCap when no crossing arc appears by the cap.
long find_bidirectional_m(const MatrixSequence& seq, const Trajectory& traj, long k, int i,
                          long cap, double delta);

}  // namespace dichotomy
