#include "dichotomy/checks.hpp"

#include <cmath>

#include "dichotomy/graph.hpp"

namespace dichotomy {

using nlohmann::json;

void CheckerConfig::validate() const {
    if (eps <= 0.0) throw PreconditionViolated("checker eps must be > 0");
    if (delta <= 0.0) throw PreconditionViolated("checker delta must be > 0");
    if (window_B < 1) throw PreconditionViolated("window B must be >= 1");
    if (horizon_K < 1 || search_cap_M <= horizon_K)
        throw PreconditionViolated("need search_cap_M > horizon_K >= 1");
}

json Verdict::to_json() const {
    return json{{"check", check},
                {"holds", holds},
                {"horizon", horizon},
                {"witnesses", witnesses},
                {"truncation_note", truncation_note}};
}

Theorem1Result check_theorem1_static(const StochasticMatrix& w) {
    const ThresholdGraph g = build_graph(w, 0.0);
    const SccDecomposition scc = strong_components(g);
    bool all_aperiodic = true;
    for (int p : scc.periods) all_aperiodic = all_aperiodic && p == 1;
    const bool isolated = scc.condensation_arcs.empty();
    Theorem1Result res;
    res.dichotomic = isolated && all_aperiodic;
    res.consensus_dichotomic = scc.strongly_connected() && all_aperiodic;
    return res;
}

Trajectory construct_thm1_counterexample(const StochasticMatrix& w, int i, int j, long K) {
    const int n = w.size();
    if (i < 0 || i >= n || j < 0 || j >= n) throw DimensionMismatch("node index out of range");
    if (w(i, j) <= 0.0)
        throw PreconditionViolated("counterexample needs w_ij > 0");

    const ThresholdGraph g = build_graph(w, 0.0);
    std::vector<char> in_J(n, 0);
    {
        std::vector<int> stack{j};
        in_J[j] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : g.out[u])
                if (!in_J[v]) {
                    in_J[v] = 1;
                    stack.push_back(v);
                }
        }
    }
    if (in_J[i])
        throw PreconditionViolated("node i is reachable from j; the crossing-arc construction "
                                   "needs i outside j's strong component");

    const double M = std::ceil(2.0 / w(i, j));
    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(K) + 1);
    for (long k = 0; k <= K; ++k) {
        Eigen::VectorXd x(n);
        for (int r = 0; r < n; ++r) {
            if (r == i)
                x[r] = (k % 2 == 0) ? 1.0 : -1.0;
            else
                x[r] = in_J[r] ? M : -1.0;
        }
        states.push_back(std::move(x));
    }
    Trajectory traj(TrajectoryKind::inequality, std::move(states),
                    std::make_shared<MatrixSequence>(MatrixSequence::constant(w)));
    if (traj.max_inequality_violation() > kTrajectoryTol)
        throw Error("internal: constructed counterexample violates the inequality");
    return traj;
}

Trajectory construct_periodic_counterexample(const StochasticMatrix& w, long K) {
    const ThresholdGraph g = build_graph(w, 0.0);
    const SccDecomposition scc = strong_components(g);
    if (!scc.condensation_arcs.empty())
        throw PreconditionViolated("components are not isolated; use the crossing-arc "
                                   "construction instead");
    int target = -1;
    for (std::size_t c = 0; c < scc.components.size(); ++c)
        if (scc.periods[c] >= 2) {
            target = static_cast<int>(c);
            break;
        }
    if (target < 0) throw PreconditionViolated("no component of period >= 2");

    const auto& comp = scc.components[static_cast<std::size_t>(target)];
    const int p = scc.periods[static_cast<std::size_t>(target)];

    // Cyclic classes via BFS levels mod p; arcs (u,v) inside the component
    // satisfy level(v) = level(u) + 1 (mod p), so values assigned per class
    // rotate under x(k+1) = W x(k).
    const int n = w.size();
    std::vector<int> level(n, -1);
    std::vector<char> inside(n, 0);
    for (int v : comp) inside[v] = 1;
    std::vector<int> queue{comp.front()};
    level[comp.front()] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : g.out[u])
            if (inside[v] && level[v] == -1) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
    }

    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(K) + 1);
    for (long k = 0; k <= K; ++k) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (int v : comp) {
            const int cls = ((level[v] + k) % p + p) % p;
            x[v] = cls == 0 ? 1.0 : -1.0;
        }
        states.push_back(std::move(x));
    }
    Trajectory traj(TrajectoryKind::inequality, std::move(states),
                    std::make_shared<MatrixSequence>(MatrixSequence::constant(w)));
    if (traj.max_inequality_violation() > kTrajectoryTol)
        throw Error("internal: rotating counterexample violates the inequality");
    return traj;
}

Verdict check_theorem2_condition(const MatrixSequence& seq, const CheckerConfig& cfg) {
    cfg.validate();
    Verdict verdict;
    verdict.check = "theorem2_condition";
    verdict.horizon = cfg.horizon_K;
    verdict.truncation_note =
        "quantifier 'for any k>=0' truncated to k<=" + std::to_string(cfg.horizon_K) +
        "; existential m capped at " + std::to_string(cfg.search_cap_M) +
        " (a miss is not a disproof)";
    verdict.holds = true;
    for (long k = 0; k <= cfg.horizon_K; ++k) {
        Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(seq.size(), seq.size());
        long found = -1;
        for (long m = k + 1; m <= cfg.search_cap_M; ++m) {
            phi = seq.at(m - 1).entries() * phi;
            if (in_S_eps(StochasticMatrix::unchecked(phi), cfg.eps)) {
                found = m;
                break;
            }
        }
        if (found < 0) {
            verdict.holds = false;
            verdict.witnesses.push_back(
                json{{"k", k}, {"found", false}, {"cap", cfg.search_cap_M}});
        } else {
            verdict.witnesses.push_back(json{{"k", k}, {"m", found}});
        }
    }
    return verdict;
}

Verdict check_assumption1(const MatrixSequence& seq, double delta, long horizon_K) {
    if (delta <= 0.0) throw PreconditionViolated("delta must be > 0");
    Verdict verdict;
    verdict.check = "assumption1";
    verdict.horizon = horizon_K;
    verdict.truncation_note =
        "clauses checked for k<=" + std::to_string(horizon_K) + " only";
    verdict.holds = true;
    for (long k = 0; k <= horizon_K; ++k) {
        const StochasticMatrix w = seq.at(k);
        for (int i = 0; i < w.size(); ++i) {
            for (int j = 0; j < w.size(); ++j) {
                const double v = w(i, j);
                const bool ok = (i == j) ? v >= delta : (v == 0.0 || (v >= delta && v <= 1.0));
                if (!ok) {
                    verdict.holds = false;
                    verdict.witnesses.push_back(
                        json{{"k", k}, {"i", i}, {"j", j}, {"value", v}});
                    return verdict;
                }
            }
        }
    }
    verdict.witnesses.push_back(json{{"all_steps_ok", true}});
    return verdict;
}

Verdict check_assumption2(const MatrixSequence& seq, long B, long horizon_K) {
    if (B < 1) throw PreconditionViolated("window B must be >= 1");
    Verdict verdict;
    verdict.check = "assumption2";
    verdict.horizon = horizon_K;
    verdict.truncation_note =
        "windows [k, k+" + std::to_string(B) + ") checked for k<=" + std::to_string(horizon_K);
    verdict.holds = true;
    for (long k = 0; k <= horizon_K; ++k) {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(seq.size(), seq.size());
        for (long s = k; s < k + B; ++s) sum += seq.at(s).entries();
        if (!strong_components(build_graph(sum, 0.0)).strongly_connected()) {
            verdict.holds = false;
            verdict.witnesses.push_back(json{{"k", k}, {"window_graph_connected", false}});
            return verdict;
        }
    }
    verdict.witnesses.push_back(json{{"all_windows_connected", true}});
    return verdict;
}

Verdict check_assumption3(const MatrixSequence& seq, long horizon_K, double mass_floor) {
    if (mass_floor <= 0.0) throw PreconditionViolated("mass_floor must be > 0");
    Verdict verdict;
    verdict.check = "assumption3";
    verdict.horizon = horizon_K;
    verdict.truncation_note =
        "E_inf approximated by arcs with partial weight sums over k<=" +
        std::to_string(horizon_K) + " reaching " + std::to_string(mass_floor) +
        "; divergence of the true series is undecidable from a finite prefix";
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(seq.size(), seq.size());
    for (long k = 0; k <= horizon_K; ++k) mass += seq.at(k).entries();
    const ThresholdGraph g = build_graph(mass, mass_floor);
    verdict.holds = strong_components(g).strongly_connected();
    verdict.witnesses.push_back(json{{"arcs_in_E_inf_proxy", g.arc_count()}});
    return verdict;
}

Verdict check_corollary1_bound(const MatrixSequence& seq, double delta, long B, long horizon_K) {
    const Verdict a1 = check_assumption1(seq, delta, horizon_K + B - 1);
    if (!a1.holds)
        throw PreconditionViolated("assumption 1 fails on the horizon: " + a1.witnesses.front().dump());
    const Verdict a2 = check_assumption2(seq, B, horizon_K);
    if (!a2.holds)
        throw PreconditionViolated("assumption 2 fails on the horizon: " + a2.witnesses.front().dump());

    Verdict verdict;
    verdict.check = "corollary1_bound";
    verdict.horizon = horizon_K;
    verdict.truncation_note = "bound asserted for k<=" + std::to_string(horizon_K);
    verdict.holds = true;
    // The bound phi_ij >= delta^B is tight; allow one part in 1e12 for the
    // rounding of B-fold products against pow().
    const double eps = std::pow(delta, static_cast<double>(B)) * (1.0 - 1e-12);
    for (long k = 0; k <= horizon_K; ++k) {
        const StochasticMatrix phi = evolutionary_matrix(seq, k, k + B);
        if (!in_S_eps(phi, eps)) {
            verdict.holds = false;
            verdict.witnesses.push_back(json{{"k", k}, {"in_S_delta_pow_B", false}});
            return verdict;
        }
        verdict.witnesses.push_back(json{{"k", k}, {"m", k + B}});
    }
    return verdict;
}

Verdict check_corollary2(const MatrixSequence& seq, const StochasticMatrix& w0, long horizon_K,
                         long min_count, const CheckerConfig& thm2_cfg) {
    const PrimitivityResult prim = is_primitive(w0);
    if (!prim.primitive) throw NotPrimitive("W0 is not primitive");
    if (w0.size() != seq.size()) throw DimensionMismatch("W0 size does not match sequence");

    Verdict verdict;
    verdict.check = "corollary2";
    verdict.horizon = horizon_K;
    verdict.truncation_note =
        "commutation and occurrence clauses checked for k<=" + std::to_string(horizon_K) +
        "; the set K0 = {k : W(k)=W0} must be infinite, which a prefix cannot certify";

    long occurrences = 0;
    for (long k = 0; k <= horizon_K; ++k) {
        const StochasticMatrix w = seq.at(k);
        if (w.approx_equal(w0, 1e-12)) {
            ++occurrences;
            continue;
        }
        const Eigen::MatrixXd commutator =
            w0.entries() * w.entries() - w.entries() * w0.entries();
        if (commutator.cwiseAbs().maxCoeff() > 1e-10) {
            verdict.holds = false;
            verdict.witnesses.push_back(
                json{{"k", k}, {"commutes", false},
                     {"max_commutator_entry", commutator.cwiseAbs().maxCoeff()}});
            return verdict;
        }
    }
    if (occurrences < min_count) {
        verdict.holds = false;
        verdict.witnesses.push_back(
            json{{"occurrences", occurrences}, {"required", min_count}});
        return verdict;
    }

    const Verdict thm2 = check_theorem2_condition(seq, thm2_cfg);
    verdict.holds = thm2.holds;
    verdict.witnesses.push_back(json{{"occurrences", occurrences},
                                     {"w0_witness_power", *prim.witness},
                                     {"theorem2_condition_holds", thm2.holds}});
    return verdict;
}

bool check_lemma_contraction(const Trajectory& traj, long k, long m, double eps, int i) {
    const int n = traj.agents();
    if (i < 1 || i >= n) throw PreconditionViolated("sorted index i must satisfy 1 <= i < n");
    if (k < 0 || m <= k || m > traj.steps())
        throw PreconditionViolated("need 0 <= k < m <= K");
    if (!traj.sequence()) throw PreconditionViolated("trajectory has no generating sequence");
    const StochasticMatrix phi = evolutionary_matrix(*traj.sequence(), k, m);
    if (!in_S_eps(phi, eps))
        throw PreconditionViolated("Phi(m,k) is not in S_eps for the requested eps");

    const SortedTrajectoryView view = sorted_view(traj);
    const double y_n_k = view.sorted(k)[n - 1];
    const double y_i_k = view.sorted(k)[i - 1];
    const double y_ip1_m = view.sorted(m)[i];
    const double slack = (1.0 - eps) * y_n_k + eps * y_i_k - y_ip1_m;
    return slack >= -1e-12;
}

long find_bidirectional_m(const MatrixSequence& seq, const Trajectory& traj, long k, int i,
                          long cap, double delta) {
    const int n = seq.size();
    if (i < 1 || i >= n) throw PreconditionViolated("sorted index i must satisfy 1 <= i < n");
    if (cap <= k) throw PreconditionViolated("cap must exceed k");
    if (cap > traj.steps())
        throw HorizonTooShort("trajectory shorter than the search cap");
    for (long s = 0; s <= cap; ++s) {
        const StochasticMatrix w = seq.at(s);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if ((w(a, b) > 0.0) != (w(b, a) > 0.0))
                    throw NotBidirectional(s, a, b);
    }

    const SortedTrajectoryView view = sorted_view(traj);
    std::vector<char> in_J(n, 0);
    for (int v : view.J_set(k, i)) in_J[v] = 1;

    long m = -1;
    for (long s = k; s < cap; ++s) {
        const StochasticMatrix w = seq.at(s);
        bool crossing = false;
        for (int a = 0; a < n && !crossing; ++a) {
            if (!in_J[a]) continue;
            for (int b = 0; b < n; ++b)
                if (!in_J[b] && w(a, b) > 0.0) {
                    crossing = true;
                    break;
                }
        }
        if (crossing) {
            m = s + 1;
            break;
        }
    }
    if (m < 0)
        throw NotFoundWithinCap("no arc crosses J_i(k) within the cap");

    const double y_n_k = view.sorted(k)[n - 1];
    const double y_i_k = view.sorted(k)[i - 1];
    const double y_ip1_m = view.sorted(m)[i];
    if (y_ip1_m > (1.0 - delta) * y_n_k + delta * y_i_k + 1e-12)
        throw Error("internal: bidirectional contraction bound violated at the found m; "
                    "check the Assumption 1/3 preconditions");
    return m;
}

}  // namespace dichotomy
