#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dichotomy/matrix.hpp"

namespace dichotomy {

/// Directed graph induced by a matrix at a threshold.
/// eps = 0 keeps arcs with nonzero entries (the graph of the matrix);
/// eps > 0 keeps arcs with entries >= eps. Arc (i,j) means w_ij clears the
/// rule: i is influenced by j, walks follow i -> j.
struct ThresholdGraph {
    int n = 0;
    double eps = 0.0;
    std::vector<std::vector<int>> out;  // out[i]: successors of i, ascending
    std::string provenance;

    bool has_arc(int i, int j) const;
    std::size_t arc_count() const;

    /// Edge-list export, one "i j" per line, 0-based.
    void write_edge_list(std::ostream& os) const;
};

ThresholdGraph build_graph(const Eigen::MatrixXd& entries, double eps,
                           std::string provenance = "");
ThresholdGraph build_graph(const StochasticMatrix& w, double eps, std::string provenance = "");
ThresholdGraph build_graph(const SubstochasticMatrix& a, double eps, std::string provenance = "");
/// Signed matrices use |a_ij| against the threshold rule.
ThresholdGraph build_graph(const SignedInfluenceMatrix& a, double eps,
                           std::string provenance = "");

/// Strongly connected components with condensation arcs and per-component
/// periods. Components are sorted by smallest member; nodes ascending.
/// period[c] is the gcd of cycle lengths inside component c; a singleton
/// without a self-loop has period 0 (no cycle).
struct SccDecomposition {
    std::vector<std::vector<int>> components;
    std::vector<std::pair<int, int>> condensation_arcs;  // (from component, to component)
    std::vector<int> periods;

    int component_of(int node) const;  // linear scan; fine at desk scale

    bool strongly_connected() const { return components.size() == 1; }
};

SccDecomposition strong_components(const ThresholdGraph& g);

/// gcd of cycle lengths of a strongly connected node set, via BFS levelling.
/// Throws NoCycle for a singleton without a self-loop.
int component_period(const ThresholdGraph& g, const std::vector<int>& comp);

/// True iff the condensation has no arcs; cross-checked against the
/// every-arc-on-a-cycle formulation (both routes must agree).
bool components_isolated(const ThresholdGraph& g);

struct PrimitivityResult {
    bool primitive = false;
    /// Smallest d with W^d entrywise positive, bounded by n^2 - 2n + 2.
    std::optional<int> witness;
};

PrimitivityResult is_primitive(const StochasticMatrix& w);

/// S_eps membership: diagonal >= eps and the eps-threshold graph strongly
/// connected. Requires eps > 0.
bool in_S_eps(const StochasticMatrix& w, double eps);

/// True iff `from` is in `targets` or some walk from it reaches `targets`.
bool reaches_set(const ThresholdGraph& g, int from, const std::vector<int>& targets);

}  // namespace dichotomy
