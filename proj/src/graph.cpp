#include "dichotomy/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

namespace dichotomy {

bool ThresholdGraph::has_arc(int i, int j) const {
    return std::binary_search(out[i].begin(), out[i].end(), j);
}

std::size_t ThresholdGraph::arc_count() const {
    std::size_t c = 0;
    for (const auto& row : out) c += row.size();
    return c;
}

void ThresholdGraph::write_edge_list(std::ostream& os) const {
    for (int i = 0; i < n; ++i)
        for (int j : out[i]) os << i << ' ' << j << '\n';
}

ThresholdGraph build_graph(const Eigen::MatrixXd& entries, double eps, std::string provenance) {
    if (entries.rows() != entries.cols())
        throw DimensionMismatch("graph source matrix is not square");
    if (eps < 0.0) throw PreconditionViolated("threshold eps must be >= 0");
    ThresholdGraph g;
    g.n = static_cast<int>(entries.rows());
    g.eps = eps;
    g.provenance = std::move(provenance);
    g.out.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            const double a = std::abs(entries(i, j));
            const bool arc = eps > 0.0 ? a >= eps : a > 0.0;
            if (arc) g.out[i].push_back(j);
        }
    }
    return g;
}

ThresholdGraph build_graph(const StochasticMatrix& w, double eps, std::string provenance) {
    return build_graph(w.entries(), eps, std::move(provenance));
}
ThresholdGraph build_graph(const SubstochasticMatrix& a, double eps, std::string provenance) {
    return build_graph(a.entries(), eps, std::move(provenance));
}
ThresholdGraph build_graph(const SignedInfluenceMatrix& a, double eps, std::string provenance) {
    return build_graph(a.entries(), eps, std::move(provenance));
}

int SccDecomposition::component_of(int node) const {
    for (std::size_t c = 0; c < components.size(); ++c)
        if (std::binary_search(components[c].begin(), components[c].end(), node))
            return static_cast<int>(c);
    return -1;
}

namespace {

// Tarjan with an explicit stack.
std::vector<std::vector<int>> tarjan_components(const ThresholdGraph& g) {
    const int n = g.n;
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < g.out[f.v].size()) {
                const int w = g.out[f.v][f.next++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                const int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

int bfs_level_gcd(const ThresholdGraph& g, const std::vector<int>& comp) {
    std::vector<int> level(g.n, -1);
    std::vector<char> inside(g.n, 0);
    for (int v : comp) inside[v] = 1;
    std::deque<int> queue{comp.front()};
    level[comp.front()] = 0;
    int period = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : g.out[u]) {
            if (!inside[v]) continue;
            if (level[v] == -1) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    for (int u : comp)
        for (int v : g.out[u])
            if (inside[v]) period = std::gcd(period, std::abs(level[u] + 1 - level[v]));
    return period;
}

}  // namespace

SccDecomposition strong_components(const ThresholdGraph& g) {
    SccDecomposition scc;
    scc.components = tarjan_components(g);

    std::vector<int> comp_of(g.n, -1);
    for (std::size_t c = 0; c < scc.components.size(); ++c)
        for (int v : scc.components[c]) comp_of[v] = static_cast<int>(c);

    std::set<std::pair<int, int>> arcs;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.out[u])
            if (comp_of[u] != comp_of[v]) arcs.insert({comp_of[u], comp_of[v]});
    scc.condensation_arcs.assign(arcs.begin(), arcs.end());

    scc.periods.reserve(scc.components.size());
    for (const auto& comp : scc.components) {
        if (comp.size() == 1 && !g.has_arc(comp.front(), comp.front()))
            scc.periods.push_back(0);
        else
            scc.periods.push_back(bfs_level_gcd(g, comp));
    }
    return scc;
}

int component_period(const ThresholdGraph& g, const std::vector<int>& comp) {
    if (comp.empty()) throw PreconditionViolated("empty component");
    if (comp.size() == 1 && !g.has_arc(comp.front(), comp.front()))
        throw NoCycle("singleton component without self-loop has no cycle");
    return bfs_level_gcd(g, comp);
}

bool components_isolated(const ThresholdGraph& g) {
    const SccDecomposition scc = strong_components(g);
    const bool by_condensation = scc.condensation_arcs.empty();

    // Harary: all components isolated iff every arc lies on a cycle; arc (u,v)
    // lies on a cycle iff u and v share a component.
    std::vector<int> comp_of(g.n, -1);
    for (std::size_t c = 0; c < scc.components.size(); ++c)
        for (int v : scc.components[c]) comp_of[v] = static_cast<int>(c);
    bool by_cycles = true;
    for (int u = 0; u < g.n && by_cycles; ++u)
        for (int v : g.out[u])
            if (comp_of[u] != comp_of[v]) {
                by_cycles = false;
                break;
            }

    if (by_condensation != by_cycles)
        throw Error("internal: isolation tests disagree");  // logically impossible
    return by_condensation;
}

namespace {

// Positivity pattern of W^d tracked as boolean rows; exact for nonnegative
// matrices (no cancellation).
std::vector<std::vector<bool>> bool_multiply(const std::vector<std::vector<bool>>& a,
                                             const std::vector<std::vector<bool>>& b) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a[i][k])
                for (int j = 0; j < n; ++j)
                    if (b[k][j]) c[i][j] = true;
    return c;
}

bool all_true(const std::vector<std::vector<bool>>& a) {
    for (const auto& row : a)
        for (bool v : row)
            if (!v) return false;
    return true;
}

}  // namespace

PrimitivityResult is_primitive(const StochasticMatrix& w) {
    const ThresholdGraph g = build_graph(w, 0.0);
    const SccDecomposition scc = strong_components(g);
    PrimitivityResult res;
    res.primitive = scc.strongly_connected() && scc.periods.front() == 1;
    if (!res.primitive) return res;

    const int n = w.size();
    const int wielandt = n * n - 2 * n + 2;
    std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j : g.out[i]) base[i][j] = true;
    auto power = base;
    for (int d = 1; d <= wielandt; ++d) {
        if (d > 1) power = bool_multiply(power, base);
        if (all_true(power)) {
            res.witness = d;
            return res;
        }
    }
    throw Error("internal: primitive matrix without positive power within the Wielandt bound");
}

bool in_S_eps(const StochasticMatrix& w, double eps) {
    if (eps <= 0.0) throw PreconditionViolated("S_eps requires eps > 0");
    for (int i = 0; i < w.size(); ++i)
        if (w(i, i) < eps) return false;
    return strong_components(build_graph(w, eps)).strongly_connected();
}

bool reaches_set(const ThresholdGraph& g, int from, const std::vector<int>& targets) {
    std::vector<char> is_target(g.n, 0), seen(g.n, 0);
    for (int t : targets) is_target[t] = 1;
    std::deque<int> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (is_target[u]) return true;
        for (int v : g.out[u])
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    }
    return false;
}

}  // namespace dichotomy
