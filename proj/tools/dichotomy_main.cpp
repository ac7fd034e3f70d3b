#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "dichotomy/graph.hpp"
#include "dichotomy/scenario.hpp"

using namespace dichotomy;

namespace {

int cmd_run(const std::string& scenario_path, const std::string& out_dir) {
    const Scenario s = load_scenario(scenario_path);
    const RunReport report = run_scenario(s, out_dir);
    std::cout << "scenario:       " << report.scenario << "\n"
              << "classification: " << report.classification << "\n";
    if (report.consensus_value)
        std::cout << "limit:          " << io::fmt17(*report.consensus_value) << "\n";
    for (const auto& v : report.verdicts)
        std::cout << "check " << v.check << ": " << (v.holds ? "holds" : "fails") << "\n";
    std::cout << "artifacts under " << out_dir << "\n"
              << (report.ok ? "OK" : "MISMATCH") << "\n";
    return report.ok ? 0 : 1;
}

int cmd_sweep(const std::string& dir, const std::string& out_dir, int jobs) {
    const auto rows = sweep(dir, out_dir, jobs);
    bool all_ok = true;
    for (const auto& row : rows) {
        std::cout << row.name << ": " << row.status;
        if (!row.classification.empty()) std::cout << " (" << row.classification << ")";
        if (!row.error.empty()) std::cout << " — " << row.error;
        std::cout << "\n";
        all_ok = all_ok && row.status == "ok";
    }
    std::cout << rows.size() << " scenario(s); summary at " << out_dir << "/summary.csv\n";
    return all_ok ? 0 : 1;
}

int cmd_check_matrix(const std::string& matrix_path, double eps,
                     const std::string& export_graph) {
    const StochasticMatrix w =
        StochasticMatrix::validated(io::matrix_from_json(io::load_json_file(matrix_path), "matrix"));
    const Theorem1Result res = check_theorem1_static(w);
    const PrimitivityResult prim = is_primitive(w);
    std::cout << "n: " << w.size() << "\n"
              << "dichotomic: " << (res.dichotomic ? "true" : "false") << "\n"
              << "consensus_dichotomic: " << (res.consensus_dichotomic ? "true" : "false") << "\n"
              << "primitive: " << (prim.primitive ? "true" : "false") << "\n";
    if (prim.witness) std::cout << "witness_power: " << *prim.witness << "\n";
    if (eps > 0.0)
        std::cout << "in_S_eps(" << io::fmt17(eps) << "): "
                  << (in_S_eps(w, eps) ? "true" : "false") << "\n";
    if (!export_graph.empty()) {
        std::ostringstream os;
        build_graph(w, 0.0, matrix_path).write_edge_list(os);
        io::write_text_file(export_graph, os.str());
        std::cout << "graph edge list written to " << export_graph << "\n";
    }
    return 0;
}

int cmd_project(const std::string& set_path, const std::string& point_csv) {
    const ConvexSet set = io::set_from_json(io::load_json_file(set_path), "set");
    std::vector<double> coords;
    std::stringstream ss(point_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
    Eigen::VectorXd x(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) x[static_cast<int>(i)] = coords[i];
    const Eigen::VectorXd p = set.project(x);
    for (int i = 0; i < p.size(); ++i) std::cout << (i ? "," : "") << io::fmt17(p[i]);
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consensus-dichotomy toolkit: recurrent averaging inequalities, "
                 "signed and constrained consensus protocols, substochastic stability"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", dir, matrix_path, set_path, point_csv,
                export_graph;
    double eps = 0.0;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "run one scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON")->required();
    run->add_option("--out", out_dir, "output directory");

    auto* sw = app.add_subcommand("sweep", "run every scenario in a directory");
    sw->add_option("dir", dir, "directory of scenario JSON files")->required();
    sw->add_option("--out", out_dir, "output directory");
    sw->add_option("--jobs", jobs, "parallel scenarios")->check(CLI::PositiveNumber);

    auto* cm = app.add_subcommand("check-matrix", "classify a stochastic matrix");
    cm->add_option("matrix", matrix_path, "matrix JSON")->required();
    cm->add_option("--eps", eps, "also report S_eps membership");
    cm->add_option("--export-graph", export_graph, "write the 0-threshold edge list");

    auto* pr = app.add_subcommand("project", "project a point onto a convex set");
    pr->add_option("--set", set_path, "set JSON")->required();
    pr->add_option("--point", point_csv, "comma-separated coordinates")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, out_dir);
        if (sw->parsed()) return cmd_sweep(dir, out_dir, jobs);
        if (cm->parsed()) return cmd_check_matrix(matrix_path, eps, export_graph);
        if (pr->parsed()) return cmd_project(set_path, point_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
