#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "dichotomy/constrained.hpp"
#include "dichotomy/trajectory.hpp"

namespace dichotomy::io {

/// 17 significant digits: enough to round-trip a double exactly.
std::string fmt17(double v);

/// Matrix literal {"n": int, "rows": [[...], ...]}.
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

/// Sequence literal {"kind": "...", ...}; kinds constant | periodic |
/// scripted | seeded-random. Seeded-random fields: n, seed, delta and
/// pattern {rule: full|bernoulli|ring-union, p, window, extra_prob}.
MatrixSequence sequence_from_json(const nlohmann::json& j, const std::string& field);
/// Same kinds with signed entries; seeded-random adds sign_flip_prob.
SignedMatrixSequence signed_sequence_from_json(const nlohmann::json& j, const std::string& field);

/// Set literal {"kind": box|ball|halfspace|hyperplane|affine, ...}.
ConvexSet set_from_json(const nlohmann::json& j, const std::string& field);

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const std::string& field);

/// "k,x_1,...,x_n" rows at 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// "k,y_1..y_n,j_1..j_n" with 1-based original indices in the j columns.
void write_sorted_view_csv(std::ostream& os, const SortedTrajectoryView& view);

/// One block of d columns per agent, then per-agent ||e_i|| and dist_i.
void write_constrained_csv(std::ostream& os, const std::vector<ConstrainedState>& states);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dichotomy::io
