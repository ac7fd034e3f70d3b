#include "dichotomy/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dichotomy/errors.hpp"

namespace dichotomy::io {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

const json& require(const json& j, const char* key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(field + "." + key, "missing");
    return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& field) {
    const json& v = require(j, key, field);
    if (!v.is_number()) throw SchemaError(field + "." + key, "expected a number");
    return v.get<double>();
}

}  // namespace

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& field) {
    const int n = static_cast<int>(require_number(j, "n", field));
    const json& rows = require(j, "rows", field);
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw SchemaError(field + ".rows", "expected " + std::to_string(n) + " rows");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SchemaError(field + ".rows[" + std::to_string(i) + "]",
                              "expected " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) {
            const json& v = row.at(static_cast<std::size_t>(c));
            if (!v.is_number())
                throw SchemaError(field + ".rows[" + std::to_string(i) + "]" , "expected numbers");
            m(i, c) = v.get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < m.cols(); ++j2) row.push_back(m(i, j2));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.rows()}, {"rows", std::move(rows)}};
}

namespace {

RandomSequenceSpec random_spec_from_json(const json& j, const std::string& field) {
    RandomSequenceSpec spec;
    spec.n = static_cast<int>(require_number(j, "n", field));
    if (!j.contains("seed")) throw SeedMissing("seeded-random sequence at " + field +
                                               " requires an explicit seed");
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.delta = j.value("delta", 0.0);
    if (j.contains("pattern")) {
        const json& p = j.at("pattern");
        const std::string rule = require(p, "rule", field + ".pattern").get<std::string>();
        if (rule == "full")
            spec.rule = PatternRule::full;
        else if (rule == "bernoulli")
            spec.rule = PatternRule::bernoulli;
        else if (rule == "ring-union")
            spec.rule = PatternRule::ring_union;
        else
            throw SchemaError(field + ".pattern.rule", "unknown rule '" + rule + "'");
        spec.p = p.value("p", 0.5);
        spec.window = p.value("window", 1);
        spec.extra_prob = p.value("extra_prob", 0.0);
    }
    return spec;
}

template <typename Mat, typename Seq, typename Validate>
Seq sequence_from_json_impl(const json& j, const std::string& field, Validate validate,
                            bool signed_kind) {
    const std::string kind = require(j, "kind", field).get<std::string>();
    if (kind == "constant") {
        return Seq::constant(validate(
            matrix_from_json(require(j, "matrix", field), field + ".matrix"), field + ".matrix"));
    }
    if (kind == "periodic") {
        const json& ms = require(j, "matrices", field);
        if (!ms.is_array() || ms.empty())
            throw SchemaError(field + ".matrices", "expected a nonempty array");
        std::vector<Mat> cycle;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const std::string sub = field + ".matrices[" + std::to_string(i) + "]";
            cycle.push_back(validate(matrix_from_json(ms.at(i), sub), sub));
        }
        return Seq::periodic(std::move(cycle));
    }
    if (kind == "scripted") {
        const json& pre = require(j, "prefix", field);
        if (!pre.is_array()) throw SchemaError(field + ".prefix", "expected an array");
        std::vector<Mat> prefix;
        for (std::size_t i = 0; i < pre.size(); ++i) {
            const std::string sub = field + ".prefix[" + std::to_string(i) + "]";
            prefix.push_back(validate(matrix_from_json(pre.at(i), sub), sub));
        }
        const std::string tail_field = field + ".tail";
        return Seq::scripted(std::move(prefix),
                             validate(matrix_from_json(require(j, "tail", field), tail_field),
                                      tail_field));
    }
    if (kind == "seeded-random") {
        const RandomSequenceSpec spec = random_spec_from_json(j, field);
        if constexpr (std::is_same_v<Seq, SignedMatrixSequence>) {
            return Seq::seeded_random(spec, j.value("sign_flip_prob", 0.0));
        } else {
            return Seq::seeded_random(spec);
        }
    }
    throw SchemaError(field + ".kind",
                      std::string("unknown ") + (signed_kind ? "signed " : "") + "sequence kind '" +
                          kind + "'");
}

}  // namespace

MatrixSequence sequence_from_json(const json& j, const std::string& field) {
    auto validate = [](Eigen::MatrixXd m, const std::string& where) {
        try {
            return StochasticMatrix::validated(std::move(m));
        } catch (const Error& e) {
            throw SchemaError(where, e.what());
        }
    };
    return sequence_from_json_impl<StochasticMatrix, MatrixSequence>(j, field, validate, false);
}

SignedMatrixSequence signed_sequence_from_json(const json& j, const std::string& field) {
    auto validate = [](Eigen::MatrixXd m, const std::string& where) {
        try {
            return SignedInfluenceMatrix::validated(std::move(m));
        } catch (const Error& e) {
            throw SchemaError(where, e.what());
        }
    };
    return sequence_from_json_impl<SignedInfluenceMatrix, SignedMatrixSequence>(j, field, validate,
                                                                                true);
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw SchemaError(field, "expected an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j.at(i).is_number()) throw SchemaError(field, "expected numbers");
        v[static_cast<int>(i)] = j.at(i).get<double>();
    }
    return v;
}

ConvexSet set_from_json(const json& j, const std::string& field) {
    const std::string kind = require(j, "kind", field).get<std::string>();
    try {
        if (kind == "box")
            return ConvexSet::box(vector_from_json(require(j, "lo", field), field + ".lo"),
                                  vector_from_json(require(j, "hi", field), field + ".hi"));
        if (kind == "ball")
            return ConvexSet::ball(
                vector_from_json(require(j, "center", field), field + ".center"),
                require_number(j, "radius", field));
        if (kind == "halfspace")
            return ConvexSet::halfspace(vector_from_json(require(j, "a", field), field + ".a"),
                                        require_number(j, "b", field));
        if (kind == "hyperplane")
            return ConvexSet::hyperplane(vector_from_json(require(j, "a", field), field + ".a"),
                                         require_number(j, "b", field));
        if (kind == "affine") {
            const json& rows = require(j, "A", field);
            if (!rows.is_array() || rows.empty())
                throw SchemaError(field + ".A", "expected a nonempty array of rows");
            const Eigen::VectorXd b = vector_from_json(require(j, "b", field), field + ".b");
            Eigen::MatrixXd a(rows.size(), rows.at(0).size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const Eigen::VectorXd row =
                    vector_from_json(rows.at(r), field + ".A[" + std::to_string(r) + "]");
                if (row.size() != a.cols())
                    throw SchemaError(field + ".A", "ragged rows");
                a.row(static_cast<int>(r)) = row.transpose();
            }
            return ConvexSet::affine(std::move(a), b);
        }
    } catch (const DegenerateSet& e) {
        throw SchemaError(field, e.what());
    }
    throw SchemaError(field + ".kind", "unknown set kind '" + kind + "'");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const int n = traj.agents();
    os << 'k';
    for (int i = 1; i <= n; ++i) os << ",x_" << i;
    os << '\n';
    for (long k = 0; k <= traj.steps(); ++k) {
        os << k;
        for (int i = 0; i < n; ++i) os << ',' << fmt17(traj.state(k)[i]);
        os << '\n';
    }
}

void write_sorted_view_csv(std::ostream& os, const SortedTrajectoryView& view) {
    const int n = static_cast<int>(view.y.front().size());
    os << 'k';
    for (int i = 1; i <= n; ++i) os << ",y_" << i;
    for (int i = 1; i <= n; ++i) os << ",j_" << i;
    os << '\n';
    for (std::size_t k = 0; k < view.y.size(); ++k) {
        os << k;
        for (int i = 0; i < n; ++i) os << ',' << fmt17(view.y[k][i]);
        for (int i = 0; i < n; ++i) os << ',' << view.sigma[k][i] + 1;
        os << '\n';
    }
}

void write_constrained_csv(std::ostream& os, const std::vector<ConstrainedState>& states) {
    const int n = static_cast<int>(states.front().xi.rows());
    const int d = static_cast<int>(states.front().xi.cols());
    os << 'k';
    for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= d; ++c) os << ",xi_" << i << '_' << c;
    for (int i = 1; i <= n; ++i) os << ",e_" << i;
    for (int i = 1; i <= n; ++i) os << ",dist_" << i;
    os << '\n';
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto& st = states[k];
        os << k;
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < d; ++c) os << ',' << fmt17(st.xi(i, c));
        for (int i = 0; i < n; ++i)
            os << ',' << fmt17(st.e ? st.e->row(i).norm() : 0.0);
        for (int i = 0; i < n; ++i) os << ',' << fmt17(st.dist[i]);
        os << '\n';
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("parse error in '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

}  // namespace dichotomy::io
