#include "dichotomy/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "dichotomy/graph.hpp"
#include "dichotomy/log.hpp"

namespace dichotomy {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::equality: return "equality";
        case ProtocolKind::inequality: return "inequality";
        case ProtocolKind::altafini: return "altafini";
        case ProtocolKind::friedkin_johnsen: return "friedkin_johnsen";
        case ProtocolKind::constrained: return "constrained";
        case ProtocolKind::thm1_counterexample: return "thm1_counterexample";
    }
    return "?";
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Eigen::VectorXd resolve_x0(const json& j, int n, const std::string& field) {
    const std::string kind = j.value("kind", "explicit");
    if (kind == "explicit") {
        if (!j.contains("values")) throw SchemaError(field + ".values", "missing");
        Eigen::VectorXd v = io::vector_from_json(j.at("values"), field + ".values");
        if (v.size() != n)
            throw SchemaError(field + ".values", "expected " + std::to_string(n) + " entries");
        return v;
    }
    if (kind == "seeded-random") {
        if (!j.contains("seed")) throw SeedMissing("random x0 requires a seed (" + field + ")");
        const double lo = j.value("lo", -1.0), hi = j.value("hi", 1.0);
        std::mt19937_64 rng(mix64(j.at("seed").get<std::uint64_t>()));
        std::uniform_real_distribution<double> unif(lo, hi);
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = unif(rng);
        return v;
    }
    throw SchemaError(field + ".kind", "unknown x0 kind '" + kind + "'");
}

Eigen::MatrixXd resolve_xi0(const json& j, int n, int d, const std::string& field) {
    const std::string kind = j.value("kind", "explicit");
    if (kind == "explicit") {
        if (!j.contains("values")) throw SchemaError(field + ".values", "missing");
        const json& rows = j.at("values");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
            throw SchemaError(field + ".values", "expected " + std::to_string(n) + " rows");
        Eigen::MatrixXd m(n, d);
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd row = io::vector_from_json(
                rows.at(static_cast<std::size_t>(i)),
                field + ".values[" + std::to_string(i) + "]");
            if (row.size() != d)
                throw SchemaError(field + ".values[" + std::to_string(i) + "]",
                                  "expected " + std::to_string(d) + " entries");
            m.row(i) = row.transpose();
        }
        return m;
    }
    if (kind == "seeded-random") {
        if (!j.contains("seed")) throw SeedMissing("random x0 requires a seed (" + field + ")");
        const double lo = j.value("lo", -1.0), hi = j.value("hi", 1.0);
        std::mt19937_64 rng(mix64(j.at("seed").get<std::uint64_t>()));
        std::uniform_real_distribution<double> unif(lo, hi);
        Eigen::MatrixXd m(n, d);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < d; ++c) m(i, c) = unif(rng);
        return m;
    }
    throw SchemaError(field + ".kind", "unknown x0 kind '" + kind + "'");
}

SlackPolicy slack_from_json(const json& j, const std::string& field) {
    const std::string kind = j.value("kind", "none");
    if (kind == "none") return SlackPolicy::none();
    if (kind == "geometric")
        return SlackPolicy::geometric(j.value("rate", 0.9), j.value("scale", 0.1));
    if (kind == "seeded-random-summable") {
        if (!j.contains("seed")) throw SeedMissing("random slack requires a seed (" + field + ")");
        return SlackPolicy::seeded_random_summable(j.at("seed").get<std::uint64_t>(),
                                                   j.value("scale", 0.1), j.value("rate", 0.9));
    }
    throw SchemaError(field + ".kind", "unknown slack kind '" + kind + "'");
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    const json j = io::load_json_file(path);
    Scenario s;
    s.raw = j;
    if (!j.contains("name") || !j.at("name").is_string())
        throw SchemaError("name", "required string");
    s.name = j.at("name").get<std::string>();
    if (!j.contains("horizon")) throw SchemaError("horizon", "required");
    s.horizon = j.at("horizon").get<long>();
    if (s.horizon < 1) throw SchemaError("horizon", "must be >= 1");

    const json& proto = j.contains("protocol") ? j.at("protocol") : json{{"kind", "equality"}};
    const std::string kind = proto.value("kind", "equality");

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        s.tolerances.classify_tol = t.value("classify_tol", 1e-8);
        s.tolerances.tail_window = t.value("tail_window", 50L);
        s.tolerances.bound_threshold = t.value("bound_threshold", 1e6);
    }

    if (kind == "equality" || kind == "inequality" || kind == "thm1_counterexample" ||
        kind == "constrained") {
        if (!j.contains("sequence")) throw SchemaError("sequence", "required");
        s.seq = io::sequence_from_json(j.at("sequence"), "sequence");
    } else if (kind == "altafini") {
        if (!j.contains("sequence")) throw SchemaError("sequence", "required");
        s.signed_seq = io::signed_sequence_from_json(j.at("sequence"), "sequence");
    }

    if (kind == "equality") {
        s.protocol = ProtocolKind::equality;
        s.x0 = resolve_x0(j.value("x0", json::object()), s.seq->size(), "x0");
    } else if (kind == "inequality") {
        s.protocol = ProtocolKind::inequality;
        s.x0 = resolve_x0(j.value("x0", json::object()), s.seq->size(), "x0");
        s.slack = slack_from_json(proto.value("slack", json{{"kind", "none"}}), "protocol.slack");
    } else if (kind == "thm1_counterexample") {
        s.protocol = ProtocolKind::thm1_counterexample;
        if (!s.seq->is_constant())
            throw SchemaError("sequence.kind", "thm1_counterexample needs a constant sequence");
        s.cx_i = proto.value("i", 0);
        s.cx_j = proto.value("j", 1);
    } else if (kind == "altafini") {
        s.protocol = ProtocolKind::altafini;
        s.x0 = resolve_x0(j.value("x0", json::object()), s.signed_seq->size(), "x0");
    } else if (kind == "friedkin_johnsen") {
        s.protocol = ProtocolKind::friedkin_johnsen;
        if (!proto.contains("W")) throw SchemaError("protocol.W", "required");
        Eigen::MatrixXd w = io::matrix_from_json(proto.at("W"), "protocol.W");
        try {
            s.fj_w = StochasticMatrix::validated(std::move(w));
        } catch (const Error& e) {
            throw SchemaError("protocol.W", e.what());
        }
        if (!proto.contains("lambda")) throw SchemaError("protocol.lambda", "required");
        s.fj_lambda = io::vector_from_json(proto.at("lambda"), "protocol.lambda");
        if (!proto.contains("u")) throw SchemaError("protocol.u", "required");
        s.fj_u = io::vector_from_json(proto.at("u"), "protocol.u");
    } else if (kind == "constrained") {
        s.protocol = ProtocolKind::constrained;
        const std::string variant = proto.value("variant", "nedic");
        if (variant == "nedic")
            s.variant = ConstrainedVariant::nedic;
        else if (variant == "morse")
            s.variant = ConstrainedVariant::morse;
        else if (variant == "tempo")
            s.variant = ConstrainedVariant::tempo;
        else
            throw SchemaError("protocol.variant", "unknown variant '" + variant + "'");
        if (!proto.contains("sets")) throw SchemaError("protocol.sets", "required");
        const json& sets = proto.at("sets");
        if (!sets.is_array() || static_cast<int>(sets.size()) != s.seq->size())
            throw SchemaError("protocol.sets", "one set per agent required");
        for (std::size_t i = 0; i < sets.size(); ++i)
            s.sets.push_back(
                io::set_from_json(sets.at(i), "protocol.sets[" + std::to_string(i) + "]"));
        const int d = s.sets.front().dim();
        s.xi0 = resolve_xi0(j.value("x0", json::object()), s.seq->size(), d, "x0");
    } else {
        throw SchemaError("protocol.kind", "unknown protocol '" + kind + "'");
    }

    if (j.contains("checks")) {
        const json& checks = j.at("checks");
        if (!checks.is_array()) throw SchemaError("checks", "expected an array");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const json& c = checks.at(i);
            if (!c.contains("name"))
                throw SchemaError("checks[" + std::to_string(i) + "].name", "missing");
            CheckRequest req{c.at("name").get<std::string>(), c};
            for (const auto& existing : s.checks)
                if (existing.name == req.name)
                    throw SchemaError("checks[" + std::to_string(i) + "]",
                                      "duplicate check '" + req.name + "'");
            s.checks.push_back(std::move(req));
        }
    }

    if (j.contains("expect")) {
        const json& e = j.at("expect");
        if (e.contains("classification"))
            s.expect_classification = e.at("classification").get<std::string>();
        if (e.contains("checks"))
            for (const auto& [name, value] : e.at("checks").items())
                s.expect_checks[name] = value.get<bool>();
    }
    return s;
}

namespace {

struct RunContext {
    const Scenario& scenario;
    const MatrixSequence* seq = nullptr;  // modulus sequence for altafini
    const Trajectory* traj = nullptr;     // scalar trajectory obeying the inequality
};

Verdict run_check(const CheckRequest& req, const RunContext& ctx) {
    const json& p = req.params;
    const long default_horizon = std::min<long>(ctx.scenario.horizon, 30);

    auto need_seq = [&]() -> const MatrixSequence& {
        if (!ctx.seq) throw SchemaError("checks", "check '" + req.name + "' needs a sequence");
        return *ctx.seq;
    };
    auto need_traj = [&]() -> const Trajectory& {
        if (!ctx.traj) throw SchemaError("checks", "check '" + req.name + "' needs a trajectory");
        return *ctx.traj;
    };

    if (req.name == "theorem1") {
        const MatrixSequence& seq = need_seq();
        if (!seq.is_constant())
            throw SchemaError("checks", "theorem1 applies to constant sequences");
        const StochasticMatrix w = seq.at(0);
        const Theorem1Result res = check_theorem1_static(w);
        const PrimitivityResult prim = is_primitive(w);
        Verdict v;
        v.check = "theorem1";
        v.holds = res.consensus_dichotomic;
        v.horizon = 0;
        v.truncation_note = "structural test on the static graph; no horizon involved";
        json w1{{"dichotomic", res.dichotomic},
                {"consensus_dichotomic", res.consensus_dichotomic},
                {"primitive", prim.primitive}};
        if (prim.witness) w1["witness_power"] = *prim.witness;
        v.witnesses.push_back(std::move(w1));
        return v;
    }
    if (req.name == "theorem2") {
        const MatrixSequence& seq = need_seq();
        CheckerConfig cfg;
        cfg.eps = p.value("eps", 0.1);
        cfg.delta = p.value("delta", cfg.eps);
        cfg.window_B = p.value("B", 1L);
        cfg.horizon_K = p.value("horizon", default_horizon);
        cfg.search_cap_M = p.value("cap", CheckerConfig::default_cap(seq.size(), cfg.horizon_K));
        return check_theorem2_condition(seq, cfg);
    }
    if (req.name == "assumption1")
        return check_assumption1(need_seq(), p.value("delta", 0.1),
                                 p.value("horizon", default_horizon));
    if (req.name == "assumption2")
        return check_assumption2(need_seq(), p.value("B", 1L), p.value("horizon", default_horizon));
    if (req.name == "assumption3")
        return check_assumption3(need_seq(), p.value("horizon", default_horizon),
                                 p.value("mass_floor", 1.0));
    if (req.name == "corollary1")
        return check_corollary1_bound(need_seq(), p.value("delta", 0.1), p.value("B", 1L),
                                      p.value("horizon", default_horizon));
    if (req.name == "corollary2") {
        const MatrixSequence& seq = need_seq();
        if (!p.contains("W0")) throw SchemaError("checks", "corollary2 needs W0");
        const StochasticMatrix w0 =
            StochasticMatrix::validated(io::matrix_from_json(p.at("W0"), "checks.corollary2.W0"));
        CheckerConfig cfg;
        cfg.eps = p.value("eps", 0.1);
        cfg.delta = cfg.eps;
        cfg.horizon_K = p.value("horizon", default_horizon);
        cfg.search_cap_M = p.value("cap", CheckerConfig::default_cap(seq.size(), cfg.horizon_K));
        return check_corollary2(seq, w0, cfg.horizon_K, p.value("min_count", 1L), cfg);
    }
    if (req.name == "lemma1") {
        const MatrixSequence& seq = need_seq();
        const Trajectory& traj = need_traj();
        CheckerConfig cfg;
        cfg.eps = p.value("eps", 0.1);
        cfg.delta = cfg.eps;
        cfg.horizon_K = p.value("horizon", default_horizon);
        cfg.search_cap_M = p.value("cap", CheckerConfig::default_cap(seq.size(), cfg.horizon_K));
        Verdict thm2 = check_theorem2_condition(seq, cfg);
        Verdict v;
        v.check = "lemma1";
        v.horizon = cfg.horizon_K;
        v.truncation_note = "contraction asserted at the (k, m) witnesses found for k<=" +
                            std::to_string(cfg.horizon_K);
        if (!thm2.holds) {
            v.holds = false;
            v.witnesses.push_back(json{{"theorem2_condition_holds", false}});
            return v;
        }
        v.holds = true;
        for (const auto& w : thm2.witnesses) {
            const long k = w.at("k").get<long>(), m = w.at("m").get<long>();
            if (m > traj.steps()) continue;
            for (int i = 1; i < traj.agents(); ++i) {
                if (!check_lemma_contraction(traj, k, m, cfg.eps, i)) {
                    v.holds = false;
                    v.witnesses.push_back(json{{"k", k}, {"m", m}, {"i", i}, {"holds", false}});
                }
            }
        }
        if (v.holds) v.witnesses.push_back(json{{"pairs_checked", thm2.witnesses.size()}});
        return v;
    }
    if (req.name == "lemma2") {
        const MatrixSequence& seq = need_seq();
        const Trajectory& traj = need_traj();
        const double delta = p.value("delta", 0.1);
        const long horizon = p.value("horizon", default_horizon);
        const long cap = p.value("cap", std::min(traj.steps(),
                                                 CheckerConfig::default_cap(seq.size(), horizon)));
        Verdict v;
        v.check = "lemma2";
        v.horizon = horizon;
        v.truncation_note = "bidirectional step search for k<=" + std::to_string(horizon) +
                            ", capped at m<=" + std::to_string(cap);
        v.holds = true;
        for (long k = 0; k <= horizon; ++k) {
            for (int i = 1; i < traj.agents(); ++i) {
                try {
                    const long m = find_bidirectional_m(seq, traj, k, i, cap, delta);
                    v.witnesses.push_back(json{{"k", k}, {"i", i}, {"m", m}});
                } catch (const NotFoundWithinCap&) {
                    v.holds = false;
                    v.witnesses.push_back(json{{"k", k}, {"i", i}, {"found", false}});
                } catch (const NotBidirectional& e) {
                    v.holds = false;
                    v.witnesses.push_back(json{{"asymmetric_support_at", e.k}});
                    return v;
                }
            }
        }
        return v;
    }
    if (req.name == "appendix_bound") {
        const Trajectory& traj = need_traj();
        const MatrixSequence& seq = need_seq();
        const long samples = p.value("samples", 2000L);
        const long band = p.value("band", 50L);
        std::mt19937_64 rng(mix64(p.value("seed", 0ULL)));
        const SortedTrajectoryView view = sorted_view(traj);
        Verdict v;
        v.check = "appendix_bound";
        v.horizon = traj.steps();
        v.truncation_note = "sampled (p,q,l,j) tuples with q-p<=" + std::to_string(band);
        v.holds = true;
        const int n = traj.agents();
        std::uniform_int_distribution<long> pick_p(0, traj.steps() - 1);
        std::uniform_int_distribution<int> pick_node(0, n - 1);
        for (long s = 0; s < samples; ++s) {
            const long pp = pick_p(rng);
            std::uniform_int_distribution<long> pick_q(pp + 1, std::min(traj.steps(), pp + band));
            const long q = pick_q(rng);
            const int l = pick_node(rng), jn = pick_node(rng);
            const StochasticMatrix phi = evolutionary_matrix(seq, pp, q);
            const double y_n_p = view.sorted(pp)[n - 1];
            const double bound = y_n_p - phi(l, jn) * (y_n_p - traj.state(pp)[jn]);
            if (traj.state(q)[l] > bound + 1e-10) {
                v.holds = false;
                v.witnesses.push_back(json{{"p", pp}, {"q", q}, {"l", l}, {"j", jn}});
            }
        }
        if (v.holds) v.witnesses.push_back(json{{"samples", samples}});
        return v;
    }
    throw SchemaError("checks", "unknown check '" + req.name + "'");
}

}  // namespace

json RunReport::to_json() const {
    json verdicts_json = json::array();
    for (const auto& v : verdicts) verdicts_json.push_back(v.to_json());
    json j{{"scenario", scenario},
           {"classification", classification},
           {"verdicts", std::move(verdicts_json)},
           {"artifacts", artifacts},
           {"ok", ok},
           {"wall_ms", wall_ms},
           {"config_echo", config_echo}};
    if (consensus_value) j["consensus_value"] = *consensus_value;
    if (constrained_report) j["constrained_report"] = *constrained_report;
    return j;
}

RunReport run_scenario(const Scenario& s, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);

    RunReport report;
    report.scenario = s.name;
    report.config_echo = s.raw;

    std::optional<Trajectory> traj;           // protocol's primary scalar trajectory
    std::optional<Trajectory> ineq_view;      // the one obeying the inequality (altafini modulus)
    std::optional<MatrixSequence> check_seq = s.seq;
    std::vector<ConstrainedState> constrained_states;

    switch (s.protocol) {
        case ProtocolKind::equality:
            traj = run_equality(*s.seq, s.x0, s.horizon);
            break;
        case ProtocolKind::inequality:
            traj = run_inequality(*s.seq, s.x0, s.slack, s.horizon);
            break;
        case ProtocolKind::thm1_counterexample:
            traj = construct_thm1_counterexample(s.seq->at(0), s.cx_i, s.cx_j, s.horizon);
            break;
        case ProtocolKind::altafini: {
            AltafiniRun run = run_altafini(*s.signed_seq, s.x0, s.horizon);
            check_seq = s.signed_seq->modulus_sequence();
            ineq_view = std::move(run.modulus);
            traj = std::move(run.xi);
            break;
        }
        case ProtocolKind::friedkin_johnsen: {
            FriedkinJohnsenRun run = run_friedkin_johnsen(*s.fj_w, s.fj_lambda, s.fj_u, s.horizon);
            json fj{{"stable", run.stable}, {"rho", run.rho}};
            if (run.limit) {
                fj["limit"] = std::vector<double>(run.limit->data(),
                                                  run.limit->data() + run.limit->size());
                fj["final_gap"] = *run.final_gap;
            }
            report.config_echo["friedkin_johnsen_result"] = std::move(fj);
            check_seq = MatrixSequence::constant(*s.fj_w);
            traj = std::move(run.traj);
            break;
        }
        case ProtocolKind::constrained:
            constrained_states = run_constrained(s.variant, *s.seq, s.sets, s.xi0, s.horizon);
            break;
    }

    if (s.protocol == ProtocolKind::constrained) {
        const ConstrainedReport cr = constrained_consensus_report(
            constrained_states, s.sets, s.tolerances.classify_tol, s.tolerances.tail_window);
        report.classification = cr.ok() ? "consensus" : "undecided";
        json crj{{"consensus", cr.consensus},
                 {"limit_feasible", cr.limit_feasible},
                 {"tail_spread", cr.tail_spread},
                 {"tail_max_error", cr.tail_max_error},
                 {"tail_max_dist", cr.tail_max_dist},
                 {"limit", std::vector<double>(cr.limit.data(), cr.limit.data() + cr.limit.size())}};
        report.constrained_report = std::move(crj);

        std::ostringstream csv;
        io::write_constrained_csv(csv, constrained_states);
        const std::string path = (fs::path(out_dir) / "trajectory.csv").string();
        io::write_text_file(path, csv.str());
        report.artifacts.push_back(path);
    } else {
        const ConvergenceReport conv =
            classify_convergence(*traj, s.tolerances.classify_tol, s.tolerances.tail_window,
                                 s.tolerances.bound_threshold);
        report.classification = to_string(conv.classification);
        report.consensus_value = conv.consensus_value;

        std::ostringstream csv;
        io::write_trajectory_csv(csv, *traj);
        const std::string tpath = (fs::path(out_dir) / "trajectory.csv").string();
        io::write_text_file(tpath, csv.str());
        report.artifacts.push_back(tpath);

        const Trajectory& sorted_source = ineq_view ? *ineq_view : *traj;
        std::ostringstream sorted_csv;
        io::write_sorted_view_csv(sorted_csv, sorted_view(sorted_source));
        const std::string spath = (fs::path(out_dir) / "sorted_view.csv").string();
        io::write_text_file(spath, sorted_csv.str());
        report.artifacts.push_back(spath);

        if (ineq_view) {
            std::ostringstream mod_csv;
            io::write_trajectory_csv(mod_csv, *ineq_view);
            const std::string mpath = (fs::path(out_dir) / "modulus_trajectory.csv").string();
            io::write_text_file(mpath, mod_csv.str());
            report.artifacts.push_back(mpath);
        }
    }

    RunContext ctx{s, check_seq ? &*check_seq : nullptr,
                   ineq_view ? &*ineq_view : (traj ? &*traj : nullptr)};
    for (const auto& req : s.checks) {
        log::debug("scenario %s: running check %s", s.name.c_str(), req.name.c_str());
        try {
            report.verdicts.push_back(run_check(req, ctx));
        } catch (const Error& e) {
            throw Error("check '" + req.name + "' failed: " + e.what());
        }
    }

    json verdicts_json = json::array();
    for (const auto& v : report.verdicts) verdicts_json.push_back(v.to_json());
    const std::string vpath = (fs::path(out_dir) / "verdicts.json").string();
    io::write_text_file(vpath, json{{"scenario", s.name}, {"verdicts", verdicts_json}}.dump(2) + "\n");
    report.artifacts.push_back(vpath);

    bool ok = true;
    for (const auto& v : report.verdicts) {
        const auto it = s.expect_checks.find(v.check);
        const bool expected = it == s.expect_checks.end() ? true : it->second;
        ok = ok && v.holds == expected;
    }
    if (s.expect_classification) ok = ok && report.classification == *s.expect_classification;
    report.ok = ok;

    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    const std::string rpath = (fs::path(out_dir) / "report.json").string();
    io::write_text_file(rpath, report.to_json().dump(2) + "\n");
    return report;
}

std::vector<SweepRow> sweep(const std::string& dir, const std::string& out_dir, int jobs) {
    std::vector<std::string> files;
    if (fs::exists(dir))
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::vector<SweepRow> rows(files.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));

    auto work = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= files.size()) return;
            const std::string& file = files[idx];
            SweepRow row;
            row.name = fs::path(file).stem().string();
            const auto start = std::chrono::steady_clock::now();
            try {
                const Scenario s = load_scenario(file);
                row.name = s.name;
                const RunReport report =
                    run_scenario(s, (fs::path(out_dir) / fs::path(file).stem()).string());
                row.classification = report.classification;
                for (const auto& v : report.verdicts) {
                    const auto it = s.expect_checks.find(v.check);
                    const bool expected = it == s.expect_checks.end() ? true : it->second;
                    (v.holds == expected ? row.checks_passed : row.checks_failed)++;
                }
                row.status = report.ok ? "ok" : "fail";
            } catch (const std::exception& e) {
                row.status = "error";
                row.error = e.what();
            }
            row.runtime_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            rows[idx] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.name < b.name; });

    fs::create_directories(out_dir);
    std::ostringstream csv;
    csv << "name,status,classification,checks_passed,checks_failed,runtime_ms,error\n";
    for (const auto& row : rows) {
        std::string err = row.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        csv << row.name << ',' << row.status << ',' << row.classification << ','
            << row.checks_passed << ',' << row.checks_failed << ',' << io::fmt17(row.runtime_ms)
            << ',' << err << '\n';
    }
    io::write_text_file((fs::path(out_dir) / "summary.csv").string(), csv.str());
    return rows;
}

}  // namespace dichotomy
