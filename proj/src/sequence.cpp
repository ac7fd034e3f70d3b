#include "dichotomy/sequence.hpp"

#include <random>

namespace dichotomy {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 rng_for_step(std::uint64_t seed, long k) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k) + 1)));
}

// Support pattern for step k as a boolean matrix.
std::vector<std::vector<bool>> draw_support(const RandomSequenceSpec& spec, long k,
                                            std::mt19937_64& rng) {
    const int n = spec.n;
    std::vector<std::vector<bool>> sup(n, std::vector<bool>(n, false));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const bool diag = spec.delta > 0.0;

    switch (spec.rule) {
        case PatternRule::full:
            for (auto& row : sup) row.assign(n, true);
            break;
        case PatternRule::bernoulli:
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j)
                        sup[i][j] = diag;
                    else
                        sup[i][j] = unif(rng) < spec.p;
                }
            }
            break;
        case PatternRule::ring_union:
            for (int i = 0; i < n; ++i) {
                if (diag) sup[i][i] = true;
                if (spec.window >= 1 && i % spec.window == static_cast<int>(k % spec.window))
                    sup[i][(i + 1) % n] = true;
                for (int j = 0; j < n; ++j)
                    if (i != j && unif(rng) < spec.extra_prob) sup[i][j] = true;
            }
            break;
    }
    // A stochastic row needs at least one entry.
    for (int i = 0; i < n; ++i) {
        bool any = false;
        for (int j = 0; j < n; ++j) any = any || sup[i][j];
        if (!any) sup[i][i] = true;
    }
    return sup;
}

// Row weights over the support. With delta > 0, every support entry gets the
// delta floor and the remaining mass 1 - s*delta is split proportionally to
// uniform draws, so Assumption 1 holds by construction.
Eigen::MatrixXd draw_weights(const RandomSequenceSpec& spec, long k) {
    auto rng = rng_for_step(spec.seed, k);
    const auto sup = draw_support(spec, k, rng);
    const int n = spec.n;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if (sup[i][j]) cols.push_back(j);
        const int s = static_cast<int>(cols.size());
        std::vector<double> g(cols.size());
        double total = 0.0;
        for (auto& gi : g) {
            gi = unif(rng) + 1e-12;
            total += gi;
        }
        if (spec.delta > 0.0) {
            const double rest = 1.0 - s * spec.delta;
            for (int c = 0; c < s; ++c) w(i, cols[c]) = spec.delta + rest * g[c] / total;
        } else {
            for (int c = 0; c < s; ++c) w(i, cols[c]) = g[c] / total;
        }
    }
    return w;
}

void check_spec(const RandomSequenceSpec& spec) {
    if (spec.n <= 0) throw DimensionMismatch("seeded-random sequence needs n > 0");
    if (spec.delta < 0.0 || spec.delta * spec.n > 1.0)
        throw PreconditionViolated("delta floor infeasible: n*delta must be <= 1");
    if (spec.rule == PatternRule::ring_union && spec.window < 1)
        throw PreconditionViolated("ring_union window must be >= 1");
}

}  // namespace

MatrixSequence::MatrixSequence(const MatrixSequence& other)
    : kind_(other.kind_),
      n_(other.n_),
      matrices_(other.matrices_),
      tail_(other.tail_ ? std::make_unique<StochasticMatrix>(*other.tail_) : nullptr),
      spec_(other.spec_) {}

MatrixSequence& MatrixSequence::operator=(const MatrixSequence& other) {
    if (this != &other) {
        kind_ = other.kind_;
        n_ = other.n_;
        matrices_ = other.matrices_;
        tail_ = other.tail_ ? std::make_unique<StochasticMatrix>(*other.tail_) : nullptr;
        spec_ = other.spec_;
    }
    return *this;
}

MatrixSequence MatrixSequence::constant(StochasticMatrix w) {
    MatrixSequence s(Kind::constant, w.size());
    s.matrices_.push_back(std::move(w));
    return s;
}

MatrixSequence MatrixSequence::periodic(std::vector<StochasticMatrix> cycle) {
    if (cycle.empty()) throw PreconditionViolated("periodic sequence needs at least one matrix");
    MatrixSequence s(Kind::periodic, cycle.front().size());
    for (const auto& m : cycle)
        if (m.size() != s.n_) throw DimensionMismatch("periodic sequence with mixed sizes");
    s.matrices_ = std::move(cycle);
    return s;
}

MatrixSequence MatrixSequence::scripted(std::vector<StochasticMatrix> prefix,
                                        StochasticMatrix tail) {
    MatrixSequence s(Kind::scripted, tail.size());
    for (const auto& m : prefix)
        if (m.size() != s.n_) throw DimensionMismatch("scripted sequence with mixed sizes");
    s.matrices_ = std::move(prefix);
    s.tail_ = std::make_unique<StochasticMatrix>(std::move(tail));
    return s;
}

MatrixSequence MatrixSequence::seeded_random(const RandomSequenceSpec& spec) {
    check_spec(spec);
    MatrixSequence s(Kind::random, spec.n);
    s.spec_ = spec;
    return s;
}

StochasticMatrix MatrixSequence::at(long k) const {
    if (k < 0) throw InvalidRange(k, k);
    switch (kind_) {
        case Kind::constant:
            return matrices_.front();
        case Kind::periodic:
            return matrices_[static_cast<std::size_t>(k % static_cast<long>(matrices_.size()))];
        case Kind::scripted:
            if (static_cast<std::size_t>(k) < matrices_.size())
                return matrices_[static_cast<std::size_t>(k)];
            return *tail_;
        case Kind::random:
            return StochasticMatrix::validated(draw_weights(spec_, k));
    }
    throw Error("unreachable sequence kind");
}

SignedMatrixSequence::SignedMatrixSequence(const SignedMatrixSequence& other)
    : kind_(other.kind_),
      n_(other.n_),
      matrices_(other.matrices_),
      tail_(other.tail_ ? std::make_unique<SignedInfluenceMatrix>(*other.tail_) : nullptr),
      spec_(other.spec_),
      sign_flip_prob_(other.sign_flip_prob_) {}

SignedMatrixSequence& SignedMatrixSequence::operator=(const SignedMatrixSequence& other) {
    if (this != &other) {
        kind_ = other.kind_;
        n_ = other.n_;
        matrices_ = other.matrices_;
        tail_ = other.tail_ ? std::make_unique<SignedInfluenceMatrix>(*other.tail_) : nullptr;
        spec_ = other.spec_;
        sign_flip_prob_ = other.sign_flip_prob_;
    }
    return *this;
}

SignedMatrixSequence SignedMatrixSequence::constant(SignedInfluenceMatrix a) {
    SignedMatrixSequence s(Kind::constant, a.size());
    s.matrices_.push_back(std::move(a));
    return s;
}

SignedMatrixSequence SignedMatrixSequence::periodic(std::vector<SignedInfluenceMatrix> cycle) {
    if (cycle.empty()) throw PreconditionViolated("periodic sequence needs at least one matrix");
    SignedMatrixSequence s(Kind::periodic, cycle.front().size());
    for (const auto& m : cycle)
        if (m.size() != s.n_) throw DimensionMismatch("periodic sequence with mixed sizes");
    s.matrices_ = std::move(cycle);
    return s;
}

SignedMatrixSequence SignedMatrixSequence::scripted(std::vector<SignedInfluenceMatrix> prefix,
                                                    SignedInfluenceMatrix tail) {
    SignedMatrixSequence s(Kind::scripted, tail.size());
    for (const auto& m : prefix)
        if (m.size() != s.n_) throw DimensionMismatch("scripted sequence with mixed sizes");
    s.matrices_ = std::move(prefix);
    s.tail_ = std::make_unique<SignedInfluenceMatrix>(std::move(tail));
    return s;
}

SignedMatrixSequence SignedMatrixSequence::seeded_random(const RandomSequenceSpec& spec,
                                                         double sign_flip_prob) {
    check_spec(spec);
    SignedMatrixSequence s(Kind::random, spec.n);
    s.spec_ = spec;
    s.sign_flip_prob_ = sign_flip_prob;
    return s;
}

SignedInfluenceMatrix SignedMatrixSequence::at(long k) const {
    if (k < 0) throw InvalidRange(k, k);
    switch (kind_) {
        case Kind::constant:
            return matrices_.front();
        case Kind::periodic:
            return matrices_[static_cast<std::size_t>(k % static_cast<long>(matrices_.size()))];
        case Kind::scripted:
            if (static_cast<std::size_t>(k) < matrices_.size())
                return matrices_[static_cast<std::size_t>(k)];
            return *tail_;
        case Kind::random: {
            Eigen::MatrixXd w = draw_weights(spec_, k);
            // Separate stream so flipping signs never perturbs the modulus draw.
            auto rng = rng_for_step(splitmix64(spec_.seed ^ 0x5157ULL), k);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    if (i != j && w(i, j) > 0.0 && unif(rng) < sign_flip_prob_) w(i, j) = -w(i, j);
            return SignedInfluenceMatrix::validated(std::move(w));
        }
    }
    throw Error("unreachable sequence kind");
}

MatrixSequence SignedMatrixSequence::modulus_sequence() const {
    switch (kind_) {
        case Kind::constant:
            return MatrixSequence::constant(modulus(matrices_.front()));
        case Kind::periodic: {
            std::vector<StochasticMatrix> cyc;
            cyc.reserve(matrices_.size());
            for (const auto& m : matrices_) cyc.push_back(modulus(m));
            return MatrixSequence::periodic(std::move(cyc));
        }
        case Kind::scripted: {
            std::vector<StochasticMatrix> pre;
            pre.reserve(matrices_.size());
            for (const auto& m : matrices_) pre.push_back(modulus(m));
            return MatrixSequence::scripted(std::move(pre), modulus(*tail_));
        }
        case Kind::random:
            // Sign flips never touch the modulus draw.
            return MatrixSequence::seeded_random(spec_);
    }
    throw Error("unreachable sequence kind");
}

StochasticMatrix evolutionary_matrix(const MatrixSequence& seq, long k, long m) {
    if (m < k || k < 0) throw InvalidRange(k, m);
    Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(seq.size(), seq.size());
    for (long s = k; s < m; ++s) phi = seq.at(s).entries() * phi;
    return StochasticMatrix::unchecked(std::move(phi));
}

}  // namespace dichotomy
