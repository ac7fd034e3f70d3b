#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dichotomy/matrix.hpp"

namespace dichotomy {

/// Support-pattern rule for seeded-random sequences.
///
/// full       — every arc (including the diagonal) is present at every step.
/// bernoulli  — each off-diagonal arc present independently with prob p; the
///              diagonal is present whenever a delta floor is active. Empty
///              rows are completed with a self-loop.
/// ring_union — step k contributes the ring arcs i->i+1 (mod n) with
///              i ≡ k (mod window), plus Bernoulli(extra_prob) extras, plus
///              the diagonal. Any `window` consecutive steps jointly contain
///              the full ring, so the window-sum graph is strongly connected.
enum class PatternRule { full, bernoulli, ring_union };

struct RandomSequenceSpec {
    int n = 0;
    std::uint64_t seed = 0;
    PatternRule rule = PatternRule::full;
    double p = 0.5;           // bernoulli arc probability
    int window = 1;           // ring_union window
    double extra_prob = 0.0;  // ring_union extras
    double delta = 0.0;       // >0 turns the Assumption-1 floor on
};

/// Deterministic generator of stochastic matrices W(k), k = 0,1,...
/// Emission at step k depends only on (kind, parameters, seed, k).
class MatrixSequence {
public:
    static MatrixSequence constant(StochasticMatrix w);
    static MatrixSequence periodic(std::vector<StochasticMatrix> cycle);
    /// Emits prefix[k] for k < prefix.size(), then `tail` forever.
    static MatrixSequence scripted(std::vector<StochasticMatrix> prefix, StochasticMatrix tail);
    static MatrixSequence seeded_random(const RandomSequenceSpec& spec);

    StochasticMatrix at(long k) const;
    int size() const { return n_; }

    bool is_constant() const { return kind_ == Kind::constant; }

private:
    enum class Kind { constant, periodic, scripted, random };
    MatrixSequence(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_;
    int n_;
    std::vector<StochasticMatrix> matrices_;  // constant / periodic / scripted prefix
    std::unique_ptr<StochasticMatrix> tail_;
    RandomSequenceSpec spec_;

public:
    MatrixSequence(const MatrixSequence& other);
    MatrixSequence& operator=(const MatrixSequence& other);
    MatrixSequence(MatrixSequence&&) noexcept = default;
    MatrixSequence& operator=(MatrixSequence&&) noexcept = default;
};

/// Deterministic generator of signed influence matrices A(k).
class SignedMatrixSequence {
public:
    static SignedMatrixSequence constant(SignedInfluenceMatrix a);
    static SignedMatrixSequence periodic(std::vector<SignedInfluenceMatrix> cycle);
    static SignedMatrixSequence scripted(std::vector<SignedInfluenceMatrix> prefix,
                                         SignedInfluenceMatrix tail);
    /// Modulus pattern drawn per `spec`, then each off-diagonal entry's sign is
    /// flipped independently with probability sign_flip_prob.
    static SignedMatrixSequence seeded_random(const RandomSequenceSpec& spec,
                                              double sign_flip_prob);

    SignedInfluenceMatrix at(long k) const;
    int size() const { return n_; }

    /// The sequence W(k) = |A(k)|.
    MatrixSequence modulus_sequence() const;

private:
    enum class Kind { constant, periodic, scripted, random };
    SignedMatrixSequence(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_;
    int n_;
    std::vector<SignedInfluenceMatrix> matrices_;
    std::unique_ptr<SignedInfluenceMatrix> tail_;
    RandomSequenceSpec spec_;
    double sign_flip_prob_ = 0.0;

public:
    SignedMatrixSequence(const SignedMatrixSequence& other);
    SignedMatrixSequence& operator=(const SignedMatrixSequence& other);
    SignedMatrixSequence(SignedMatrixSequence&&) noexcept = default;
    SignedMatrixSequence& operator=(SignedMatrixSequence&&) noexcept = default;
};

/// Evolutionary matrix Phi(m,k) = W(m-1)...W(k); Phi(k,k) = I.
/// Throws InvalidRange when m < k.
StochasticMatrix evolutionary_matrix(const MatrixSequence& seq, long k, long m);

}  // namespace dichotomy
