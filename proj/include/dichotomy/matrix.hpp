#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dichotomy/errors.hpp"

namespace dichotomy {

inline constexpr double kRowSumTol = 1e-12;

/// Row-stochastic square matrix: nonnegative entries, every row sums to 1
/// within kRowSumTol. Immutable after construction.
class StochasticMatrix {
public:
    /// Validates the invariants; throws NegativeEntry / RowSumViolation.
    static StochasticMatrix validated(Eigen::MatrixXd entries);

    /// Rescales every row to sum 1 before validating. Rows must be nonnegative
    /// with positive sum. Normalization never happens implicitly.
    static StochasticMatrix normalized(Eigen::MatrixXd entries);

    /// Wraps without re-checking row sums. For internal products (long products
    /// drift past kRowSumTol while staying stochastic to working accuracy).
    static StochasticMatrix unchecked(Eigen::MatrixXd entries);

    static StochasticMatrix identity(int n);

    int size() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& entries() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

    friend StochasticMatrix operator*(const StochasticMatrix& a, const StochasticMatrix& b);

    bool approx_equal(const StochasticMatrix& other, double tol) const;

private:
    explicit StochasticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

/// validate_stochastic in operation form.
StochasticMatrix validate_stochastic(const Eigen::MatrixXd& entries);

/// Nonnegative square matrix with row sums at most 1. Rows summing to strictly
/// less than 1 (beyond kRowSumTol) are deficiency rows.
class SubstochasticMatrix {
public:
    static SubstochasticMatrix validated(Eigen::MatrixXd entries);

    int size() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& entries() const { return m_; }

    /// Indices i with sum_j a_ij < 1 - kRowSumTol, ascending.
    const std::vector<int>& deficiency_rows() const { return deficiency_; }

private:
    explicit SubstochasticMatrix(Eigen::MatrixXd m);
    Eigen::MatrixXd m_;
    std::vector<int> deficiency_;
};

/// Signed influence matrix: nonnegative diagonal, |A| stochastic.
class SignedInfluenceMatrix {
public:
    static SignedInfluenceMatrix validated(Eigen::MatrixXd entries);

    int size() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& entries() const { return m_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

private:
    explicit SignedInfluenceMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

/// Entrywise absolute value; stochastic by the SignedInfluenceMatrix invariant.
StochasticMatrix modulus(const SignedInfluenceMatrix& a);

}  // namespace dichotomy
