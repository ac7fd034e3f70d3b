#include "dichotomy/matrix.hpp"

#include <cmath>

namespace dichotomy {

namespace {

void require_square(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("matrix is not square: " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
}

void require_nonnegative(const Eigen::MatrixXd& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) < 0.0) throw NegativeEntry(i, j, m(i, j));
}

}  // namespace

StochasticMatrix StochasticMatrix::validated(Eigen::MatrixXd entries) {
    require_square(entries);
    require_nonnegative(entries);
    for (int i = 0; i < entries.rows(); ++i) {
        const double sum = entries.row(i).sum();
        if (std::abs(sum - 1.0) > kRowSumTol) throw RowSumViolation(i, sum);
    }
    return StochasticMatrix(std::move(entries));
}

StochasticMatrix StochasticMatrix::normalized(Eigen::MatrixXd entries) {
    require_square(entries);
    require_nonnegative(entries);
    for (int i = 0; i < entries.rows(); ++i) {
        const double sum = entries.row(i).sum();
        if (sum <= 0.0) throw RowSumViolation(i, sum);
        entries.row(i) /= sum;
    }
    return validated(std::move(entries));
}

StochasticMatrix StochasticMatrix::unchecked(Eigen::MatrixXd entries) {
    require_square(entries);
    return StochasticMatrix(std::move(entries));
}

StochasticMatrix StochasticMatrix::identity(int n) {
    return StochasticMatrix(Eigen::MatrixXd::Identity(n, n));
}

Eigen::VectorXd StochasticMatrix::apply(const Eigen::VectorXd& x) const {
    if (x.size() != m_.rows())
        throw DimensionMismatch("vector of size " + std::to_string(x.size()) +
                                " against matrix of size " + std::to_string(m_.rows()));
    return m_ * x;
}

StochasticMatrix operator*(const StochasticMatrix& a, const StochasticMatrix& b) {
    if (a.size() != b.size()) throw DimensionMismatch("product of unequal sizes");
    return StochasticMatrix::unchecked(a.entries() * b.entries());
}

bool StochasticMatrix::approx_equal(const StochasticMatrix& other, double tol) const {
    if (size() != other.size()) return false;
    return (m_ - other.m_).cwiseAbs().maxCoeff() <= tol;
}

StochasticMatrix validate_stochastic(const Eigen::MatrixXd& entries) {
    return StochasticMatrix::validated(entries);
}

SubstochasticMatrix::SubstochasticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    for (int i = 0; i < m_.rows(); ++i)
        if (m_.row(i).sum() < 1.0 - kRowSumTol) deficiency_.push_back(i);
}

SubstochasticMatrix SubstochasticMatrix::validated(Eigen::MatrixXd entries) {
    require_square(entries);
    require_nonnegative(entries);
    for (int i = 0; i < entries.rows(); ++i) {
        const double sum = entries.row(i).sum();
        if (sum > 1.0 + kRowSumTol) throw RowSumViolation(i, sum);
    }
    return SubstochasticMatrix(std::move(entries));
}

SignedInfluenceMatrix SignedInfluenceMatrix::validated(Eigen::MatrixXd entries) {
    require_square(entries);
    for (int i = 0; i < entries.rows(); ++i) {
        if (entries(i, i) < 0.0) throw NegativeEntry(i, i, entries(i, i));
        const double sum = entries.row(i).cwiseAbs().sum();
        if (std::abs(sum - 1.0) > kRowSumTol) throw RowSumViolation(i, sum);
    }
    return SignedInfluenceMatrix(std::move(entries));
}

Eigen::VectorXd SignedInfluenceMatrix::apply(const Eigen::VectorXd& x) const {
    if (x.size() != m_.rows())
        throw DimensionMismatch("vector of size " + std::to_string(x.size()) +
                                " against matrix of size " + std::to_string(m_.rows()));
    return m_ * x;
}

StochasticMatrix modulus(const SignedInfluenceMatrix& a) {
    return StochasticMatrix::validated(a.entries().cwiseAbs());
}

}  // namespace dichotomy
