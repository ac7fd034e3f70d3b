#pragma once

#include <memory>

#include "dichotomy/matrix.hpp"

namespace dichotomy {

/// Closed convex set with an exact closed-form projection. Immutable.
class ConvexSet {
public:
    enum class Kind { box, ball, halfspace, hyperplane, affine };

    static ConvexSet box(Eigen::VectorXd lo, Eigen::VectorXd hi);
    static ConvexSet ball(Eigen::VectorXd center, double radius);
    static ConvexSet halfspace(Eigen::VectorXd a, double b);   // {x : a'x <= b}
    static ConvexSet hyperplane(Eigen::VectorXd a, double b);  // {x : a'x = b}
    static ConvexSet affine(Eigen::MatrixXd A, Eigen::VectorXd b);  // {x : Ax = b}

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    Eigen::VectorXd project(const Eigen::VectorXd& x) const;
    double distance(const Eigen::VectorXd& x) const;
    /// Membership through the projection: ||P(x) - x|| <= tol.
    bool contains(const Eigen::VectorXd& x, double tol = 1e-10) const;

private:
    ConvexSet(Kind kind, int dim) : kind_(kind), dim_(dim) {}
    Kind kind_;
    int dim_;

    Eigen::VectorXd lo_, hi_;        // box
    Eigen::VectorXd center_;         // ball
    double radius_ = 0.0;
    Eigen::VectorXd a_;              // halfspace / hyperplane
    double b_ = 0.0;
    double a_norm2_ = 0.0;
    Eigen::MatrixXd A_;              // affine
    Eigen::VectorXd rhs_;
    Eigen::LLT<Eigen::MatrixXd> gram_;  // factorization of A A'
};

Eigen::VectorXd project(const ConvexSet& s, const Eigen::VectorXd& x);

/// ||x - y||^2 >= ||x - P(x)||^2 + ||y - P(x)||^2 for y in the set, with
/// slack >= -1e-10. Throws YNotInSet when y fails the membership test.
bool verify_projection_inequality(const ConvexSet& s, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y);

}  // namespace dichotomy
