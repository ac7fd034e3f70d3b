#include "dichotomy/projection.hpp"

#include <cmath>

namespace dichotomy {

ConvexSet ConvexSet::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
    if (lo.size() != hi.size()) throw DimensionMismatch("box bounds of mixed sizes");
    if (((hi - lo).array() < 0.0).any())
        throw DegenerateSet("box needs lo <= hi entrywise");
    ConvexSet s(Kind::box, static_cast<int>(lo.size()));
    s.lo_ = std::move(lo);
    s.hi_ = std::move(hi);
    return s;
}

ConvexSet ConvexSet::ball(Eigen::VectorXd center, double radius) {
    if (radius < 0.0) throw DegenerateSet("ball radius must be >= 0");
    ConvexSet s(Kind::ball, static_cast<int>(center.size()));
    s.center_ = std::move(center);
    s.radius_ = radius;
    return s;
}

ConvexSet ConvexSet::halfspace(Eigen::VectorXd a, double b) {
    const double n2 = a.squaredNorm();
    if (n2 <= 0.0) throw DegenerateSet("halfspace normal must be nonzero");
    ConvexSet s(Kind::halfspace, static_cast<int>(a.size()));
    s.a_ = std::move(a);
    s.b_ = b;
    s.a_norm2_ = n2;
    return s;
}

ConvexSet ConvexSet::hyperplane(Eigen::VectorXd a, double b) {
    const double n2 = a.squaredNorm();
    if (n2 <= 0.0) throw DegenerateSet("hyperplane normal must be nonzero");
    ConvexSet s(Kind::hyperplane, static_cast<int>(a.size()));
    s.a_ = std::move(a);
    s.b_ = b;
    s.a_norm2_ = n2;
    return s;
}

ConvexSet ConvexSet::affine(Eigen::MatrixXd A, Eigen::VectorXd b) {
    if (A.rows() != b.size()) throw DimensionMismatch("affine set rows do not match rhs");
    if (A.rows() == 0 || A.rows() > A.cols())
        throw DegenerateSet("affine set needs 1..dim independent rows");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A.transpose());
    qr.setThreshold(1e-10);
    if (qr.rank() < A.rows()) throw DegenerateSet("affine set rows are linearly dependent");
    ConvexSet s(Kind::affine, static_cast<int>(A.cols()));
    s.gram_ = Eigen::LLT<Eigen::MatrixXd>(A * A.transpose());
    if (s.gram_.info() != Eigen::Success)
        throw DegenerateSet("affine Gram matrix is not positive definite");
    s.A_ = std::move(A);
    s.rhs_ = std::move(b);
    return s;
}

Eigen::VectorXd ConvexSet::project(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw DimensionMismatch("projection point of wrong dimension");
    switch (kind_) {
        case Kind::box:
            return x.cwiseMax(lo_).cwiseMin(hi_);
        case Kind::ball: {
            const Eigen::VectorXd r = x - center_;
            const double norm = r.norm();
            if (norm <= radius_) return x;
            return center_ + (radius_ / norm) * r;
        }
        case Kind::halfspace: {
            const double excess = a_.dot(x) - b_;
            if (excess <= 0.0) return x;
            return x - (excess / a_norm2_) * a_;
        }
        case Kind::hyperplane:
            return x - ((a_.dot(x) - b_) / a_norm2_) * a_;
        case Kind::affine:
            return x - A_.transpose() * gram_.solve(A_ * x - rhs_);
    }
    throw Error("unreachable set kind");
}

double ConvexSet::distance(const Eigen::VectorXd& x) const { return (x - project(x)).norm(); }

bool ConvexSet::contains(const Eigen::VectorXd& x, double tol) const {
    return distance(x) <= tol;
}

Eigen::VectorXd project(const ConvexSet& s, const Eigen::VectorXd& x) { return s.project(x); }

bool verify_projection_inequality(const ConvexSet& s, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) {
    if (!s.contains(y)) throw YNotInSet("y fails the set membership test");
    const Eigen::VectorXd px = s.project(x);
    const double slack = (x - y).squaredNorm() - (x - px).squaredNorm() - (y - px).squaredNorm();
    return slack >= -1e-10;
}

}  // namespace dichotomy
