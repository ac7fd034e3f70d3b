#pragma once

#include "dichotomy/matrix.hpp"

namespace dichotomy {

/// Spectral radius of a nonnegative square matrix by power iteration from the
/// all-ones vector. Reducible matrices are decomposed first and the result is
/// the max over the diagonal blocks of the SCC condensation; irreducible
/// blocks with graph period p use a p-step geometric-mean growth ratio (plain
/// ratios cycle with the period). Throws NoConvergence when the ratio does
/// not stabilize within max_iter steps.
double spectral_radius(const Eigen::MatrixXd& a, int max_iter = 10000, double tol = 1e-10);

double spectral_radius(const SubstochasticMatrix& a, int max_iter = 10000, double tol = 1e-10);

}  // namespace dichotomy
