#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

namespace orbitrip {

struct RecoveryResult {
  Eigen::VectorXcd estimate;
  int iterations = 0;
  bool converged = false;
  /// Filled when the solver was given the ground truth.
  std::optional<double> relative_error;
  /// Set when a rank-deficient least-squares step fell back to the
  /// pseudo-inverse.
  bool rank_deficient = false;
};

/// Keep the s entries of largest modulus, zero the rest; ties keep the lower
/// index.
Eigen::VectorXcd hard_threshold(const Eigen::VectorXcd& x, int s);

struct IhtOptions {
  int max_iters = 500;
  double tol = 1e-8;
};

/// Iterative hard thresholding from x = 0 with the normalized step
/// mu = 1 / ||Phi||_{2->2}^2. Stops when the update is below
/// tol * max(1, ||x||) or the residual is below tol.
RecoveryResult iht(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& y,
                   int s, const IhtOptions& options = {},
                   const Eigen::VectorXcd* ground_truth = nullptr);

/// Orthogonal matching pursuit: s rounds of greedy selection by normalized
/// residual correlation (ties to the lower index) with an exact least-squares
/// refit each round; rank-deficient fits use the pseudo-inverse with relative
/// cutoff 1e-10.
RecoveryResult omp(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& y,
                   int s, const Eigen::VectorXcd* ground_truth = nullptr);

/// ||estimate - truth|| / ||truth||; the truth must be nonzero.
double relative_error(const Eigen::VectorXcd& truth,
                      const Eigen::VectorXcd& estimate);

/// True iff the relative error is at most `threshold` (inclusive).
bool recovery_success(const Eigen::VectorXcd& truth,
                      const RecoveryResult& result, double threshold = 1e-4);

}  // namespace orbitrip
