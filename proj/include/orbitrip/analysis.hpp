#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitrip/group.hpp"
#include "orbitrip/representation.hpp"

namespace orbitrip {

/// Thrown when a brute-force enumeration would exceed its support budget.
class EnumerationBudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when an iterative numeric routine fails to converge.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::int64_t iterations_run)
      : std::runtime_error(what), iterations(iterations_run) {}
  std::int64_t iterations;
};

struct OrbitConstantReport {
  double value = 0.0;
  std::int64_t argmax_index = 0;
  /// Unit vector attaining the extremal coordinate bound with equality.
  Eigen::VectorXcd witness;
  /// Squared top singular value per coordinate index.
  std::vector<double> per_index;

  std::string to_text() const;
};

/**
 * Smallest constant C such that for every coordinate j and every y,
 * ||(1/sqrt(m)) R_Omega (pi(g) y)^* e_j||_2 <= sqrt(C/m) ||y||_2.
 *
 * For each j this is the squared top singular value of the m x n matrix
 * whose l-th row is row j of pi(omega_l). Monomial realizations reduce to
 * exact coordinate-collision counts (the per-coordinate Gram is diagonal by
 * construction); dense realizations use singular values.
 */
OrbitConstantReport orbit_constant_exact(const Representation& rep,
                                         const SamplingSet& omega,
                                         int threads = 0);

/// Distinct dilation components {l : (k, l) in omega} of an affine sampling
/// set, ascending. Rejects sampling sets over other group kinds.
std::vector<Element> omega_two(const SamplingSet& omega);

struct RipReport {
  int s = 0;
  double delta = 0.0;
  std::vector<std::int64_t> argmax_support;
  std::int64_t supports_checked = 0;

  std::string to_text() const;
};

/// Default cap on the number of size-s supports a brute-force delta_s
/// computation may visit.
inline constexpr std::int64_t kDefaultRipBudget = 2'000'000;

/**
 * Exact restricted isometry constant delta_s by enumeration of all size-s
 * column supports (lexicographic): max over S of the spectral norm of
 * Phi_S^* Phi_S - I. Throws EnumerationBudgetError if binomial(n, s)
 * exceeds `budget`.
 */
RipReport restricted_isometry_constant(const Eigen::MatrixXcd& phi, int s,
                                       std::int64_t budget = kDefaultRipBudget,
                                       int threads = 0);

/// Largest normalized column inner product. Zero columns are rejected.
double coherence(const Eigen::MatrixXcd& phi);

/**
 * Smallest admissible row count from the sufficient condition
 * m >= c * delta^-2 * s * C * max{(log(s C) log n)^2, log(1/eta)},
 * with natural logarithms, rounded up.
 */
std::int64_t min_measurements(std::int64_t s, std::int64_t n, double delta,
                              double eta, double orbit_constant,
                              double leading_constant = 1.0);

/// Operator 2-norm: full SVD when min(rows, cols) <= 64, otherwise power
/// iteration with step tolerance 1e-12 and at most 10^4 iterations.
double spectral_norm(const Eigen::MatrixXcd& m);

/// binomial(n, k), saturating at UINT64_MAX on overflow.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// Lexicographic rank -> size-k combination of {0, ..., n-1}.
std::vector<std::int64_t> unrank_combination(std::uint64_t rank,
                                             std::int64_t n, std::int64_t k);

}  // namespace orbitrip
