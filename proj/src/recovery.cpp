#include "orbitrip/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "orbitrip/analysis.hpp"

namespace orbitrip {

namespace {

constexpr double kPinvCutoff = 1e-10;

void check_problem(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& y,
                   int s) {
  if (phi.rows() != y.size()) {
    throw std::invalid_argument("measurement length does not match rows");
  }
  if (s < 1 || s > phi.cols()) {
    throw std::invalid_argument("sparsity outside [1, n]");
  }
}

// Least squares on the selected columns; falls back to the SVD pseudo-inverse
// when the normal equations are numerically rank deficient.
Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& a,
                               const Eigen::VectorXcd& y,
                               bool* rank_deficient) {
  const Eigen::MatrixXcd gram = a.adjoint() * a;
  const Eigen::VectorXcd rhs = a.adjoint() * y;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  if (ldlt.info() == Eigen::Success) {
    const Eigen::VectorXd d = ldlt.vectorD().real();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (dmax > 0.0 && d.cwiseAbs().minCoeff() > kPinvCutoff * dmax) {
      return ldlt.solve(rhs);
    }
  }
  *rank_deficient = true;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? kPinvCutoff * sv(0) : 0.0;
  Eigen::VectorXcd coeffs = svd.matrixU().adjoint() * y;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    coeffs(i) = sv(i) > cutoff ? coeffs(i) / sv(i) : Complex(0.0, 0.0);
  }
  return svd.matrixV() * coeffs;
}

}  // namespace

Eigen::VectorXcd hard_threshold(const Eigen::VectorXcd& x, int s) {
  const std::int64_t n = x.size();
  if (s < 1 || s > n) throw std::invalid_argument("sparsity outside [1, n]");
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const double ma = std::abs(x(a));
    const double mb = std::abs(x(b));
    if (ma != mb) return ma > mb;
    return a < b;
  });
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < s; ++i) {
    out(order[static_cast<std::size_t>(i)]) =
        x(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

RecoveryResult iht(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& y,
                   int s, const IhtOptions& options,
                   const Eigen::VectorXcd* ground_truth) {
  check_problem(phi, y, s);
  const double sigma = spectral_norm(phi);
  if (sigma == 0.0) {
    throw std::invalid_argument("zero measurement operator");
  }
  const double mu = 1.0 / (sigma * sigma);

  RecoveryResult result;
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(phi.cols());
  for (int it = 1; it <= options.max_iters; ++it) {
    const Eigen::VectorXcd grad = phi.adjoint() * (y - phi * x);
    const Eigen::VectorXcd next = hard_threshold(x + mu * grad, s);
    result.iterations = it;
    const double step = (next - x).norm();
    const bool small_step = step <= options.tol * std::max(1.0, x.norm());
    x = next;
    if (small_step || (y - phi * x).norm() <= options.tol) {
      result.converged = true;
      break;
    }
  }
  result.estimate = std::move(x);
  if (ground_truth != nullptr) {
    result.relative_error = relative_error(*ground_truth, result.estimate);
  }
  return result;
}

RecoveryResult omp(const Eigen::MatrixXcd& phi, const Eigen::VectorXcd& y,
                   int s, const Eigen::VectorXcd* ground_truth) {
  check_problem(phi, y, s);
  if (s > phi.rows()) {
    throw std::invalid_argument("sparsity exceeds measurement count");
  }
  const std::int64_t n = phi.cols();
  Eigen::VectorXd norms(n);
  double max_norm = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    norms(j) = phi.col(j).norm();
    max_norm = std::max(max_norm, norms(j));
  }
  if (max_norm == 0.0) {
    throw std::invalid_argument("zero measurement operator");
  }

  RecoveryResult result;
  Eigen::VectorXcd residual = y;
  std::vector<std::int64_t> selected;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::VectorXcd coeffs;
  for (int round = 0; round < s; ++round) {
    std::int64_t pick = -1;
    double best = -1.0;
    for (std::int64_t j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)] || norms(j) == 0.0) continue;
      const double corr = std::abs(phi.col(j).dot(residual)) / norms(j);
      if (corr > best) {
        best = corr;
        pick = j;
      }
    }
    if (pick < 0) break;
    used[static_cast<std::size_t>(pick)] = true;
    selected.push_back(pick);

    Eigen::MatrixXcd sub(phi.rows(),
                         static_cast<std::int64_t>(selected.size()));
    for (std::size_t c = 0; c < selected.size(); ++c) {
      sub.col(static_cast<std::int64_t>(c)) = phi.col(selected[c]);
    }
    coeffs = least_squares(sub, y, &result.rank_deficient);
    residual = y - sub * coeffs;
    result.iterations = round + 1;
  }

  result.estimate = Eigen::VectorXcd::Zero(n);
  for (std::size_t c = 0; c < selected.size(); ++c) {
    result.estimate(selected[c]) = coeffs(static_cast<std::int64_t>(c));
  }
  result.converged = true;
  if (ground_truth != nullptr) {
    result.relative_error = relative_error(*ground_truth, result.estimate);
  }
  return result;
}

double relative_error(const Eigen::VectorXcd& truth,
                      const Eigen::VectorXcd& estimate) {
  const double tn = truth.norm();
  if (tn == 0.0) throw std::invalid_argument("ground truth must be nonzero");
  if (estimate.size() != truth.size()) {
    throw std::invalid_argument("estimate length does not match truth");
  }
  return (estimate - truth).norm() / tn;
}

bool recovery_success(const Eigen::VectorXcd& truth,
                      const RecoveryResult& result, double threshold) {
  return relative_error(truth, result.estimate) <= threshold;
}

}  // namespace orbitrip
