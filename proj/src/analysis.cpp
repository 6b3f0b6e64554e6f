#include "orbitrip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "orbitrip/parallel.hpp"

namespace orbitrip {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// m x n matrix whose l-th row is row j of pi(omega_l), dense realizations.
Eigen::MatrixXcd coordinate_slice(const std::vector<Eigen::MatrixXcd>& mats,
                                  std::int64_t j) {
  const std::int64_t m = static_cast<std::int64_t>(mats.size());
  Eigen::MatrixXcd k(m, mats.front().cols());
  for (std::int64_t l = 0; l < m; ++l) {
    k.row(l) = mats[static_cast<std::size_t>(l)].row(j);
  }
  return k;
}

}  // namespace

std::string OrbitConstantReport::to_text() const {
  std::string out;
  out += "value = " + format_double(value) + "\n";
  out += "argmax_index = " + std::to_string(argmax_index) + "\n";
  out += "witness =";
  for (std::int64_t i = 0; i < witness.size(); ++i) {
    out += ' ' + format_double(witness(i).real()) + ',' +
           format_double(witness(i).imag());
  }
  out += "\nper_index =";
  for (double v : per_index) out += ' ' + format_double(v);
  out += "\n";
  return out;
}

std::string RipReport::to_text() const {
  std::string out;
  out += "s = " + std::to_string(s) + "\n";
  out += "delta = " + format_double(delta) + "\n";
  out += "argmax_support =";
  for (auto idx : argmax_support) out += ' ' + std::to_string(idx);
  out += "\nsupports_checked = " + std::to_string(supports_checked) + "\n";
  return out;
}

OrbitConstantReport orbit_constant_exact(const Representation& rep,
                                         const SamplingSet& omega,
                                         int threads) {
  const std::int64_t n = rep.dim();
  if (n > 2048) {
    throw std::length_error("orbit constant capped at dimension 2048");
  }
  if (omega.group_label() != rep.group().label()) {
    throw std::invalid_argument("sampling set group does not match rep group");
  }
  const std::int64_t m = omega.size();
  const int nthreads = resolve_thread_count(threads);

  OrbitConstantReport report;
  report.per_index.assign(static_cast<std::size_t>(n), 0.0);

  if (rep.is_monomial()) {
    // Row j of a monomial pi(g) has its single entry phase[j] in column
    // source[j], so the per-coordinate Gram is diagonal by construction and
    // the top squared singular value is the largest collision weight
    // sum_{l : source_l[j] = c} |phase_l[j]|^2. Integer-weight families
    // (permutation actions) come out exact.
    std::vector<MonomialAction> acts;
    acts.reserve(static_cast<std::size_t>(m));
    for (Element w : omega.elements()) acts.push_back(rep.action(w));

    parallel_for_chunks(n, nthreads, [&](std::int64_t begin, std::int64_t end) {
      std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
      std::vector<std::int64_t> touched;
      for (std::int64_t j = begin; j < end; ++j) {
        touched.clear();
        for (std::int64_t l = 0; l < m; ++l) {
          const auto& act = acts[static_cast<std::size_t>(l)];
          const Element c = act.source[static_cast<std::size_t>(j)];
          if (weight[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
          weight[static_cast<std::size_t>(c)] += std::norm(act.phase(j));
        }
        double best = 0.0;
        for (std::int64_t c : touched) {
          best = std::max(best, weight[static_cast<std::size_t>(c)]);
          weight[static_cast<std::size_t>(c)] = 0.0;
        }
        report.per_index[static_cast<std::size_t>(j)] = best;
      }
    });
  } else {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(static_cast<std::size_t>(m));
    for (Element w : omega.elements()) mats.push_back(rep.matrix_of(w));
    parallel_for_chunks(n, nthreads, [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t j = begin; j < end; ++j) {
        const double sigma = spectral_norm(coordinate_slice(mats, j));
        report.per_index[static_cast<std::size_t>(j)] = sigma * sigma;
      }
    });
  }

  std::int64_t jmax = 0;
  for (std::int64_t j = 1; j < n; ++j) {
    if (report.per_index[static_cast<std::size_t>(j)] >
        report.per_index[static_cast<std::size_t>(jmax)]) {
      jmax = j;
    }
  }
  report.argmax_index = jmax;
  report.value = report.per_index[static_cast<std::size_t>(jmax)];

  // Witness for the extremal coordinate.
  if (rep.is_monomial()) {
    std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
    for (Element w : omega.elements()) {
      const MonomialAction act = rep.action(w);
      weight[static_cast<std::size_t>(
          act.source[static_cast<std::size_t>(jmax)])] +=
          std::norm(act.phase(jmax));
    }
    std::int64_t cmax = 0;
    for (std::int64_t c = 1; c < n; ++c) {
      if (weight[static_cast<std::size_t>(c)] >
          weight[static_cast<std::size_t>(cmax)]) {
        cmax = c;
      }
    }
    report.witness = Eigen::VectorXcd::Zero(n);
    report.witness(cmax) = Complex(1.0, 0.0);
  } else {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(static_cast<std::size_t>(m));
    for (Element w : omega.elements()) mats.push_back(rep.matrix_of(w));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coordinate_slice(mats, jmax),
                                           Eigen::ComputeThinV);
    report.witness = svd.matrixV().col(0);
  }
  return report;
}

std::vector<Element> omega_two(const SamplingSet& omega) {
  if (omega.group().kind() != FiniteGroup::Kind::affine) {
    throw std::invalid_argument("dilation components need an affine group");
  }
  const Element p = omega.group().param();
  std::vector<Element> ls;
  for (Element e : omega.elements()) {
    ls.push_back(affine_decode(p, e).second);
  }
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  return ls;
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    const std::uint64_t mul = static_cast<std::uint64_t>(n - k + i);
    if (r > UINT64_MAX / mul) return UINT64_MAX;  // saturate
    r = r * mul / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::vector<std::int64_t> unrank_combination(std::uint64_t rank,
                                             std::int64_t n, std::int64_t k) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(k));
  std::int64_t next = 0;
  for (std::int64_t remaining = k; remaining > 0; --remaining) {
    for (std::int64_t c = next;; ++c) {
      const std::uint64_t block = binomial(n - 1 - c, remaining - 1);
      if (rank < block) {
        out.push_back(c);
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return out;
}

RipReport restricted_isometry_constant(const Eigen::MatrixXcd& phi, int s,
                                       std::int64_t budget, int threads) {
  const std::int64_t n = phi.cols();
  if (s < 1 || s > n) {
    throw std::invalid_argument("sparsity outside [1, n]");
  }
  const std::uint64_t count = binomial(n, s);
  if (count > static_cast<std::uint64_t>(budget)) {
    throw EnumerationBudgetError("support enumeration budget exceeded: C(" +
                                 std::to_string(n) + "," + std::to_string(s) +
                                 ") = " + std::to_string(count));
  }
  const Eigen::MatrixXcd gram = phi.adjoint() * phi;
  const int nthreads = resolve_thread_count(threads);

  struct Best {
    double delta = -1.0;
    std::uint64_t rank = 0;
  };
  std::vector<Best> best(static_cast<std::size_t>(
      std::max<std::int64_t>(1, std::min<std::int64_t>(nthreads,
                                 static_cast<std::int64_t>(count)))));
  const std::int64_t used_threads = static_cast<std::int64_t>(best.size());
  const std::int64_t total = static_cast<std::int64_t>(count);
  const std::int64_t chunk = (total + used_threads - 1) / used_threads;

  parallel_for_chunks(
      used_threads, static_cast<int>(used_threads),
      [&](std::int64_t tb, std::int64_t te) {
        for (std::int64_t t = tb; t < te; ++t) {
          const std::int64_t begin = t * chunk;
          const std::int64_t end = std::min(total, begin + chunk);
          if (begin >= end) continue;
          Eigen::MatrixXcd dev(s, s);
          std::vector<std::int64_t> sup =
              unrank_combination(static_cast<std::uint64_t>(begin), n, s);
          Best local;
          for (std::int64_t r = begin; r < end; ++r) {
            for (int a = 0; a < s; ++a) {
              for (int b = 0; b < s; ++b) {
                dev(a, b) = gram(sup[static_cast<std::size_t>(a)],
                                 sup[static_cast<std::size_t>(b)]);
              }
              dev(a, a) -= Complex(1.0, 0.0);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                dev, Eigen::EigenvaluesOnly);
            const auto& ev = es.eigenvalues();
            const double d =
                std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
            if (d > local.delta) {
              local.delta = d;
              local.rank = static_cast<std::uint64_t>(r);
            }
            // advance to the next combination in lexicographic order
            if (r + 1 < end) {
              int i = s - 1;
              while (i >= 0 &&
                     sup[static_cast<std::size_t>(i)] == n - s + i) {
                --i;
              }
              ++sup[static_cast<std::size_t>(i)];
              for (int q = i + 1; q < s; ++q) {
                sup[static_cast<std::size_t>(q)] =
                    sup[static_cast<std::size_t>(q - 1)] + 1;
              }
            }
          }
          best[static_cast<std::size_t>(t)] = local;
        }
      });

  Best overall;
  for (const Best& b : best) {
    if (b.delta > overall.delta ||
        (b.delta == overall.delta && b.rank < overall.rank)) {
      overall = b;
    }
  }
  RipReport report;
  report.s = s;
  report.delta = overall.delta;
  report.argmax_support = unrank_combination(overall.rank, n, s);
  report.supports_checked = total;
  return report;
}

double coherence(const Eigen::MatrixXcd& phi) {
  const std::int64_t n = phi.cols();
  if (n < 2) throw std::invalid_argument("coherence needs at least 2 columns");
  Eigen::VectorXd norms(n);
  for (std::int64_t j = 0; j < n; ++j) {
    norms(j) = phi.col(j).norm();
    if (norms(j) == 0.0) {
      throw std::invalid_argument("zero column at index " + std::to_string(j));
    }
  }
  const Eigen::MatrixXcd gram = phi.adjoint() * phi;
  double mu = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      mu = std::max(mu, std::abs(gram(i, j)) / (norms(i) * norms(j)));
    }
  }
  return mu;
}

std::int64_t min_measurements(std::int64_t s, std::int64_t n, double delta,
                              double eta, double orbit_constant,
                              double leading_constant) {
  if (s < 1 || n < 1 || s > n) {
    throw std::invalid_argument("need 1 <= s <= n");
  }
  if (!(delta > 0.0 && delta < 1.0) || !(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("delta and eta must lie in (0, 1)");
  }
  if (!(orbit_constant >= 1.0)) {
    throw std::invalid_argument("orbit constant must be >= 1");
  }
  if (!(leading_constant > 0.0)) {
    throw std::invalid_argument("leading constant must be > 0");
  }
  const double logs = std::log(static_cast<double>(s) * orbit_constant) *
                      std::log(static_cast<double>(n));
  const double bound = leading_constant / (delta * delta) *
                       static_cast<double>(s) * orbit_constant *
                       std::max(logs * logs, std::log(1.0 / eta));
  if (bound >= static_cast<double>(std::numeric_limits<std::int64_t>::max())) {
    throw std::invalid_argument("measurement bound overflows");
  }
  return static_cast<std::int64_t>(std::ceil(bound));
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= 64) {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
  }
  // Power iteration on M^* M; the ramped start vector avoids landing in an
  // invariant subspace orthogonal to the top singular direction.
  Eigen::VectorXcd v(m.cols());
  for (std::int64_t j = 0; j < m.cols(); ++j) {
    v(j) = Complex(1.0 + 1e-3 * static_cast<double>(j), 0.0);
  }
  v.normalize();
  double sigma = 0.0;
  constexpr std::int64_t kMaxIters = 10'000;
  for (std::int64_t it = 1; it <= kMaxIters; ++it) {
    const Eigen::VectorXcd w = m * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    Eigen::VectorXcd u = m.adjoint() * w;
    const double un = u.norm();
    if (un == 0.0) return next;
    v = u / un;
    if (std::abs(next - sigma) <= 1e-12 * std::max(1.0, next)) {
      return next;
    }
    sigma = next;
  }
  throw NumericError("power iteration did not converge", kMaxIters);
}

}  // namespace orbitrip
