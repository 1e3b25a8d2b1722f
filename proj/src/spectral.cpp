#include "brre/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "brre/birkhoff.hpp"
#include "brre/errors.hpp"

namespace brre {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double edge_tolerance = 1e-7;
}  // namespace

std::vector<double> chebyshev_coefficients(const RealVector& c) {
  const auto n = c.size();
  if (n < 1 || n % 2 == 0) {
    throw ContractViolation("chebyshev_coefficients: need an odd filter length 2K+1");
  }
  const Eigen::Index K = n / 2;
  const double scale = std::max(c.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index k = 1; k <= K; ++k) {
    if (std::abs(c[K + k] - c[K - k]) > 1e-10 * scale) {
      throw ContractViolation("chebyshev_coefficients: filter is not palindromic at offset " +
                              std::to_string(k));
    }
  }
  std::vector<double> b(static_cast<std::size_t>(K + 1));
  b[0] = c[K];
  for (Eigen::Index k = 1; k <= K; ++k) b[static_cast<std::size_t>(k)] = 2.0 * c[K + k];
  return b;
}

std::vector<ComplexScalar> colleague_roots(const std::vector<double>& b) {
  if (b.size() < 2) throw ContractViolation("colleague_roots: need degree K >= 1");
  const std::size_t K = b.size() - 1;
  double norm = 0.0;
  for (double v : b) norm += v * v;
  norm = std::sqrt(norm);
  if (!(std::abs(b[K]) >= 1e-14 * norm) || norm == 0.0) {
    throw DegreeDeflation("colleague_roots: leading Chebyshev coefficient is numerically zero");
  }
  if (K == 1) return {ComplexScalar(-b[0] / b[1], 0.0)};

  const auto n = static_cast<Eigen::Index>(K);
  RealMatrix colleague = RealMatrix::Zero(n, n);
  colleague(0, 1) = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    colleague(i, i - 1) = 0.5;
    if (i + 1 < n) colleague(i, i + 1) = 0.5;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    colleague(n - 1, j) -= b[static_cast<std::size_t>(j)] / (2.0 * b[K]);
  }
  return real_eigenvalues(colleague);
}

RootSet palindromic_roots(const RealVector& c) {
  if (c.size() >= 1 && c.cwiseAbs().maxCoeff() == 0.0) {
    throw ContractViolation("palindromic_roots: filter is identically zero");
  }
  const auto xs = colleague_roots(chebyshev_coefficients(c));
  RootSet out;
  out.roots.reserve(2 * xs.size());
  out.low_confidence.reserve(2 * xs.size());
  for (const auto& x : xs) {
    ComplexScalar z1;
    ComplexScalar z2;
    if (x.imag() == 0.0 && std::abs(x.real()) <= 1.0) {
      // Exactly unit modulus on the real segment.
      const double s = std::sqrt(std::max(0.0, 1.0 - x.real() * x.real()));
      z1 = {x.real(), s};
      z2 = {x.real(), -s};
    } else {
      const ComplexScalar disc = std::sqrt(x * x - 1.0);
      const ComplexScalar plus = x + disc;
      const ComplexScalar minus = x - disc;
      z1 = std::abs(plus) >= std::abs(minus) ? plus : minus;
      z2 = 1.0 / z1;
    }
    const bool edge = std::abs(x - 1.0) < edge_tolerance || std::abs(x + 1.0) < edge_tolerance;
    out.roots.push_back(z1);
    out.roots.push_back(z2);
    out.low_confidence.push_back(edge);
    out.low_confidence.push_back(edge);
  }
  return out;
}

RootSet unit_circle_filter(const RootSet& roots, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("unit_circle_filter: tolerance must be positive");
  RootSet out;
  out.unit_circle_tolerance = tol;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (std::abs(std::abs(roots.roots[i]) - 1.0) <= tol) {
      out.roots.push_back(roots.roots[i]);
      out.low_confidence.push_back(i < roots.low_confidence.size() && roots.low_confidence[i]);
    }
  }
  return out;
}

ModeRanking mode_prominence(const RootSet& roots, const Trajectory& traj, Execution exec) {
  if (roots.size() == 0) throw ContractViolation("mode_prominence: no roots");
  const std::size_t n = traj.size();
  const std::size_t m = roots.size();
  if (n < m) {
    throw ContractViolation("mode_prominence: " + std::to_string(m) +
                            " modes exceed the trajectory length " + std::to_string(n));
  }
  const auto w = bump_weights(n);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(m);
  RealVector sqrt_w(rows);
  for (Eigen::Index t = 0; t < rows; ++t) sqrt_w[t] = std::sqrt(w[static_cast<std::size_t>(t)]);

  ComplexMatrix modes(rows, cols);
  auto fill_column = [&](long j) {
    const ComplexScalar lambda = roots.roots[static_cast<std::size_t>(j)];
    const double radius = std::abs(lambda);
    const double angle = std::arg(lambda);
    for (Eigen::Index t = 0; t < rows; ++t) {
      const double td = static_cast<double>(t);
      modes(t, j) = sqrt_w[t] * std::polar(std::pow(radius, td), angle * td);
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < static_cast<long>(cols); ++j) fill_column(j);
  } else {
    for (long j = 0; j < static_cast<long>(cols); ++j) fill_column(j);
  }
  const ComplexMatrix rhs =
      (sqrt_w.asDiagonal() * traj.samples().transpose()).cast<ComplexScalar>();

  const auto fit = complex_least_squares(modes, rhs);
  ModeRanking ranking;
  ranking.rank_deficient = fit.rank < cols;
  ranking.entries.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const ComplexScalar lambda = roots.roots[j];
    ranking.entries.push_back({lambda, wrap_unit(std::arg(lambda) / two_pi),
                               fit.solution.row(static_cast<Eigen::Index>(j)).norm()});
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const ModeEntry& a, const ModeEntry& b) { return a.prominence > b.prominence; });
  return ranking;
}

ModeRanking merge_conjugate_modes(const ModeRanking& ranking, double tol) {
  std::vector<ModeEntry> folded;
  folded.reserve(ranking.entries.size());
  for (const auto& e : ranking.entries) {
    ModeEntry f = e;
    if (f.root.imag() < 0.0) f.root = std::conj(f.root);
    f.frequency = fold_rotation(e.frequency);
    folded.push_back(f);
  }
  std::stable_sort(folded.begin(), folded.end(),
                   [](const ModeEntry& a, const ModeEntry& b) { return a.frequency < b.frequency; });

  ModeRanking merged;
  merged.rank_deficient = ranking.rank_deficient;
  std::size_t i = 0;
  while (i < folded.size()) {
    ModeEntry group = folded[i];
    double best = folded[i].prominence;
    const double anchor = folded[i].frequency;
    std::size_t j = i + 1;
    for (; j < folded.size() && folded[j].frequency - anchor <= tol; ++j) {
      group.prominence += folded[j].prominence;
      if (folded[j].prominence > best) {
        best = folded[j].prominence;
        group.root = folded[j].root;
        group.frequency = folded[j].frequency;
      }
    }
    merged.entries.push_back(group);
    i = j;
  }
  std::stable_sort(merged.entries.begin(), merged.entries.end(),
                   [](const ModeEntry& a, const ModeEntry& b) { return a.prominence > b.prominence; });
  return merged;
}

RationalVerdict rational_detect(double omega, long p_max, double tol) {
  if (p_max < 1) throw ContractViolation("rational_detect: p_max must be >= 1");
  if (!(tol > 0.0)) throw ContractViolation("rational_detect: tol must be positive");
  const double w = wrap_unit(omega);
  const double lo = w - tol;
  const double hi = w + tol;
  if (lo <= 0.0 || hi >= 1.0) return {true, 0, 1};

  // Stern-Brocot descent between 0/1 and 1/1; runs of same-side mediants are
  // taken in one jump.
  long lm = 0, lq = 1, rm = 1, rq = 1;
  for (;;) {
    const long mm = lm + rm;
    const long mq = lq + rq;
    if (mq > p_max) return {};
    const double f = static_cast<double>(mm) / static_cast<double>(mq);
    if (f >= lo && f <= hi) return {true, mm, mq};
    if (f < lo) {
      // Largest j with (lm + j rm) / (lq + j rq) < lo.
      long j = static_cast<long>(std::floor((lo * lq - lm) / (rm - lo * rq)));
      j = std::clamp(j, 1L, std::max(1L, (p_max - lq) / rq + 1));
      while (j > 1 && static_cast<double>(lm + j * rm) / static_cast<double>(lq + j * rq) >= lo) --j;
      lm += j * rm;
      lq += j * rq;
    } else {
      long j = static_cast<long>(std::floor((rm - hi * rq) / (hi * lq - lm)));
      j = std::clamp(j, 1L, std::max(1L, (p_max - rq) / lq + 1));
      while (j > 1 && static_cast<double>(rm + j * lm) / static_cast<double>(rq + j * lq) <= hi) --j;
      rm += j * lm;
      rq += j * lq;
    }
  }
}

std::vector<std::pair<long, long>> continued_fraction_convergents(double omega, std::size_t count) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw ContractViolation("continued_fraction_convergents: omega must lie in (0, 1)");
  }
  std::vector<std::pair<long, long>> out;
  long h_prev = 1, h = 0;  // numerators N_{j-1}, N_j
  long k_prev = 0, k = 1;  // denominators
  double x = omega;
  while (out.size() < count) {
    const double frac = x - std::floor(x);
    if (frac <= 0.0) break;
    x = 1.0 / frac;
    const long a = static_cast<long>(std::floor(x));
    const long h_next = a * h + h_prev;
    const long k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    out.emplace_back(h, k);
    const double err = std::abs(omega - static_cast<double>(h) / static_cast<double>(k));
    if (err <= 4.0 * std::numeric_limits<double>::epsilon() * omega || k > (1L << 40)) break;
  }
  return out;
}

Trajectory stack_signal(const Trajectory& traj, std::size_t p) {
  if (p < 1) throw ContractViolation("stack_signal: p must be >= 1");
  const std::size_t n = traj.size() / p;
  if (n < 1) throw ContractViolation("stack_signal: trajectory shorter than p");
  const auto D = static_cast<Eigen::Index>(traj.dim());
  const auto P = static_cast<Eigen::Index>(p);
  // Column-major storage: p consecutive D-columns are one pD-column.
  RealMatrix prefix = traj.samples().leftCols(static_cast<Eigen::Index>(n * p));
  return Trajectory(Eigen::Map<const RealMatrix>(prefix.data(), D * P, static_cast<Eigen::Index>(n)));
}

Trajectory unstack_signal(const Trajectory& stacked, std::size_t p) {
  if (p < 1 || stacked.dim() % static_cast<int>(p) != 0) {
    throw ContractViolation("unstack_signal: dimension is not a multiple of p");
  }
  const auto D = static_cast<Eigen::Index>(stacked.dim()) / static_cast<Eigen::Index>(p);
  RealMatrix copy = stacked.samples();
  return Trajectory(Eigen::Map<const RealMatrix>(
      copy.data(), D, static_cast<Eigen::Index>(stacked.size() * p)));
}

double fold_rotation(double omega) {
  const double w = wrap_unit(omega);
  return std::min(w, 1.0 - w);
}

}  // namespace brre
