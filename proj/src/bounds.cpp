#include "shadowlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "shadowlab/dual_fan.hpp"
#include "shadowlab/parallel.hpp"

namespace shadowlab {

namespace {

void require_n(int n) {
  if (n < 2) throw InvalidDimension("dimension must be >= 2");
}

const double kSqrtPi = std::sqrt(std::numbers::pi);

MeanEstimate mean_of(const std::vector<double>& xs) {
  MeanEstimate m;
  m.trials = static_cast<std::int64_t>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return m;
}

}  // namespace

double gamma_ratio(int n) {
  require_n(n);
  return std::exp(std::lgamma(n / 2.0) - std::lgamma((n - 1) / 2.0));
}

double b1_density_constant(int n) { return gamma_ratio(n) / kSqrtPi; }

double b1_density(int n, double t) {
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  return b1_density_constant(n) * std::pow(1.0 - t * t, (n - 3) / 2.0);
}

double integrate_b1_density(int n, int intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw std::invalid_argument("intervals must be even and >= 2");
  const double c = b1_density_constant(n);
  const double a = -std::numbers::pi / 2.0;
  const double h = std::numbers::pi / intervals;
  // f(sin th) cos th = c cos^(n-2) th
  auto g = [&](double th) { return c * std::pow(std::max(std::cos(th), 0.0), n - 2); };
  double sum = g(a) + g(-a);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * g(a + i * h);
  return sum * h / 3.0;
}

double expected_abs_coordinate(int n) { return 2.0 / (n - 1) * b1_density_constant(n); }

Bracket chu_ratio_bracket(int n) {
  require_n(n);
  const double nd = n;
  return {std::sqrt((2 * nd - 1) * (nd - 1) / ((2 * nd - 2) * 2)),
          std::sqrt((2 * nd - 2) * (nd - 1) / ((2 * nd - 3) * 2))};
}

Bracket chu_bracket(int n) {
  const Bracket r = chu_ratio_bracket(n);
  const double f = 2.0 / (n - 1) / kSqrtPi;
  return {f * r.lower, f * r.upper};
}

Bracket c_n_bracket(int n) {
  const double e = expected_abs_coordinate(n);
  return {std::sqrt(2.0) * e, 2.0 * e};
}

double c_n_closed_form(int n) {
  require_n(n);
  return std::exp(std::lgamma(1.5) + std::lgamma(n / 2.0) - std::lgamma((n + 1) / 2.0));
}

MeanEstimate estimate_c_n(int n, const McOptions& opts) {
  require_n(n);
  const auto lengths = parallel_map(opts.trials, opts.threads, [&](std::int64_t t) {
    const Frame2 f = trial_frame(opts.seed, t, n);
    return std::hypot(f.u()[0], f.v()[0]);
  });
  return mean_of(lengths);
}

MeanEstimate estimate_abs_coordinate(int n, const McOptions& opts) {
  require_n(n);
  const auto xs = parallel_map(opts.trials, opts.threads, [&](std::int64_t t) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(t));
    return std::abs(sample_sphere(rng, n)[0]);
  });
  return mean_of(xs);
}

// ---------------------------------------------------------------------------

BoundReport make_report(std::string name, double lower, double estimate, double std_error, double upper) {
  BoundReport r{std::move(name), lower, estimate, std_error, upper, false, 0.0, 0.0, {}};
  r.satisfied = lower - 3.0 * std_error <= estimate && estimate <= upper + 3.0 * std_error;
  r.slack_lower = lower > 0.0 ? estimate / lower : std::numeric_limits<double>::infinity();
  r.slack_upper = estimate > 0.0 ? upper / estimate : std::numeric_limits<double>::infinity();
  return r;
}

namespace {

BoundReport theorem_report(int n, double diam, const EdgeStats& es, const ShadowEstimate& est) {
  const double c_low = c_n_bracket(std::max(n, 2)).lower;
  auto r = make_report("theorem_1_1", 2.0 * diam / es.max_length, est.mean, est.std_error,
                       std::numbers::pi * diam / (c_low * es.min_length));
  r.details = {{"gdiam", diam},
               {"m", es.min_length},
               {"M", es.max_length},
               {"c_n_lower", c_low},
               {"trials", static_cast<double>(est.trials)},
               {"degenerate", static_cast<double>(est.degenerate_count)}};
  return r;
}

BoundReport upper_report(std::string name, const VPolytope& p, double upper, const McOptions& opts) {
  const auto est = estimate_shadow_size(p, opts);
  const double diam = gdiam(p.vertices());
  const double lower = p.num_vertices() >= 2 ? 2.0 * diam / edge_stats(p).max_length : 1.0;
  auto r = make_report(std::move(name), lower, est.mean, est.std_error, upper);
  r.details = {{"gdiam", diam}, {"trials", static_cast<double>(est.trials)}};
  return r;
}

}  // namespace

BoundReport check_theorem_1_1(const VPolytope& p, const McOptions& opts) {
  return theorem_report(p.dim(), gdiam(p.vertices()), edge_stats(p), estimate_shadow_size(p, opts));
}

BoundReport check_theorem_1_1(const Zonotope& z, const McOptions& opts, ZonotopeCounting mode) {
  return theorem_report(z.dim(), zonotope_diameter(z), edge_stats(z), estimate_shadow_size(z, opts, mode));
}

KMParameters km_parameters(const VPolytope& p) {
  KMParameters k{0.0, std::numeric_limits<double>::infinity()};
  for (const auto& v : p.vertices()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] < -tol::kNonzero) throw NotStandardForm("km_parameters: negative coordinate");
      if (v[i] > tol::kNonzero) {
        k.gamma = std::max(k.gamma, v[i]);
        k.delta_km = std::min(k.delta_km, v[i]);
      }
    }
  }
  if (k.gamma == 0.0) throw std::invalid_argument("km_parameters: no nonzero coordinate");
  return k;
}

BoundReport km_report(const VPolytope& p, const McOptions& opts) {
  const auto km = km_parameters(p);
  const int n = std::max(p.dim(), 2);
  const double upper = std::numbers::pi * std::sqrt(static_cast<double>(p.dim())) * km.gamma /
                       (c_n_bracket(n).lower * km.delta_km);
  auto r = upper_report("km", p, upper, opts);
  r.details.emplace_back("gamma", km.gamma);
  r.details.emplace_back("delta_km", km.delta_km);
  return r;
}

BoundReport lattice_bound(const VPolytope& p, int k, const McOptions& opts) {
  if (k < 1) throw std::invalid_argument("lattice_bound: k must be >= 1");
  for (const auto& v : p.vertices()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i] - std::round(v[i])) > 1e-9 || v[i] < -1e-9 || v[i] > k + 1e-9) {
        throw std::invalid_argument("lattice_bound: vertex outside [0,k]^n ∩ Z^n");
      }
    }
  }
  const int n = std::max(p.dim(), 2);
  const double upper = std::numbers::pi * std::sqrt(static_cast<double>(p.dim())) * k / c_n_bracket(n).lower;
  auto r = upper_report("lattice", p, upper, opts);
  if (p.num_vertices() >= 2) r.details.emplace_back("m", edge_stats(p).min_length);
  return r;
}

std::optional<std::pair<long long, long long>> rational_reconstruct(double x, long long max_den) {
  for (long long q = 1; q <= max_den; ++q) {
    const double num = std::round(x * static_cast<double>(q));
    if (std::abs(num / static_cast<double>(q) - x) <= 1e-9) return std::make_pair(static_cast<long long>(num), q);
  }
  return std::nullopt;
}

BoundReport rational_bound(const VPolytope& p, long long alpha, long long beta, const McOptions& opts) {
  if (alpha < 1 || beta < 1) throw std::invalid_argument("rational_bound: alpha and beta must be >= 1");
  for (const auto& v : p.vertices()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const auto pq = rational_reconstruct(v[i], beta);
      if (!pq) throw std::invalid_argument("rational_bound: coordinate has no reconstruction with q <= beta");
      if (std::llabs(pq->first) > alpha) throw std::invalid_argument("rational_bound: numerator exceeds alpha");
    }
  }
  const int n = std::max(p.dim(), 2);
  const double upper = std::numbers::pi * std::sqrt(static_cast<double>(p.dim())) * static_cast<double>(alpha) *
                       static_cast<double>(beta * beta) / c_n_bracket(n).lower;
  auto r = upper_report("rational", p, upper, opts);
  if (p.num_vertices() >= 2) {
    const double m = edge_stats(p).min_length;
    r.details.emplace_back("m", m);
    r.details.emplace_back("m_floor", 1.0 / static_cast<double>(beta * beta));
    if (m < 1.0 / static_cast<double>(beta * beta) - 1e-12) r.satisfied = false;
  }
  return r;
}

// ---------------------------------------------------------------------------

long long integer_determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("integer_determinant: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  }
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * static_cast<long long>(m[n - 1][n - 1]);
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls fn for each k-subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

long long max_abs_subdeterminant(const IntMatrix& a) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) throw std::invalid_argument("max_abs_subdeterminant: empty matrix");
  const int cols = static_cast<int>(a[0].size());
  for (const auto& r : a) {
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("ragged matrix");
  }
  double total = 0.0;
  for (int s = 1; s <= std::min(rows, cols); ++s) total += binomial(rows, s) * binomial(cols, s);
  if (total > static_cast<double>(kMaxSubmatrices)) {
    throw SizeCapExceeded("max_abs_subdeterminant: more than 1e6 square submatrices");
  }
  long long best = 0;
  IntMatrix sub;
  for (int s = 1; s <= std::min(rows, cols); ++s) {
    sub.assign(static_cast<std::size_t>(s), std::vector<long long>(static_cast<std::size_t>(s)));
    for_each_subset(rows, s, [&](const std::vector<int>& ri) {
      for_each_subset(cols, s, [&](const std::vector<int>& ci) {
        for (int i = 0; i < s; ++i) {
          for (int j = 0; j < s; ++j) {
            sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                a[static_cast<std::size_t>(ri[static_cast<std::size_t>(i)])][static_cast<std::size_t>(ci[static_cast<std::size_t>(j)])];
          }
        }
        best = std::max(best, std::llabs(integer_determinant(sub)));
      });
    });
  }
  return best;
}

DeltaDeltaReport check_delta_Delta_relation(const VPolytope& p, const IntMatrix& facet_normals) {
  if (facet_normals.empty() || static_cast<int>(facet_normals[0].size()) != p.dim()) {
    throw InvalidDimension("facet normal matrix must have one column per coordinate");
  }
  DeltaDeltaReport r;
  r.delta = delta_of_polytope(p).delta;
  r.Delta = max_abs_subdeterminant(facet_normals);
  r.n = p.dim();
  r.threshold = 1.0 / (static_cast<double>(r.n) * static_cast<double>(r.Delta) * static_cast<double>(r.Delta));
  r.holds = r.delta >= r.threshold - 1e-12;
  return r;
}

}  // namespace shadowlab
