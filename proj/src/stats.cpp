#include "shadowlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "shadowlab/parallel.hpp"

namespace shadowlab::stats {

PairedSample collect_edge_sample(const VPolytope& p, Edge edge, const McOptions& opts) {
  if (edge.first > edge.second) std::swap(edge.first, edge.second);
  const auto& edges = p.edges();
  if (!std::binary_search(edges.begin(), edges.end(), edge)) {
    throw std::invalid_argument("collect_edge_sample: not an edge of the polytope");
  }
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  struct Obs {
    double l = 0.0;
    bool x = false;
  };
  const auto obs = parallel_map(opts.trials, opts.threads, [&](std::int64_t t) {
    const auto s = shadow(p, trial_frame(opts.seed, t, p.dim()));
    const Point2 a = project(s.frame, p.vertex(edge.first));
    const Point2 b = project(s.frame, p.vertex(edge.second));
    bool on_boundary = false;
    const auto& pre = s.preimage_indices;
    for (std::size_t i = 0; i < pre.size() && pre.size() >= 2; ++i) {
      const int c = pre[i];
      const int d = pre[(i + 1) % pre.size()];
      if ((c == edge.first && d == edge.second) || (c == edge.second && d == edge.first)) on_boundary = true;
    }
    return Obs{distance(a, b), on_boundary};
  });
  PairedSample out;
  out.l_values.reserve(obs.size());
  out.x_flags.reserve(obs.size());
  for (const auto& o : obs) {
    out.l_values.push_back(o.l);
    out.x_flags.push_back(o.x);
  }
  return out;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // P(K <= lambda) = sqrt(2 pi)/lambda * sum exp(-(2j-1)^2 pi^2 / (8 lambda^2))
    const double c = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int j = 1; j <= 20; ++j) sum += std::exp(c * (2 * j - 1) * (2 * j - 1));
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = nx * ny / (nx + ny);
  const double root = std::sqrt(ne);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("pearson: need equal sizes >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

CorrelationResult permutation_correlation(std::span<const double> x, std::span<const double> y,
                                          int permutations, std::uint64_t seed) {
  CorrelationResult res;
  res.r = pearson(x, y);
  if (std::isnan(res.r)) {
    res.defined = false;
    res.r = 0.0;
    return res;
  }
  // Centering is permutation invariant, so the statistic reduces to a dot
  // product of the centered vectors.
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  std::vector<double> cx(x.size()), cy(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    cx[i] = x[i] - mx;
    cy[i] = y[i] - my;
  }
  const double observed = std::abs(std::inner_product(cx.begin(), cx.end(), cy.begin(), 0.0));
  Rng rng(seed, 0x5eed);
  int extreme = 0;
  for (int p = 0; p < permutations; ++p) {
    std::shuffle(cy.begin(), cy.end(), rng.engine());
    const double s = std::abs(std::inner_product(cx.begin(), cx.end(), cy.begin(), 0.0));
    if (s >= observed * (1.0 - 1e-12)) ++extreme;
  }
  res.p_value = (1.0 + extreme) / (1.0 + permutations);
  return res;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

IndependenceResult independence_test(const PairedSample& s, double alpha, int permutations, std::uint64_t seed) {
  if (s.l_values.size() != s.x_flags.size() || s.l_values.empty()) {
    throw std::invalid_argument("independence_test: malformed paired sample");
  }
  IndependenceResult res;
  std::vector<double> with, without, flags;
  flags.reserve(s.x_flags.size());
  for (std::size_t i = 0; i < s.l_values.size(); ++i) {
    (s.x_flags[i] ? with : without).push_back(s.l_values[i]);
    flags.push_back(s.x_flags[i] ? 1.0 : 0.0);
  }
  res.n_true = with.size();
  res.n_false = without.size();
  if (with.empty() || without.empty()) return res;  // single class: inconclusive

  res.correlation = permutation_correlation(s.l_values, flags, permutations, seed);
  res.ks = ks_two_sample(with, without);
  if (res.ks.p_value < alpha || (res.correlation.defined && res.correlation.p_value < alpha)) {
    res.verdict = Verdict::kFail;
  } else {
    res.verdict = res.correlation.defined ? Verdict::kPass : Verdict::kInconclusive;
  }
  return res;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

MeanCi mean_ci(std::span<const double> values, double confidence) {
  if (values.size() < 2) throw std::invalid_argument("mean_ci: need at least 2 values");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("mean_ci: confidence in (0, 1)");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (n - 1.0) / n);
  return {mean, normal_quantile(0.5 + confidence / 2.0) * se};
}

}  // namespace shadowlab::stats
