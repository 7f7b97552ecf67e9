#include "shadowlab/shadow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "shadowlab/parallel.hpp"

namespace shadowlab {

Frame2 trial_frame(std::uint64_t seed, std::int64_t trial, int n) {
  Rng rng(seed, static_cast<std::uint64_t>(trial));
  return sample_frame(rng, n);
}

ShadowPolygon shadow(const VPolytope& p, const Frame2& f) {
  if (p.dim() != f.dim()) throw InvalidDimension("shadow: frame and polytope dimensions differ");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(p.num_vertices()));
  double scale = 0.0;
  for (const auto& v : p.vertices()) {
    pts.push_back(project(f, v));
    scale = std::max({scale, std::abs(pts.back().x), std::abs(pts.back().y)});
  }
  if (scale == 0.0) scale = 1.0;

  const auto hull = hull2d(pts);
  ShadowPolygon s{f, {}, hull, hull.size() < 3};
  s.hull_points.reserve(hull.size());
  for (int idx : hull) s.hull_points.push_back(pts[static_cast<std::size_t>(idx)]);

  const double same = tol::kHull * scale;
  for (int idx : hull) {
    for (int j = 0; j < p.num_vertices() && !s.degenerate; ++j) {
      if (j == idx) continue;
      const auto& a = pts[static_cast<std::size_t>(idx)];
      const auto& b = pts[static_cast<std::size_t>(j)];
      if (std::abs(a.x - b.x) <= same && std::abs(a.y - b.y) <= same) s.degenerate = true;
    }
  }
  return s;
}

std::vector<int> shadow_path(const ShadowPolygon& s) {
  const int h = s.vertex_count();
  if (h < 3) throw std::invalid_argument("shadow_path: degenerate shadow");
  auto lex_less = [&](int a, int b) {
    const auto& p = s.hull_points[static_cast<std::size_t>(a)];
    const auto& q = s.hull_points[static_cast<std::size_t>(b)];
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  };
  int lo = 0, hi = 0;
  for (int i = 1; i < h; ++i) {
    if (lex_less(i, lo)) lo = i;
    if (lex_less(hi, i)) hi = i;
  }
  // Upper chain runs clockwise from min to max.
  std::vector<int> path{s.preimage_indices[static_cast<std::size_t>(lo)]};
  for (int i = lo; i != hi;) {
    i = (i - 1 + h) % h;
    path.push_back(s.preimage_indices[static_cast<std::size_t>(i)]);
  }
  return path;
}

std::vector<TrialRecord> shadow_trials(const VPolytope& p, const McOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (p.dim() < 2) {
    // A polytope in R^1 has no 2-frame; its image under any projection of
    // an embedding into R^2 is a segment (or a point).
    const TrialRecord r{std::min(p.num_vertices(), 2), true};
    return std::vector<TrialRecord>(static_cast<std::size_t>(opts.trials), r);
  }
  return parallel_map(opts.trials, opts.threads, [&](std::int64_t t) {
    const auto s = shadow(p, trial_frame(opts.seed, t, p.dim()));
    return TrialRecord{s.vertex_count(), s.degenerate};
  });
}

ShadowEstimate summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no trials");
  ShadowEstimate e;
  e.trials = static_cast<std::int64_t>(records.size());
  e.min_seen = records.front().vertex_count;
  e.max_seen = records.front().vertex_count;
  double sum = 0.0;
  for (const auto& r : records) {
    sum += r.vertex_count;
    e.min_seen = std::min(e.min_seen, r.vertex_count);
    e.max_seen = std::max(e.max_seen, r.vertex_count);
    if (r.degenerate) ++e.degenerate_count;
  }
  e.mean = sum / static_cast<double>(e.trials);
  if (e.trials > 1) {
    double ss = 0.0;
    for (const auto& r : records) ss += (r.vertex_count - e.mean) * (r.vertex_count - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(e.trials - 1) / static_cast<double>(e.trials));
  }
  return e;
}

ShadowEstimate estimate_shadow_size(const VPolytope& p, const McOptions& opts) {
  return summarize(shadow_trials(p, opts));
}

ShadowEstimate estimate_shadow_size(const Zonotope& z, const McOptions& opts, ZonotopeCounting mode) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (mode == ZonotopeCounting::kEnumerate) return estimate_shadow_size(zonotope_vertices(z), opts);
  const int exact = zonotope_shadow_size_exact(z);
  return {static_cast<double>(exact), 0.0, opts.trials, exact, exact, 0};
}

int zonotope_shadow_size_exact(const Zonotope& z) {
  return 2 * static_cast<int>(z.parallel_classes().size());
}

double zonotope_diameter(const Zonotope& z) {
  const int g = z.num_generators();
  if (g > kMaxDiameterGenerators) {
    throw SizeCapExceeded("zonotope_diameter: more than " + std::to_string(kMaxDiameterGenerators) +
                          " generators");
  }
  if (g == 0) return 0.0;
  const auto& gens = z.generators();
  // Gray-code walk over sign vectors with s_0 = +1 (the rest is symmetric).
  Vec sum = Vec::Zero(z.dim());
  for (const auto& v : gens) sum += v;
  std::vector<int> sign(static_cast<std::size_t>(g), 1);
  double best = sum.squaredNorm();
  const std::uint64_t steps = std::uint64_t{1} << (g - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int bit = std::countr_zero(k) + 1;
    sum -= 2.0 * sign[static_cast<std::size_t>(bit)] * gens[static_cast<std::size_t>(bit)];
    sign[static_cast<std::size_t>(bit)] = -sign[static_cast<std::size_t>(bit)];
    best = std::max(best, sum.squaredNorm());
  }
  return std::sqrt(best);
}

}  // namespace shadowlab
