#include "shadowlab/dual_fan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace shadowlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

double ArcDecomposition::total_length() const {
  double total = 0.0;
  for (const auto& a : arcs) total += a.length();
  return total;
}

double ArcDecomposition::inscribed_perimeter() const {
  // Chord across an arc of length L has length 2 sin(L / 2).
  double total = 0.0;
  for (const auto& a : arcs) total += 2.0 * std::sin(std::min(a.length(), kTwoPi) / 2.0);
  return total;
}

ArcCount arc_count(const VPolytope& p, const Frame2& f) {
  if (p.num_vertices() < 2) throw std::invalid_argument("arc_count: need at least 2 vertices");
  if (p.dim() != f.dim()) throw InvalidDimension("arc_count: dimension mismatch");
  const int k = p.num_vertices();
  std::vector<double> pu(static_cast<std::size_t>(k)), pv(static_cast<std::size_t>(k));
  double scale = 0.0;
  for (int i = 0; i < k; ++i) {
    pu[static_cast<std::size_t>(i)] = f.u().dot(p.vertex(i));
    pv[static_cast<std::size_t>(i)] = f.v().dot(p.vertex(i));
    scale = std::max({scale, std::abs(pu[static_cast<std::size_t>(i)]), std::abs(pv[static_cast<std::size_t>(i)])});
  }
  if (scale == 0.0) scale = 1.0;

  ArcCount out{0, {f, {}}};
  std::vector<double> phi;
  phi.reserve(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) {
    phi.clear();
    for (int w = 0; w < k; ++w) {
      if (w == v) continue;
      const double a = pu[static_cast<std::size_t>(v)] - pu[static_cast<std::size_t>(w)];
      const double b = pv[static_cast<std::size_t>(v)] - pv[static_cast<std::size_t>(w)];
      if (std::hypot(a, b) <= tol::kArc * scale) continue;
      phi.push_back(wrap_angle(std::atan2(b, a)));
    }
    if (phi.empty()) {
      out.decomposition.arcs.push_back({v, 0.0, kTwoPi});
      continue;
    }
    std::sort(phi.begin(), phi.end());
    // Smallest circular window holding every center: complement of the
    // largest gap.
    double gap = phi.front() + kTwoPi - phi.back();
    std::size_t first = 0;
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
      if (phi[i + 1] - phi[i] > gap) {
        gap = phi[i + 1] - phi[i];
        first = i + 1;
      }
    }
    const double spread = kTwoPi - gap;
    const double len = std::numbers::pi - spread;
    if (len <= tol::kArc) continue;
    const double start = wrap_angle(phi[first] + spread - std::numbers::pi / 2.0);
    out.decomposition.arcs.push_back({v, start, start + len});
  }
  if (out.decomposition.arcs.empty()) throw std::logic_error("arc_count: every arc is empty");
  std::sort(out.decomposition.arcs.begin(), out.decomposition.arcs.end(),
            [](const Arc& a, const Arc& b) { return a.angle_start < b.angle_start; });
  out.count = static_cast<int>(out.decomposition.arcs.size());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> ray_hyperplane_distances(std::span<const Vec> rays) {
  const int k = static_cast<int>(rays.size());
  if (k < 1) throw std::invalid_argument("need at least one ray");
  const auto n = rays[0].size();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    Mat others(n, k - 1);
    for (int i = 0, c = 0; i < k; ++i) {
      if (i != j) others.col(c++) = rays[static_cast<std::size_t>(i)];
    }
    out.push_back(dist_point_span(rays[static_cast<std::size_t>(j)].normalized(), others));
  }
  return out;
}

DeltaReport delta_of_polytope(const VPolytope& p) {
  const auto cones = normal_cones(p);
  DeltaReport r;
  r.delta = std::numeric_limits<double>::infinity();
  for (const auto& cone : cones) {
    const auto d = ray_hyperplane_distances(cone.rays);
    const auto it = std::min_element(d.begin(), d.end());
    r.per_cone_minima.push_back(*it);
    if (*it < r.delta) {
      r.delta = *it;
      r.witness = {cone.vertex_index, static_cast<int>(it - d.begin())};
    }
  }
  return r;
}

double augmented_permutahedron_delta_closed_form(int n) {
  if (n < 2) throw InvalidDimension("n must be >= 2");
  double best = 1.0;
  for (int k = 1; k < n; ++k) {
    const double denom = std::sqrt(2.0) * ((n - k) * std::sqrt(k) + k * std::sqrt(n - k));
    best = std::min(best, n / denom);
  }
  return best;
}

double augmented_permutahedron_delta_exact(int n) {
  if (n < 2) throw InvalidDimension("n must be >= 2");
  double best = 1.0;
  for (int k = 1; k < n; ++k) {
    best = std::min(best, std::sqrt(static_cast<double>(n)) / (std::sqrt(2.0) * std::sqrt(static_cast<double>(k) * (n - k))));
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

// Orthonormal basis of span(rays) plus the rays in those coordinates.
struct ConeFrame {
  Mat basis;  // n x k
  Mat rays;   // k x k, columns
  Eigen::PartialPivLU<Mat> lu;
};

ConeFrame cone_frame(std::span<const Vec> rays) {
  const int k = static_cast<int>(rays.size());
  if (k < 1) throw std::invalid_argument("cone needs at least one ray");
  const auto n = rays[0].size();
  if (k > n) throw std::invalid_argument("more rays than dimensions");
  Mat r(n, k);
  for (int j = 0; j < k; ++j) {
    if (rays[static_cast<std::size_t>(j)].size() != n) throw InvalidDimension("ray dimension mismatch");
    r.col(j) = rays[static_cast<std::size_t>(j)].normalized();
  }
  Eigen::HouseholderQR<Mat> qr(r);
  Mat q = qr.householderQ() * Mat::Identity(n, k);
  Mat local = q.transpose() * r;
  if (std::abs(local.determinant()) <= tol::kRay) throw std::invalid_argument("cone rays are not independent");
  return {q, local, Eigen::PartialPivLU<Mat>(local)};
}

ConeSamples sample_cone(std::span<const Vec> rays, Rng& rng, std::int64_t count, bool sphere) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  const ConeFrame cf = cone_frame(rays);
  const int k = static_cast<int>(cf.rays.cols());
  ConeSamples out;
  out.points.reserve(static_cast<std::size_t>(count));
  while (static_cast<std::int64_t>(out.points.size()) < count) {
    if (out.proposals >= kConeProposalCap) {
      const double rate = static_cast<double>(out.points.size()) / static_cast<double>(out.proposals);
      if (rate < kConeAcceptanceFloor) throw TooThinCone("cone acceptance rate below 1e-6");
    }
    ++out.proposals;
    Vec y = sample_sphere(rng, k);
    if (!sphere) y *= std::pow(rng.uniform(), 1.0 / k);
    const Vec coords = cf.lu.solve(y);
    if (coords.minCoeff() < -tol::kConeMember) continue;
    out.points.push_back(cf.basis * y);
  }
  out.acceptance_rate = static_cast<double>(out.points.size()) / static_cast<double>(out.proposals);
  return out;
}

double min_ray_distance(std::span<const Vec> rays) {
  const auto d = ray_hyperplane_distances(rays);
  return *std::min_element(d.begin(), d.end());
}

Mat others_matrix(std::span<const Vec> rays, int skip) {
  const int k = static_cast<int>(rays.size());
  Mat m(rays[0].size(), k - 1);
  for (int i = 0, c = 0; i < k; ++i) {
    if (i != skip) m.col(c++) = rays[static_cast<std::size_t>(i)];
  }
  return m;
}

ArrangementResult arrangement_mean(std::span<const Vec> rays, std::int64_t trials, Rng& rng, bool sphere) {
  if (rays.size() < 2) throw std::invalid_argument("arrangement check needs k >= 2 rays");
  const auto samples = sample_cone(rays, rng, trials, sphere);
  const int k = static_cast<int>(rays.size());
  std::vector<Mat> spans;
  for (int j = 0; j < k; ++j) spans.push_back(others_matrix(rays, j));
  double sum = 0.0, sumsq = 0.0;
  for (const auto& x : samples.points) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : spans) d = std::min(d, dist_point_span(x, s));
    sum += d;
    sumsq += d * d;
  }
  const double nn = static_cast<double>(samples.points.size());
  ArrangementResult r;
  r.empirical_mean = sum / nn;
  const double var = nn > 1 ? std::max(0.0, (sumsq - nn * r.empirical_mean * r.empirical_mean) / (nn - 1)) : 0.0;
  r.std_error = std::sqrt(var / nn);
  r.h = min_ray_distance(rays);
  r.lower_bound = r.h / (8.0 * k * k);
  r.satisfied = r.empirical_mean >= r.lower_bound - 3.0 * r.std_error;
  return r;
}

}  // namespace

ConeSamples sample_cone_ball(std::span<const Vec> rays, Rng& rng, std::int64_t count) {
  return sample_cone(rays, rng, count, false);
}

ConeSamples sample_cone_sphere(std::span<const Vec> rays, Rng& rng, std::int64_t count) {
  return sample_cone(rays, rng, count, true);
}

double dist_to_arrangement(const Vec& x, std::span<const Vec> rays) {
  double d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < static_cast<int>(rays.size()); ++j) d = std::min(d, dist_point_span(x, others_matrix(rays, j)));
  return d;
}

Lemma31Result validate_lemma_3_1(std::span<const Vec> rays, int hyperplane_index, double eps,
                                 std::int64_t trials, Rng& rng) {
  const int k = static_cast<int>(rays.size());
  if (k < 2) throw std::invalid_argument("lemma 3.1 needs k >= 2 rays");
  if (hyperplane_index < 0 || hyperplane_index >= k) throw std::out_of_range("hyperplane index out of range");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Mat span = others_matrix(rays, hyperplane_index);
  const auto samples = sample_cone_ball(rays, rng, trials);
  std::int64_t hits = 0;
  for (const auto& x : samples.points) {
    if (dist_point_span(x, span) <= eps) ++hits;
  }
  Lemma31Result r;
  const double nn = static_cast<double>(samples.points.size());
  r.empirical_prob = static_cast<double>(hits) / nn;
  r.std_error = std::sqrt(r.empirical_prob * (1.0 - r.empirical_prob) / nn);
  r.h = dist_point_span(rays[static_cast<std::size_t>(hyperplane_index)].normalized(), span);
  r.bound = (std::pow(1.0 + eps, k) - 1.0) / r.h;
  r.satisfied = r.empirical_prob <= r.bound + 3.0 * r.std_error;
  return r;
}

ArrangementResult validate_lemma_3_2(std::span<const Vec> rays, std::int64_t trials, Rng& rng) {
  return arrangement_mean(rays, trials, rng, false);
}

ArrangementResult validate_cor_3_4(std::span<const Vec> rays, std::int64_t trials, Rng& rng) {
  return arrangement_mean(rays, trials, rng, true);
}

}  // namespace shadowlab
