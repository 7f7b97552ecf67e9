#include "shadowlab/core_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shadowlab {

Vec make_vec(std::span<const double> coords) {
  if (coords.empty()) throw InvalidDimension("vector must have at least one coordinate");
  Vec v(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) throw std::invalid_argument("non-finite vector entry");
    v[static_cast<Eigen::Index>(i)] = coords[i];
  }
  return v;
}

Vec make_vec(std::initializer_list<double> coords) {
  return make_vec(std::span<const double>(coords.begin(), coords.size()));
}

Vec unit_vector(int n, int i) {
  if (n < 1 || i < 0 || i >= n) throw InvalidDimension("unit_vector index out of range");
  Vec e = Vec::Zero(n);
  e[i] = 1.0;
  return e;
}

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Frame2::Frame2(Vec u, Vec v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size()) throw InvalidDimension("frame vectors differ in dimension");
  if (u_.size() < 2) throw InvalidDimension("frame requires dimension >= 2");
  if (!u_.allFinite() || !v_.allFinite()) throw std::invalid_argument("non-finite frame");
  if (std::abs(u_.norm() - 1.0) > tol::kFrame || std::abs(v_.norm() - 1.0) > tol::kFrame ||
      std::abs(u_.dot(v_)) > tol::kFrame) {
    throw std::invalid_argument("frame is not orthonormal");
  }
}

Frame2 Frame2::axis(int n) { return Frame2(unit_vector(n, 0), unit_vector(n, 1)); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::seed_seq::result_type low32(std::uint64_t x) {
  return static_cast<std::seed_seq::result_type>(x & 0xffffffffULL);
}

std::mt19937_64 seeded_engine(std::uint64_t master, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(master);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{low32(a), low32(a >> 32), low32(b), low32(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(seeded_engine(master_seed, stream_index)) {}

Rng Rng::derive(std::uint64_t child_index) const {
  return Rng(splitmix64(master_seed_ ^ splitmix64(stream_index_)), child_index);
}

double Rng::normal() { return normal_(engine_); }
double Rng::uniform() { return uniform_(engine_); }
std::uint64_t Rng::next_u64() { return engine_(); }

Vec sample_gaussian_vector(Rng& rng, int n) {
  if (n < 1) throw InvalidDimension("sample_gaussian_vector: n must be >= 1");
  Vec g(n);
  for (int i = 0; i < n; ++i) g[i] = rng.normal();
  return g;
}

Vec sample_sphere(Rng& rng, int n) {
  for (;;) {
    Vec g = sample_gaussian_vector(rng, n);
    const double r = g.norm();
    if (r > 1e-150) return g / r;
  }
}

Frame2 sample_frame(Rng& rng, int n) {
  if (n < 2) throw InvalidDimension("sample_frame: n must be >= 2");
  for (;;) {
    Vec g1 = sample_gaussian_vector(rng, n);
    Vec g2 = sample_gaussian_vector(rng, n);
    const double n1 = g1.norm();
    if (n1 < 1e-150) continue;
    Vec u = g1 / n1;
    Vec w = g2 - u.dot(g2) * u;
    const double nw = w.norm();
    if (nw < 1e-8 * g2.norm() || nw < 1e-150) continue;
    Vec v = w / nw;
    // One more projection pass keeps |u.v| well under 1e-12 in high dimension.
    v -= u.dot(v) * u;
    v.normalize();
    return Frame2(std::move(u), std::move(v));
  }
}

Point2 project(const Frame2& f, const Vec& x) {
  if (x.size() != f.dim()) throw InvalidDimension("project: dimension mismatch");
  return {f.u().dot(x), f.v().dot(x)};
}

std::vector<int> hull2d(std::span<const Point2> points, double tol) {
  if (points.empty()) throw std::invalid_argument("hull2d: empty input");
  if (!(tol > 0.0)) throw std::invalid_argument("hull2d: tol must be positive");

  double scale = 0.0;
  for (const auto& p : points) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  if (scale == 0.0) scale = 1.0;
  const double same = tol * scale;
  const double turn = tol * scale * scale;

  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& p = points[a];
    const auto& q = points[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return a < b;
  });

  auto close = [&](int a, int b) {
    return std::abs(points[a].x - points[b].x) <= same &&
           std::abs(points[a].y - points[b].y) <= same;
  };

  std::vector<int> uniq;
  uniq.reserve(order.size());
  for (int idx : order) {
    bool dup = false;
    for (auto it = uniq.rbegin(); it != uniq.rend(); ++it) {
      if (points[*it].x < points[idx].x - same) break;
      if (close(*it, idx)) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(idx);
  }
  if (uniq.size() == 1) return uniq;

  std::vector<int> hull;
  hull.reserve(2 * uniq.size());
  auto build = [&](auto first, auto last, std::size_t floor) {
    for (auto it = first; it != last; ++it) {
      while (hull.size() >= floor + 2 &&
             cross(points[hull[hull.size() - 2]], points[hull.back()], points[*it]) <= turn) {
        hull.pop_back();
      }
      hull.push_back(*it);
    }
  };
  build(uniq.begin(), uniq.end(), 0);
  const std::size_t lower_size = hull.size();
  build(uniq.rbegin() + 1, uniq.rend(), lower_size - 1);
  hull.pop_back();

  // Degenerate to a segment: the chains retrace each other.
  if (hull.size() == 2 && close(hull[0], hull[1])) hull.pop_back();
  return hull;
}

double perimeter(std::span<const Point2> polygon) {
  if (polygon.size() < 2) throw std::invalid_argument("perimeter: need at least 2 points");
  double total = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    total += distance(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return total;
}

double gdiam(std::span<const Vec> points) {
  if (points.empty()) throw std::invalid_argument("gdiam: empty input");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, (points[i] - points[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

double gdiam(std::span<const Point2> points) {
  if (points.empty()) throw std::invalid_argument("gdiam: empty input");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j]));
    }
  }
  return best;
}

double dist_point_hyperplane(const Vec& x, const Vec& normal) {
  if (x.size() != normal.size()) throw InvalidDimension("dist_point_hyperplane: dimension mismatch");
  const double nn = normal.norm();
  if (nn == 0.0) throw std::invalid_argument("dist_point_hyperplane: zero normal");
  return std::abs(normal.dot(x)) / nn;
}

double dist_point_span(const Vec& x, const Mat& basis) {
  if (basis.cols() == 0) return x.norm();
  if (basis.rows() != x.size()) throw InvalidDimension("dist_point_span: dimension mismatch");
  Eigen::ColPivHouseholderQR<Mat> qr(basis);
  const Vec coeffs = qr.solve(x);
  return (x - basis * coeffs).norm();
}

}  // namespace shadowlab
