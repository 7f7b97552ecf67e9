#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shadowlab/tolerances.hpp"

namespace shadowlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds a vector from coordinates, rejecting NaN/Inf.
Vec make_vec(std::span<const double> coords);
Vec make_vec(std::initializer_list<double> coords);

/// Standard basis vector e_i in R^n (0-based i).
Vec unit_vector(int n, int i);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

double cross(Point2 o, Point2 a, Point2 b);
double distance(Point2 a, Point2 b);

/// Orthonormal pair (u, v) defining the projection x -> (u.x, v.x).
class Frame2 {
 public:
  /// Validates unit norms and orthogonality to 1e-12.
  Frame2(Vec u, Vec v);

  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }
  int dim() const { return static_cast<int>(u_.size()); }

  /// (e_1, e_2) in R^n.
  static Frame2 axis(int n);

 private:
  Vec u_;
  Vec v_;
};

/// Counter-based random stream: the pair (master_seed, stream_index) fully
/// determines the sequence, so trials can run in any order or thread.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Independent child stream; used to hand out per-trial generators.
  Rng derive(std::uint64_t child_index) const;

  double normal();
  double uniform();  // [0, 1)
  std::uint64_t next_u64();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

Vec sample_gaussian_vector(Rng& rng, int n);

/// Uniform point on S^{n-1}.
Vec sample_sphere(Rng& rng, int n);

/// Haar-uniform orthonormal 2-frame via Gram-Schmidt on two Gaussians.
Frame2 sample_frame(Rng& rng, int n);

Point2 project(const Frame2& f, const Vec& x);

/// Counterclockwise indices of the extreme points of the planar hull
/// (Andrew's monotone chain). Collinear and duplicate points within
/// tol * scale^2 of the orientation test are dropped; among duplicates the
/// lowest index is kept. A single distinct point yields one index.
std::vector<int> hull2d(std::span<const Point2> points, double tol = tol::kHull);

/// Closed perimeter of an ordered polygon (a segment counts twice).
double perimeter(std::span<const Point2> polygon);

/// Largest pairwise Euclidean distance, by exhaustive scan.
double gdiam(std::span<const Vec> points);
double gdiam(std::span<const Point2> points);

/// Distance from x to the linear hyperplane with the given normal.
double dist_point_hyperplane(const Vec& x, const Vec& normal);

/// Distance from x to span(columns of basis); an empty basis is {0}.
double dist_point_span(const Vec& x, const Mat& basis);

}  // namespace shadowlab
