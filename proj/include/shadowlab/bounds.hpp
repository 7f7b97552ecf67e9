#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/polytope.hpp"
#include "shadowlab/shadow.hpp"

namespace shadowlab {

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return lower <= x && x <= upper; }
};

// --- Projection of a unit segment onto a random 2-frame -------------------

/// Gamma(n/2) / Gamma((n-1)/2), via log-gamma.
double gamma_ratio(int n);

/// Normalizing constant of the density of one coordinate of a uniform point
/// on S^{n-1}: Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)).
double b1_density_constant(int n);

/// Density of that coordinate at t in (-1, 1).
double b1_density(int n, double t);

/// Integral of b1_density over (-1, 1) by composite Simpson after t = sin(theta),
/// which removes the endpoint singularity at n = 2.
double integrate_b1_density(int n, int intervals = 4000);

/// E|B_1| = (2 / (n-1)) Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)).
double expected_abs_coordinate(int n);

/// Chu's gamma-ratio bracket as printed, applied to E|B_1|:
/// (2/(n-1)) sqrt((2n-1)(n-1)/((2n-2)2)) / sqrt(pi) and
/// (2/(n-1)) sqrt((2n-2)(n-1)/((2n-3)2)) / sqrt(pi).
Bracket chu_bracket(int n);

/// The same two expressions as a bracket on the raw ratio they bound,
/// Gamma((n+1)/2) / Gamma(n/2).
Bracket chu_ratio_bracket(int n);

/// C_n in [sqrt(2) E|B_1|, 2 E|B_1|] from the 1-norm / 2-norm sandwich in R^2.
Bracket c_n_bracket(int n);

/// C_n = E|(B_1, B_2)| = Gamma(3/2) Gamma(n/2) / Gamma((n+1)/2).
double c_n_closed_form(int n);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

/// Monte Carlo C_n: mean length of the projection of e_1 under random frames.
MeanEstimate estimate_c_n(int n, const McOptions& opts);

/// Monte Carlo E|B_1| from uniform sphere samples.
MeanEstimate estimate_abs_coordinate(int n, const McOptions& opts);

// --- Bound reports ---------------------------------------------------------

struct BoundReport {
  std::string name;
  double lower = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double upper = 0.0;
  bool satisfied = false;
  double slack_lower = 0.0;  // estimate / lower
  double slack_upper = 0.0;  // upper / estimate
  std::vector<std::pair<std::string, double>> details;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Fills satisfied and slack ratios: lower - 3 SE <= estimate <= upper + 3 SE.
BoundReport make_report(std::string name, double lower, double estimate, double std_error, double upper);

/// 2 gdiam / M <= E[s] <= pi gdiam / (C_n m), with C_n at its bracket's
/// lower end.
BoundReport check_theorem_1_1(const VPolytope& p, const McOptions& opts);
BoundReport check_theorem_1_1(const Zonotope& z, const McOptions& opts,
                              ZonotopeCounting mode = ZonotopeCounting::kExact);

struct KMParameters {
  double gamma = 0.0;     // largest nonzero coordinate
  double delta_km = 0.0;  // smallest nonzero coordinate
};

class NotStandardForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

KMParameters km_parameters(const VPolytope& p);
/// Upper surrogate pi sqrt(n) gamma / (C_n_low delta_km) against E[s].
BoundReport km_report(const VPolytope& p, const McOptions& opts);

/// Vertices must lie in [0, k]^n with integer coordinates.
BoundReport lattice_bound(const VPolytope& p, int k, const McOptions& opts);

/// Smallest q <= max_den with |x - p/q| <= 1e-9, as (p, q).
std::optional<std::pair<long long, long long>> rational_reconstruct(double x, long long max_den);

/// Coordinates p/q with |p| <= alpha, q <= beta; upper pi sqrt(n) alpha beta^2 / C_n_low.
BoundReport rational_bound(const VPolytope& p, long long alpha, long long beta, const McOptions& opts);

// --- Subdeterminants -------------------------------------------------------

using IntMatrix = std::vector<std::vector<long long>>;

inline constexpr std::int64_t kMaxSubmatrices = 1'000'000;

/// Exact Bareiss determinant.
long long integer_determinant(const IntMatrix& a);

/// Largest |det| over all square submatrices, exhaustively.
long long max_abs_subdeterminant(const IntMatrix& a);

struct DeltaDeltaReport {
  double delta = 0.0;
  long long Delta = 0;
  int n = 0;
  double threshold = 0.0;  // 1 / (n Delta^2)
  bool holds = false;
};

DeltaDeltaReport check_delta_Delta_relation(const VPolytope& p, const IntMatrix& facet_normals);

}  // namespace shadowlab
