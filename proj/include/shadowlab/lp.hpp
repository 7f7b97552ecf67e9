#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "shadowlab/core_geom.hpp"

namespace shadowlab::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMaximize, kMinimize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Constraint {
  Vec coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// Dense LP over m variables. Variables are nonnegative unless flagged free.
struct LinearProgram {
  int num_vars = 0;
  std::optional<Vec> objective;  // absent: pure feasibility
  Sense sense = Sense::kMaximize;
  std::vector<Constraint> constraints;
  std::vector<bool> free_vars;  // empty: all nonnegative

  void add(Vec coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
};

struct Solution {
  Status status = Status::kInfeasible;
  Vec x;
  double value = 0.0;

  bool feasible() const { return status != Status::kInfeasible; }
};

class SolverStalled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long kIterationCap = 1'000'000;

/// Two-phase dense simplex with Bland's rule. Rows are scaled to unit
/// max-norm; feasibility is certified when the phase-1 optimum is below
/// tol::kLpFeasible.
Solution solve(const LinearProgram& lp);

/// True iff some linear functional is maximized exactly on {v_i, v_j}.
bool is_edge(std::span<const Vec> vertices, int i, int j);

/// True iff point i is not a convex combination of the other points.
bool is_extreme(std::span<const Vec> points, int i);

}  // namespace shadowlab::lp
