#include "shadowlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shadowlab::lp {

namespace {

constexpr double kPivot = 1e-9;
constexpr double kEdgeWeightTol = 1e-7;

// Dense tableau in canonical form: basis columns are unit vectors.
struct Tableau {
  Mat a;                  // rows x cols
  Vec b;                  // rows
  std::vector<int> basis; // rows
  long iterations = 0;

  int rows() const { return static_cast<int>(a.rows()); }
  int cols() const { return static_cast<int>(a.cols()); }

  void pivot(int r, int c) {
    const double p = a(r, c);
    a.row(r) /= p;
    b[r] /= p;
    a(r, c) = 1.0;
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double f = a(i, c);
      if (f == 0.0) continue;
      a.row(i) -= f * a.row(r);
      a(i, c) = 0.0;
      b[i] -= f * b[r];
      if (b[i] < 0.0 && b[i] > -1e-13) b[i] = 0.0;
    }
    basis[r] = c;
  }

  // Minimizes cost over columns allowed[c]; returns false when unbounded.
  bool minimize(const Vec& cost, const std::vector<bool>& allowed) {
    for (;;) {
      if (++iterations > kIterationCap) throw SolverStalled("simplex iteration cap exceeded");
      // Recomputed every pivot; incremental updates drift on degenerate LPs.
      Vec reduced = cost;
      for (int i = 0; i < rows(); ++i) reduced -= cost[basis[i]] * a.row(i).transpose();
      int enter = -1;
      for (int c = 0; c < cols(); ++c) {
        if (allowed[c] && reduced[c] < -kPivot) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (a(i, enter) <= kPivot) continue;
        const double ratio = b[i] / a(i, enter);
        if (ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 && basis[i] < basis[leave]) {
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution solve(const LinearProgram& lp) {
  const int m = lp.num_vars;
  if (m < 1) throw InvalidDimension("LP needs at least one variable");
  if (lp.objective && lp.objective->size() != m) throw InvalidDimension("objective dimension mismatch");
  if (!lp.free_vars.empty() && static_cast<int>(lp.free_vars.size()) != m) {
    throw InvalidDimension("free_vars size mismatch");
  }
  for (const auto& c : lp.constraints) {
    if (c.coeffs.size() != m) throw InvalidDimension("constraint dimension mismatch");
    if (!c.coeffs.allFinite() || !std::isfinite(c.rhs)) throw std::invalid_argument("non-finite LP entry");
  }

  // Column layout: structural (free vars split into +/-), slacks, artificials.
  std::vector<int> pos_col(m), neg_col(m, -1);
  int ncols = 0;
  for (int j = 0; j < m; ++j) {
    pos_col[j] = ncols++;
    if (!lp.free_vars.empty() && lp.free_vars[j]) neg_col[j] = ncols++;
  }
  const int structural = ncols;

  struct Row {
    Vec coeffs;
    Relation rel;
    double rhs;
  };
  std::vector<Row> rows;
  for (const auto& c : lp.constraints) {
    Row r{c.coeffs, c.relation, c.rhs};
    const double scale = r.coeffs.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      const bool ok = (r.rel == Relation::kLessEqual && r.rhs >= -tol::kLpFeasible) ||
                      (r.rel == Relation::kGreaterEqual && r.rhs <= tol::kLpFeasible) ||
                      (r.rel == Relation::kEqual && std::abs(r.rhs) <= tol::kLpFeasible);
      if (!ok) return {Status::kInfeasible, {}, 0.0};
      continue;
    }
    r.coeffs /= scale;
    r.rhs /= scale;
    if (r.rhs < 0.0) {
      r.coeffs = -r.coeffs;
      r.rhs = -r.rhs;
      if (r.rel == Relation::kLessEqual) r.rel = Relation::kGreaterEqual;
      else if (r.rel == Relation::kGreaterEqual) r.rel = Relation::kLessEqual;
    }
    rows.push_back(std::move(r));
  }

  const int nrows = static_cast<int>(rows.size());
  int nslack = 0, nart = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::kEqual) ++nslack;
    if (r.rel != Relation::kLessEqual) ++nart;
  }
  const int art_begin = structural + nslack;
  const int total = art_begin + nart;

  Tableau t;
  t.a = Mat::Zero(nrows, total);
  t.b = Vec::Zero(nrows);
  t.basis.assign(nrows, -1);
  int slack = structural, art = art_begin;
  for (int i = 0; i < nrows; ++i) {
    const auto& r = rows[i];
    for (int j = 0; j < m; ++j) {
      t.a(i, pos_col[j]) = r.coeffs[j];
      if (neg_col[j] >= 0) t.a(i, neg_col[j]) = -r.coeffs[j];
    }
    t.b[i] = r.rhs;
    if (r.rel == Relation::kLessEqual) {
      t.a(i, slack) = 1.0;
      t.basis[i] = slack++;
    } else {
      if (r.rel == Relation::kGreaterEqual) t.a(i, slack++) = -1.0;
      t.a(i, art) = 1.0;
      t.basis[i] = art++;
    }
  }

  // Phase 1.
  std::vector<bool> allowed(total, true);
  if (nart > 0) {
    Vec cost = Vec::Zero(total);
    cost.tail(nart).setOnes();
    t.minimize(cost, allowed);
    double infeas = 0.0;
    for (int i = 0; i < nrows; ++i) {
      if (t.basis[i] >= art_begin) infeas += t.b[i];
    }
    if (infeas > tol::kLpFeasible) return {Status::kInfeasible, {}, 0.0};

    // Drive remaining artificials out of the basis; drop redundant rows.
    std::vector<int> keep;
    for (int i = 0; i < t.rows(); ++i) {
      if (t.basis[i] < art_begin) {
        keep.push_back(i);
        continue;
      }
      int col = -1;
      for (int c = 0; c < art_begin; ++c) {
        if (std::abs(t.a(i, c)) > 1e-9) {
          col = c;
          break;
        }
      }
      if (col >= 0) {
        t.pivot(i, col);
        keep.push_back(i);
      }
    }
    if (static_cast<int>(keep.size()) != t.rows()) {
      Tableau reduced;
      reduced.a.resize(static_cast<Eigen::Index>(keep.size()), total);
      reduced.b.resize(static_cast<Eigen::Index>(keep.size()));
      for (std::size_t k = 0; k < keep.size(); ++k) {
        reduced.a.row(static_cast<Eigen::Index>(k)) = t.a.row(keep[k]);
        reduced.b[static_cast<Eigen::Index>(k)] = t.b[keep[k]];
        reduced.basis.push_back(t.basis[keep[k]]);
      }
      reduced.iterations = t.iterations;
      t = std::move(reduced);
    }
    for (int c = art_begin; c < total; ++c) allowed[c] = false;
  }

  // Phase 2.
  Vec cost = Vec::Zero(total);
  if (lp.objective) {
    const double sign = lp.sense == Sense::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < m; ++j) {
      cost[pos_col[j]] = sign * (*lp.objective)[j];
      if (neg_col[j] >= 0) cost[neg_col[j]] = -sign * (*lp.objective)[j];
    }
  }
  const bool bounded = t.minimize(cost, allowed);

  Vec full = Vec::Zero(total);
  for (int i = 0; i < t.rows(); ++i) full[t.basis[i]] = t.b[i];
  Vec x(m);
  for (int j = 0; j < m; ++j) {
    x[j] = full[pos_col[j]] - (neg_col[j] >= 0 ? full[neg_col[j]] : 0.0);
  }
  if (!bounded) return {Status::kUnbounded, x, 0.0};
  const double value = lp.objective ? lp.objective->dot(x) : 0.0;
  return {Status::kOptimal, std::move(x), value};
}

namespace {

void check_index(std::span<const Vec> pts, int i) {
  if (i < 0 || i >= static_cast<int>(pts.size())) throw std::out_of_range("vertex index out of range");
}

}  // namespace

// Solved through the equivalent dual form: [v_i, v_j] is an edge iff the
// midpoint is a convex combination of the listed vertices only with zero
// weight off {v_i, v_j}. The dual has n + 1 rows, so the simplex stays small
// and well clear of the heavy degeneracy of the separating-hyperplane form.
bool is_edge(std::span<const Vec> vertices, int i, int j) {
  check_index(vertices, i);
  check_index(vertices, j);
  if (i == j) throw std::invalid_argument("is_edge: i == j");
  const int k = static_cast<int>(vertices.size());
  const int n = static_cast<int>(vertices[i].size());
  if (k == 2) return true;
  const Vec mid = 0.5 * (vertices[i] + vertices[j]);
  LinearProgram lp;
  lp.num_vars = k;
  Vec obj = Vec::Ones(k);
  obj[i] = 0.0;
  obj[j] = 0.0;
  lp.objective = obj;
  lp.sense = Sense::kMaximize;
  lp.add(Vec::Ones(k), Relation::kEqual, 1.0);
  for (int d = 0; d < n; ++d) {
    Vec r(k);
    for (int w = 0; w < k; ++w) r[w] = vertices[w][d];
    lp.add(r, Relation::kEqual, mid[d]);
  }
  const auto sol = solve(lp);
  if (!sol.feasible()) throw std::logic_error("is_edge: midpoint outside the hull");
  return sol.value <= kEdgeWeightTol;
}

bool is_extreme(std::span<const Vec> points, int i) {
  check_index(points, i);
  const int k = static_cast<int>(points.size());
  if (k == 1) return true;
  const int n = static_cast<int>(points[i].size());
  // Variables: lambda_w >= 0 for w != i.
  LinearProgram lp;
  lp.num_vars = k - 1;
  Vec ones = Vec::Ones(k - 1);
  lp.add(ones, Relation::kEqual, 1.0);
  for (int d = 0; d < n; ++d) {
    Vec r(k - 1);
    for (int w = 0, col = 0; w < k; ++w) {
      if (w == i) continue;
      r[col++] = points[w][d];
    }
    lp.add(r, Relation::kEqual, points[i][d]);
  }
  return !solve(lp).feasible();
}

}  // namespace shadowlab::lp
