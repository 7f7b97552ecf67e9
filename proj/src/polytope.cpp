#include "shadowlab/polytope.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <map>
#include <numeric>

#include "shadowlab/lp.hpp"

namespace shadowlab {

NotSimple::NotSimple(int vertex, int degree, int dim)
    : std::runtime_error("polytope is not simple: vertex " + std::to_string(vertex) + " has degree " +
                         std::to_string(degree) + " in dimension " + std::to_string(dim)),
      vertex_(vertex) {}

AffineHull affine_hull(std::span<const Vec> points) {
  if (points.empty()) throw std::invalid_argument("affine_hull: empty input");
  const int n = static_cast<int>(points[0].size());
  AffineHull hull{points[0], Mat(n, 0)};
  if (points.size() == 1) return hull;
  Mat diffs(n, static_cast<Eigen::Index>(points.size() - 1));
  double scale = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
    scale = std::max(scale, diffs.col(static_cast<Eigen::Index>(i - 1)).cwiseAbs().maxCoeff());
  }
  if (scale == 0.0) return hull;
  Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol::kRank * scale * std::sqrt(static_cast<double>(points.size()))) ++rank;
  }
  hull.basis = svd.matrixU().leftCols(rank);
  return hull;
}

// ---------------------------------------------------------------------------

VPolytope::VPolytope(std::vector<Vec> vertices, std::optional<std::vector<Edge>> edges, std::string label)
    : vertices_(std::move(vertices)), label_(std::move(label)), cache_(std::make_shared<EdgeCache>()) {
  if (vertices_.empty()) throw std::invalid_argument("polytope needs at least one vertex");
  const auto n = vertices_.front().size();
  if (n < 1) throw InvalidDimension("polytope dimension must be >= 1");
  for (const auto& v : vertices_) {
    if (v.size() != n) throw InvalidDimension("vertices differ in dimension");
    if (!v.allFinite()) throw std::invalid_argument("non-finite vertex coordinate");
  }
  if (edges) {
    for (auto& [a, b] : *edges) {
      if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices() || a == b) {
        throw std::invalid_argument("edge index out of range");
      }
      if (a > b) std::swap(a, b);
    }
    std::sort(edges->begin(), edges->end());
    std::call_once(cache_->once, [&] {
      cache_->edges = std::move(*edges);
      cache_->known = true;
    });
  }
}

const std::vector<Edge>& VPolytope::edges() const {
  std::call_once(cache_->once, [this] {
    std::vector<Edge> found;
    const int k = num_vertices();
    if (k == 2) {
      found.emplace_back(0, 1);
    } else {
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (lp::is_edge(vertices_, i, j)) found.emplace_back(i, j);
        }
      }
    }
    cache_->edges = std::move(found);
    cache_->known = true;
  });
  return cache_->edges;
}

bool VPolytope::edges_known() const { return cache_->known; }

bool VPolytope::validate() const {
  for (int i = 0; i < num_vertices(); ++i) {
    if (num_vertices() > 1 && !lp::is_extreme(vertices_, i)) return false;
  }
  if (num_vertices() <= 2) return true;
  std::vector<Edge> lp_edges;
  for (int i = 0; i < num_vertices(); ++i) {
    for (int j = i + 1; j < num_vertices(); ++j) {
      if (lp::is_edge(vertices_, i, j)) lp_edges.emplace_back(i, j);
    }
  }
  return lp_edges == edges();
}

// ---------------------------------------------------------------------------

Zonotope::Zonotope(std::vector<Vec> generators, Vec base, std::string label)
    : generators_(std::move(generators)), base_(std::move(base)), label_(std::move(label)) {
  if (base_.size() < 1) throw InvalidDimension("zonotope dimension must be >= 1");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.size() != base_.size()) throw InvalidDimension("generator dimension mismatch");
    if (!g.allFinite()) throw std::invalid_argument("non-finite generator");
    if (g.norm() == 0.0) throw std::invalid_argument("zero generator");
    const Vec d = g.normalized();
    bool placed = false;
    for (auto& cls : classes_) {
      const double c = cls.direction.dot(d);
      if ((d - c * cls.direction).norm() < 1e-9) {
        cls.members.push_back(static_cast<int>(i));
        cls.scales.push_back(g.dot(cls.direction));
        placed = true;
        break;
      }
    }
    if (!placed) classes_.push_back({d, {static_cast<int>(i)}, {g.norm()}});
  }
}

// ---------------------------------------------------------------------------

VPolytope hypercube(int n) {
  if (n < 1 || n > 16) throw InvalidDimension("hypercube: n must be in [1, 16]");
  const int k = 1 << n;
  std::vector<Vec> verts;
  verts.reserve(static_cast<std::size_t>(k));
  for (int mask = 0; mask < k; ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
    verts.push_back(std::move(v));
  }
  std::vector<Edge> edges;
  for (int mask = 0; mask < k; ++mask) {
    for (int i = 0; i < n; ++i) {
      const int other = mask ^ (1 << i);
      if (other > mask) edges.emplace_back(mask, other);
    }
  }
  return VPolytope(std::move(verts), std::move(edges), "hypercube(" + std::to_string(n) + ")");
}

bool permutation_ratio_is_single_cycle(std::span<const int> p, std::span<const int> q) {
  const std::size_t n = p.size();
  if (q.size() != n) throw std::invalid_argument("permutation sizes differ");
  // sigma = p o q^{-1}
  std::vector<int> qinv(n);
  for (std::size_t i = 0; i < n; ++i) qinv[static_cast<std::size_t>(q[i])] = static_cast<int>(i);
  std::vector<int> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = p[static_cast<std::size_t>(qinv[i])];
  std::vector<bool> seen(n, false);
  int nontrivial = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t c = s; !seen[c]; c = static_cast<std::size_t>(sigma[c])) {
      seen[c] = true;
      ++len;
    }
    if (len > 1) ++nontrivial;
  }
  return nontrivial == 1;
}

VPolytope birkhoff(int n) {
  if (n < 2 || n > 5) throw InvalidDimension("birkhoff: n must be in [2, 5]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<Vec> verts;
  for (const auto& perm : perms) {
    Vec v = Vec::Zero(n * n);
    for (int i = 0; i < n; ++i) v[i * n + perm[static_cast<std::size_t>(i)]] = 1.0;
    verts.push_back(std::move(v));
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = a + 1; b < perms.size(); ++b) {
      if (permutation_ratio_is_single_cycle(perms[a], perms[b])) {
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return VPolytope(std::move(verts), std::move(edges), "birkhoff(" + std::to_string(n) + ")");
}

namespace {

std::vector<Vec> permutahedron_generators(int n) {
  std::vector<Vec> gens;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vec g = Vec::Zero(n);
      g[i] = 1.0;
      g[j] = -1.0;
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

Vec permutahedron_base(int n) {
  Vec base(n);
  for (int i = 0; i < n; ++i) base[i] = i + 1;
  return base;
}

Vec orthogonal_perturbation(Rng& rng, const Vec& axis, double eps) {
  Vec g = sample_gaussian_vector(rng, static_cast<int>(axis.size()));
  g -= axis.dot(g) * axis;
  const double norm = g.norm();
  if (norm == 0.0) return Vec::Zero(axis.size());
  // Norm uniform in (0, eps].
  const double r = eps * (1.0 - rng.uniform());
  return g * (r / norm);
}

}  // namespace

Zonotope permutahedron(int n) {
  if (n < 2 || n > 7) throw InvalidDimension("permutahedron: n must be in [2, 7]");
  return Zonotope(permutahedron_generators(n), permutahedron_base(n),
                  "permutahedron(" + std::to_string(n) + ")");
}

Zonotope augmented_permutahedron(int n) {
  if (n < 2 || n > 7) throw InvalidDimension("augmented_permutahedron: n must be in [2, 7]");
  auto gens = permutahedron_generators(n);
  gens.push_back(Vec::Ones(n));
  return Zonotope(std::move(gens), permutahedron_base(n),
                  "augmented_permutahedron(" + std::to_string(n) + ")");
}

Zonotope zn_parallel(int k, double eps, Rng& rng, int n) {
  if (k < 1) throw std::invalid_argument("zn_parallel: k must be >= 1");
  if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("zn_parallel: eps must be in (0, 0.1]");
  if (n < 2) throw InvalidDimension("zn_parallel: n must be >= 2");
  const Vec e1 = unit_vector(n, 0);
  std::vector<Vec> gens;
  for (int i = 0; i < k; ++i) gens.push_back((e1 + orthogonal_perturbation(rng, e1, eps)).normalized());
  return Zonotope(std::move(gens), Vec::Zero(n), "zn_parallel(" + std::to_string(k) + ")");
}

Zonotope zn_basis(int n, double eps, Rng& rng) {
  if (n < 2) throw InvalidDimension("zn_basis: n must be >= 2");
  if (!(eps >= 0.0 && eps <= 0.1)) throw std::invalid_argument("zn_basis: eps must be in [0, 0.1]");
  std::vector<Vec> gens;
  for (int i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  if (eps > 0.0) {
    for (int i = 0; i < n; ++i) {
      const Vec e = unit_vector(n, i);
      gens.push_back((e + orthogonal_perturbation(rng, e, eps)).normalized());
    }
  }
  return Zonotope(std::move(gens), Vec::Zero(n), "zn_basis(" + std::to_string(n) + ")");
}

// ---------------------------------------------------------------------------

VPolytope from_points(std::span<const Vec> points, std::string label) {
  if (points.empty()) throw std::invalid_argument("from_points: empty input");
  std::vector<Vec> uniq;
  for (const auto& p : points) {
    if (p.size() != points[0].size()) throw InvalidDimension("from_points: dimension mismatch");
    const bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const Vec& q) {
      return (p - q).cwiseAbs().maxCoeff() <= tol::kDedup;
    });
    if (!dup) uniq.push_back(p);
  }
  std::vector<Vec> extreme;
  for (int i = 0; i < static_cast<int>(uniq.size()); ++i) {
    if (uniq.size() == 1 || lp::is_extreme(uniq, i)) extreme.push_back(uniq[static_cast<std::size_t>(i)]);
  }
  return VPolytope(std::move(extreme), std::nullopt, std::move(label));
}

VPolytope zonotope_vertices(const Zonotope& z) {
  if (z.num_generators() > kMaxZonotopeGenerators) {
    throw SizeCapExceeded("zonotope_vertices: more than " + std::to_string(kMaxZonotopeGenerators) +
                          " generators");
  }
  const auto& classes = z.parallel_classes();
  const int n = z.dim();
  if (classes.empty()) return VPolytope({z.base()}, std::vector<Edge>{}, z.label());

  // Sign vector s is realizable iff some c has s_i * c.d_i >= 1 for all i.
  auto realizable = [&](const std::vector<signed char>& signs) {
    lp::LinearProgram prog;
    prog.num_vars = n;
    prog.free_vars.assign(static_cast<std::size_t>(n), true);
    for (std::size_t i = 0; i < signs.size(); ++i) {
      prog.add(signs[i] * classes[i].direction, lp::Relation::kGreaterEqual, 1.0);
    }
    return lp::solve(prog).feasible();
  };

  std::vector<std::vector<signed char>> regions{{1}, {-1}};
  for (std::size_t c = 1; c < classes.size(); ++c) {
    std::vector<std::vector<signed char>> next;
    for (const auto& r : regions) {
      for (signed char s : {static_cast<signed char>(1), static_cast<signed char>(-1)}) {
        auto cand = r;
        cand.push_back(s);
        if (realizable(cand)) next.push_back(std::move(cand));
      }
    }
    regions = std::move(next);
  }
  std::sort(regions.begin(), regions.end(), std::greater<>());

  std::vector<Vec> verts;
  std::map<std::vector<signed char>, int> index;
  for (const auto& r : regions) {
    Vec v = z.base();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t m = 0; m < classes[c].members.size(); ++m) {
        if (r[c] * classes[c].scales[m] > 0.0) v += z.generators()[static_cast<std::size_t>(classes[c].members[m])];
      }
    }
    index.emplace(r, static_cast<int>(verts.size()));
    verts.push_back(std::move(v));
  }
  std::vector<Edge> edges;
  for (const auto& [r, i] : index) {
    auto flipped = r;
    for (std::size_t c = 0; c < r.size(); ++c) {
      flipped[c] = static_cast<signed char>(-flipped[c]);
      const auto it = index.find(flipped);
      if (it != index.end() && it->second > i) edges.emplace_back(i, it->second);
      flipped[c] = r[c];
    }
  }
  return VPolytope(std::move(verts), std::move(edges), z.label());
}

EdgeStats edge_stats(const VPolytope& p) {
  if (p.num_vertices() < 2) throw std::invalid_argument("edge_stats: polytope is a point");
  const auto& edges = p.edges();
  if (edges.empty()) throw std::runtime_error("edge_stats: no edges found");
  EdgeStats s{std::numeric_limits<double>::infinity(), 0.0, static_cast<int>(edges.size())};
  for (auto [a, b] : edges) {
    const double len = (p.vertex(a) - p.vertex(b)).norm();
    s.min_length = std::min(s.min_length, len);
    s.max_length = std::max(s.max_length, len);
  }
  return s;
}

EdgeStats edge_stats(const Zonotope& z) {
  if (z.num_generators() == 0) throw std::invalid_argument("edge_stats: zonotope is a point");
  if (z.has_parallel_generators()) return edge_stats(zonotope_vertices(z));
  EdgeStats s{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (const auto& g : z.generators()) {
    s.min_length = std::min(s.min_length, g.norm());
    s.max_length = std::max(s.max_length, g.norm());
  }
  s.count = -1;  // not enumerated
  return s;
}

std::vector<NormalCone> normal_cones(const VPolytope& p) {
  const AffineHull hull = affine_hull(p.vertices());
  const int d = hull.dim();
  if (d == 0) throw std::invalid_argument("normal_cones: polytope is a point");

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(p.num_vertices()));
  for (auto [a, b] : p.edges()) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }

  std::vector<NormalCone> cones;
  cones.reserve(adj.size());
  for (int v = 0; v < p.num_vertices(); ++v) {
    const auto& nb = adj[static_cast<std::size_t>(v)];
    if (static_cast<int>(nb.size()) != d) throw NotSimple(v, static_cast<int>(nb.size()), d);
    Mat dirs(d, d);
    for (int i = 0; i < d; ++i) {
      const Vec diff = hull.reduce(p.vertex(nb[static_cast<std::size_t>(i)])) - hull.reduce(p.vertex(v));
      dirs.col(i) = diff / diff.norm();
    }
    Eigen::FullPivLU<Mat> lu(dirs);
    if (std::abs(lu.determinant()) <= tol::kRay) {
      throw std::runtime_error("normal_cones: rank-deficient edge matrix at vertex " + std::to_string(v));
    }
    // Columns r_j with r_j . d_i = -[i == j].
    const Mat rays = -lu.inverse().transpose();
    NormalCone cone{v, {}, nb};
    for (int j = 0; j < d; ++j) cone.rays.push_back(hull.lift_direction(rays.col(j).normalized()));
    cones.push_back(std::move(cone));
  }
  return cones;
}

std::vector<std::vector<long long>> hypercube_facet_normals(int n) {
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> r(static_cast<std::size_t>(n), 0);
    r[static_cast<std::size_t>(i)] = 1;
    rows.push_back(r);
  }
  return rows;
}

std::vector<std::vector<long long>> augmented_permutahedron_facet_normals(int n) {
  // Facets: n*e_S - |S|*e_[n] for proper nonempty S (up to sign), and e_[n].
  std::vector<std::vector<long long>> rows;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    if (mask & (1 << (n - 1))) continue;  // S and its complement give opposite normals
    const int size = std::popcount(static_cast<unsigned>(mask));
    std::vector<long long> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = ((mask >> i) & 1) * n - size;
    rows.push_back(r);
  }
  rows.push_back(std::vector<long long>(static_cast<std::size_t>(n), 1));
  return rows;
}

}  // namespace shadowlab
