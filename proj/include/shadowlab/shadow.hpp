#pragma once

#include <cstdint>
#include <vector>

#include "shadowlab/core_geom.hpp"
#include "shadowlab/polytope.hpp"

namespace shadowlab {

struct McOptions {
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: all cores
};

/// Frame used by trial `trial` of a run seeded with `seed`. Primal and dual
/// counters share frames through this function.
Frame2 trial_frame(std::uint64_t seed, std::int64_t trial, int n);

struct ShadowPolygon {
  Frame2 frame;
  std::vector<Point2> hull_points;    // counterclockwise
  std::vector<int> preimage_indices;  // vertex index per hull point
  bool degenerate = false;            // < 3 hull points or a projection tie

  int vertex_count() const { return static_cast<int>(hull_points.size()); }
};

ShadowPolygon shadow(const VPolytope& p, const Frame2& f);

/// Preimages along the upper chain, from the lexicographically smallest hull
/// point (min x) to the largest (max x).
std::vector<int> shadow_path(const ShadowPolygon& s);

struct ShadowEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  int min_seen = 0;
  int max_seen = 0;
  std::int64_t degenerate_count = 0;
};

struct TrialRecord {
  int vertex_count = 0;
  bool degenerate = false;
};

std::vector<TrialRecord> shadow_trials(const VPolytope& p, const McOptions& opts);
ShadowEstimate summarize(const std::vector<TrialRecord>& records);

ShadowEstimate estimate_shadow_size(const VPolytope& p, const McOptions& opts);

enum class ZonotopeCounting { kExact, kEnumerate };
ShadowEstimate estimate_shadow_size(const Zonotope& z, const McOptions& opts,
                                    ZonotopeCounting mode = ZonotopeCounting::kExact);

/// Twice the number of parallelism classes of the generators.
int zonotope_shadow_size_exact(const Zonotope& z);

inline constexpr int kMaxDiameterGenerators = 24;

/// max over sign vectors of |sum s_i g_i|, the diameter of the zonotope.
double zonotope_diameter(const Zonotope& z);

}  // namespace shadowlab
