#pragma once

// Numerical tolerances shared by every module. Geometric sign tests are
// relative: multiply by the magnitude of the input before comparing.

namespace shadowlab::tol {

// Relative tolerance for planar orientation tests (hull2d, shadow ties).
inline constexpr double kHull = 1e-9;

// Frame orthonormality.
inline constexpr double kFrame = 1e-12;

// Phase-1 objective below this certifies LP feasibility; also the pivot
// threshold after row scaling.
inline constexpr double kLpFeasible = 1e-9;

// Absolute tolerance for vertex deduplication.
inline constexpr double kDedup = 1e-12;

// Ray normalization and independence (scaled determinant).
inline constexpr double kRay = 1e-12;

// Arc padding on the circle of objectives; constraints whose projected
// length falls below this (relative) are non-binding.
inline constexpr double kArc = 1e-12;

// Cone membership slack on ray coordinates.
inline constexpr double kConeMember = 1e-12;

// Nonzero-coordinate threshold (Kitahara-Mizuno parameters).
inline constexpr double kNonzero = 1e-12;

// Affine-hull rank decisions (relative to coordinate scale).
inline constexpr double kRank = 1e-9;

}  // namespace shadowlab::tol
