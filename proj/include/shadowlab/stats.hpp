#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shadowlab/polytope.hpp"
#include "shadowlab/shadow.hpp"

namespace shadowlab::stats {

/// Per-trial projected length L of an edge and whether the projected edge
/// is an edge of the shadow polygon (X).
struct PairedSample {
  std::vector<double> l_values;
  std::vector<bool> x_flags;
};

PairedSample collect_edge_sample(const VPolytope& p, Edge edge, const McOptions& opts);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov with the asymptotic Kolmogorov distribution
/// (Stephens' small-sample correction).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  bool defined = true;  // false when either variable is constant
};

double pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided permutation test of zero correlation.
CorrelationResult permutation_correlation(std::span<const double> x, std::span<const double> y,
                                          int permutations, std::uint64_t seed);

enum class Verdict { kPass, kFail, kInconclusive };
std::string to_string(Verdict v);

struct IndependenceResult {
  Verdict verdict = Verdict::kInconclusive;
  CorrelationResult correlation;
  KsResult ks;
  std::size_t n_true = 0;
  std::size_t n_false = 0;
};

/// Pass iff the permutation-correlation p-value and the KS p-value between
/// {L | X} and {L | not X} are both >= alpha.
IndependenceResult independence_test(const PairedSample& s, double alpha = 0.01, int permutations = 10'000,
                                     std::uint64_t seed = 1);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
};

/// Normal-approximation confidence interval for the mean.
MeanCi mean_ci(std::span<const double> values, double confidence = 0.95);

/// Inverse standard normal CDF.
double normal_quantile(double p);

}  // namespace shadowlab::stats
