#pragma once

// Sampling of |mu_hat(r n)| at desk scale: clustering of retained values,
// gap statistics, the J-set range over the reals, star discrepancy,
// translated (complex) coefficients and dyadic block maxima.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pisot/core.hpp"
#include "pisot/real.hpp"
#include "pisot/spectrum.hpp"

namespace pisot {

struct SampleOptions {
  double eta = 0.05;
  double gap = 1e-3;
  std::int64_t n_min = -1;  // -1 selects N / 2
  double tol = 1e-20;       // precise path
  double fast_tol = 1e-12;  // hardware path
  std::int64_t fast_above = 10'000;  // fast path when N exceeds this
  int spot_checks = 1000;
};

struct Cluster {
  double center = 0;  // mean of members
  double min = 0;
  double max = 0;
  std::size_t count = 0;
  std::vector<std::int64_t> witnesses;  // smallest n in the cluster, at most 5
};

struct ClusterMatch {
  std::size_t cluster = 0;
  std::optional<std::uint64_t> candidate;  // empty when unmatched
  double distance = 0;                     // to the nearest candidate
};

struct ClusterReport {
  std::uint64_t seed = 0;
  std::string r;
  std::int64_t N = 0;
  std::int64_t n_min = 0;
  double eta = 0;
  double gap = 0;
  bool fast = false;
  double spot_deviation = 0;  // max |fast - precise| over the spot checks
  bool empty_retention = false;
  std::size_t retained = 0;
  std::vector<Cluster> clusters;
  std::vector<ClusterMatch> matches;
  double max_gap = 0;  // largest gap between consecutive retained values
};

/// |mu_hat(r n)| for n = n_first..n_last; the hardware path is spot-checked
/// against the precise one and must deviate by less than max_deviation.
/// Throws PrecisionExhausted otherwise.
std::vector<double> sample_abs(const Real& theta, const Real& r, std::int64_t n_first, std::int64_t n_last,
                               const SampleOptions& opts, double max_deviation, double* deviation = nullptr,
                               bool* fast_used = nullptr);

/// Splits sorted values at gaps larger than gap. values[i] belongs to n[i].
std::vector<Cluster> cluster_values(std::span<const double> values, std::span<const std::int64_t> n, double gap);

ClusterReport sample_and_cluster(const Real& theta, const Real& r, std::int64_t N, const SampleOptions& opts);

/// Matches each cluster center with the nearest predicted value within tol.
void match_clusters(ClusterReport& report, const std::vector<SpectrumCandidate>& candidates, double tol);

struct IntervalEstimate {
  double a = 0;
  double b = 0;
  std::size_t count = 0;
  double max_gap = 0;      // over [lower, b]
  double raw_max_gap = 0;  // over all sorted values, no trimming
  double trim = 0;
  bool contains_zero = false;
};

/// Values |mu_hat(r n)|, n in [N/2, N], at least eta. b is the (1 - trim)
/// quantile; max_gap covers the sorted values in [eta, b] including the
/// distance from eta to the smallest value.
IntervalEstimate interval_fill_test(const Real& theta, const Real& r, std::int64_t N, double eta = 0.0,
                                    double trim = 1e-3);

/// Bound on |d/dt mu_hat|: 2 pi theta / (theta - 1), the support radius.
double derivative_bound(double theta);

/// Signed mu_hat(t) on a grid over [T/2, T]; grid_step <= 0 selects 1/(4C).
IntervalEstimate estimate_J(double theta, double T, double grid_step = 0.0);

/// Star discrepancy of points in [0, 1).
double star_discrepancy(std::vector<double> u);
/// {alpha x_i} in doubles.
double discrepancy(double alpha, std::span<const double> x);
/// {alpha x_i} exactly for alpha = num / 2^bits and integer x_i.
double discrepancy_exact(const mpz_class& num, unsigned bits, std::span<const mpz_class> x);

struct ComplexCluster {
  std::complex<double> center;
  std::size_t count = 0;
  std::vector<std::int64_t> witnesses;
};

struct TranslatedReport {
  std::uint64_t seed = 0;
  std::string r;
  std::string gamma;
  std::int64_t N = 0;
  std::int64_t n_min = 0;
  double eta = 0;
  double gap = 0;
  bool empty_retention = false;
  std::size_t retained = 0;
  std::vector<ComplexCluster> clusters;
  double dominant_radius = 0;  // modal |value| among retained samples
  // Probe along n_k = <D theta^k>, D clearing the denominators of 2r, where
  // |mu_hat(r n_k)| tends to Phi(2 r D). Coverage is the fraction of 64
  // angular bins hit by gamma n_k mod 1.
  double probe_radius = 0;
  double probe_radius_spread = 0;
  int probe_first_k = 0;
  int probe_count = 0;
  double coverage = 0;
};

struct TranslateOptions {
  SampleOptions sample;
  int bins = 64;
  int probe_count = 256;
};

/// gamma given in Q(theta) (exact phases) or as a real.
TranslatedReport translated_sample(const PisotNumber& P, const FieldElement& r, const std::optional<FieldElement>& gamma_exact,
                                   const Real& gamma, std::int64_t N, const TranslateOptions& opts);

struct DecayReport {
  double theta = 0;
  std::int64_t N = 0;
  std::vector<int> block;       // k with n in [2^k, 2^{k+1})
  std::vector<double> maxima;
  std::vector<std::int64_t> argmax;
};

DecayReport decay_check(double theta, std::int64_t N, double tol = 1e-12);

/// True when the last `count` maxima decrease strictly.
bool strictly_decreasing_tail(const DecayReport& report, std::size_t count);

}  // namespace pisot
