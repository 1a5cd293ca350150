#pragma once

// Fourier transform of the Bernoulli convolution,
//   mu_hat(t) = prod_{k>=0} cos(2 pi theta^-k t),
// with a certified truncation and rounding bound, plus the nearest-integer
// digit traces K_j = <y theta^j> and the integer recurrence they satisfy.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "pisot/core.hpp"
#include "pisot/real.hpp"

namespace pisot {

// Factors with |cos| below this switch the result to a zero bracket.
inline constexpr double kFactorFloor = 1e-30;

struct MuHatResult {
  Real value;
  Real error_bound;
  long K = 0;  // index of the last factor evaluated
  bool contains_zero = false;
};

/// Works at the larger of theta's and t's precision.
/// Throws InvalidTolerance unless 0 < tol < 1/2, PrecisionExhausted if the
/// rounding allowance is not small.
MuHatResult mu_hat(const Real& theta, const Real& t, double tol);

struct DigitTrace {
  Real y;
  int N = 0;
  std::vector<mpz_class> K;  // K[j-1] = <y theta^j>, j = 1..N
  std::vector<Real> delta;   // y theta^j - K_j in (-1/2, 1/2]
  Real threshold;
  std::vector<int> exceed_set;  // 1-based j with |delta_j| > threshold
};

/// threshold defaults to P.delta_max() and must not exceed it.
DigitTrace digit_trace(const PisotNumber& P, const Real& y, int N, std::optional<mpq_class> threshold = std::nullopt);

/// Checks K_{j+m} = d_1 K_{j+m-1} + ... + d_m K_j across every maximal run of
/// indices with |delta_j| <= delta longer than m. Returns the failing j.
/// Throws InvalidDelta unless 0 < delta < P.delta_max().
std::vector<int> check_recurrence(const DigitTrace& trace, const PisotNumber& P, const mpq_class& delta);

struct SeriesItem {
  std::int64_t n = 0;
  Real t;
  MuHatResult result;
};

/// mu_hat(r n) for n = 1..N, ordered by n. fast = true uses hardware doubles;
/// error_bound is then reported as zero and contains_zero marks exact zeros.
std::vector<SeriesItem> coefficient_series(const Real& theta, const Real& r, std::int64_t N, double tol, bool fast);
std::vector<SeriesItem> coefficient_series(const PisotNumber& P, const FieldElement& r, std::int64_t N, double tol,
                                           bool fast);

/// CSV rows "n,t,value,error_bound,contains_zero".
void write_series_csv(std::ostream& os, const std::vector<SeriesItem>& items, int digits);

}  // namespace pisot
