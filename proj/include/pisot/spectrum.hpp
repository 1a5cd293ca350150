#pragma once

// Predicted limit points of |mu_hat(r n)|:
//   prod_i Phi(z_i) * tail(r A),
//   Phi(z)  = prod_{j in Z} |cos(pi z theta^j)|,
//   tail(x) = prod_{j>=0} |cos(2 pi x theta^-j)|,
// with z_i in Z[theta], A in Z and r in Q(theta).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pisot/core.hpp"
#include "pisot/real.hpp"

namespace pisot {

inline constexpr std::uint64_t kDefaultCandidateBudget = 1'000'000;

struct ProductResult {
  Real value;
  Real error_bound;
  long factors_negative = 0;  // j = -1 .. -factors_negative evaluated
  long factors_positive = 0;  // j = 0 .. factors_positive - 1 evaluated
  bool degenerate_zero = false;  // an exact zero factor, value and error are 0
  bool contains_zero = false;    // a factor fell below the floor
};

/// Phi(z). Factors with j >= 0 come from the conjugates: z theta^j plus
/// sum_{i>=2} sigma_i(z) theta_i^j is an integer. Throws InvalidTolerance,
/// PrecisionExhausted.
ProductResult phi_biinfinite(const PisotNumber& P, const RingElement& z, double tol);
/// Same product for z in Q(theta) with integral traces Tr(z theta^j);
/// throws InvalidArgument otherwise.
ProductResult phi_biinfinite(const PisotNumber& P, const FieldElement& z, double tol);

/// phi_Lambda(q) = prod_{j in Z} |cos(2 pi Lambda q theta^j)| = Phi(2 Lambda q).
ProductResult phi_lambda(const PisotNumber& P, const RingElement& lambda, const RingElement& q, double tol);

/// tail(x) from the exact powers x theta^-j in Q(theta).
ProductResult tail_value(const PisotNumber& P, const FieldElement& x, double tol);

struct SpectrumCandidate {
  std::vector<RingElement> z;
  long A = 0;
  FieldElement r;
  Real predicted;
  Real error_bound;
  std::uint64_t id = 0;  // position in (M, A, z_0, ..., z_M) lexicographic order
  bool dual = false;     // z_i stands for z_i / f'(theta)
};

/// Throws InvalidArgument for an empty z_list or r <= 0.
SpectrumCandidate limit_value(const PisotNumber& P, const std::vector<RingElement>& z_list, long A,
                              const FieldElement& r, double tol);

struct EnumerationOptions {
  int height = 1;  // coefficients in [-H, H]
  int m_max = 0;   // M + 1 <= m_max + 1 products
  long a_max = 0;  // A in [-a_max, a_max]
  double tol = 1e-20;
  double eta = 0.05;
  std::uint64_t budget = kDefaultCandidateBudget;
  // Scale every coefficient vector by 1 / f'(theta), reaching limit points
  // whose z lies outside Z[theta] but still has ||z theta^j|| -> 0.
  bool dual = false;
};

/// Candidates with predicted >= eta, descending, values within 2 tol merged
/// into the lowest id. Throws BudgetExceeded when the window holds more than
/// opts.budget candidates.
std::vector<SpectrumCandidate> enumerate_spectrum(const PisotNumber& P, const FieldElement& r,
                                                  const EnumerationOptions& opts);

/// n_k = <(2r)^-1 (z_0 theta^{(M+1)k} + ... + z_M theta^k)> + A.
/// Throws AmbiguousRounding, PrecisionExhausted.
mpz_class synthesize_sequence(const PisotNumber& P, const std::vector<RingElement>& z_list, long A,
                              const FieldElement& r, int k);

/// Smallest k in [1, k_max] at which
///   pi (C ρ^k / (1 - ρ) + X θ^-k / (1 - θ^-1)) <= target,
/// C = sum C_{z_i}, X = sum |z_i| + |r A|. Heuristic: it tracks the neglected
/// conjugate parts and the overlap between neighbouring scales.
std::optional<int> realization_index(const PisotNumber& P, const std::vector<RingElement>& z_list, long A,
                                     const FieldElement& r, double target, int k_max);

struct Residual {
  Real value;
  Real error_bound;
};

/// |phi_Lambda(a + b theta^n) - phi_Lambda(a) phi_Lambda(b)|.
Residual product_law_residual(const PisotNumber& P, const RingElement& lambda, const RingElement& a,
                              const RingElement& b, int n, double tol);

/// Bounds of a product of nonnegative factors known to within e_i.
Residual compose_product(const std::vector<const ProductResult*>& factors);

}  // namespace pisot
