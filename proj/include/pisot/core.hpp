#pragma once

// Exact arithmetic in Z[theta] and Q(theta) for a certified Pisot number,
// conjugate embeddings, and nearest-integer data of x * theta^j.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pisot/errors.hpp"
#include "pisot/real.hpp"

namespace pisot {

inline constexpr int kDefaultPrecisionBits = 256;
// Conjugates must satisfy |theta_i| < 1 - 2^-20.
inline constexpr int kCertificationMarginLog2 = 20;

/// x^m - d_1 x^{m-1} - ... - d_m, stored through d = (d_1, ..., d_m).
class MinimalPolynomial {
 public:
  explicit MinimalPolynomial(std::vector<std::int64_t> d);
  /// "d1,d2,...,dm"
  static MinimalPolynomial parse(std::string_view text);

  [[nodiscard]] int degree() const { return static_cast<int>(d_.size()); }
  [[nodiscard]] std::span<const std::int64_t> d() const { return d_; }
  [[nodiscard]] std::int64_t d(int i) const { return d_[static_cast<std::size_t>(i - 1)]; }
  /// Coefficients c_0..c_m of the monic polynomial, ascending powers.
  [[nodiscard]] std::vector<mpz_class> ascending() const;
  /// Tr(theta^i) for i = 0..m-1 (Newton's identities).
  [[nodiscard]] std::span<const mpz_class> power_sums() const { return power_sums_; }
  [[nodiscard]] std::string to_string() const;
  /// gcd(f, f') over Q is constant.
  [[nodiscard]] bool is_squarefree() const;

  friend bool operator==(const MinimalPolynomial&, const MinimalPolynomial&) = default;

 private:
  std::vector<std::int64_t> d_;
  std::vector<mpz_class> power_sums_;
};

using PolyPtr = std::shared_ptr<const MinimalPolynomial>;

/// a_0 + a_1 theta + ... + a_{m-1} theta^{m-1} with integer a_i.
class RingElement {
 public:
  RingElement(PolyPtr poly, std::vector<mpz_class> coeffs);
  static RingElement zero(PolyPtr poly);
  static RingElement constant(PolyPtr poly, const mpz_class& c);
  static RingElement theta_pow(PolyPtr poly, std::uint64_t j);

  [[nodiscard]] const PolyPtr& poly() const { return poly_; }
  [[nodiscard]] std::span<const mpz_class> coeffs() const { return c_; }
  [[nodiscard]] const mpz_class& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()); }
  [[nodiscard]] bool is_zero() const;
  /// Multiplication by theta (one reduction step).
  [[nodiscard]] RingElement times_theta() const;
  /// Sum of embeddings; an exact rational integer.
  [[nodiscard]] mpz_class trace() const;
  /// Largest absolute coefficient.
  [[nodiscard]] mpz_class max_abs_coeff() const;
  [[nodiscard]] std::string to_string() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const mpz_class& k, const RingElement& a);
  friend bool operator==(const RingElement& a, const RingElement& b) { return a.c_ == b.c_; }

 private:
  PolyPtr poly_;
  std::vector<mpz_class> c_;
};

/// Element of Q(theta) in the power basis with reduced rational coefficients.
class FieldElement {
 public:
  FieldElement(PolyPtr poly, std::vector<mpq_class> coeffs);
  explicit FieldElement(const RingElement& x);
  static FieldElement constant(PolyPtr poly, const mpq_class& c);

  [[nodiscard]] const PolyPtr& poly() const { return poly_; }
  [[nodiscard]] std::span<const mpq_class> coeffs() const { return c_; }
  [[nodiscard]] const mpq_class& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()); }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  /// Least common multiple of the coefficient denominators.
  [[nodiscard]] mpz_class denominator() const;
  /// Exact element of Z[theta] when every coefficient is integral.
  [[nodiscard]] bool is_integral() const;
  [[nodiscard]] RingElement to_ring() const;
  [[nodiscard]] mpq_class trace() const;
  /// Rational constant (all higher coefficients zero).
  [[nodiscard]] bool is_rational() const;
  /// "a0/q0,a1/q1,..."
  [[nodiscard]] std::string to_string() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const mpq_class& k, const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }

 private:
  PolyPtr poly_;
  std::vector<mpq_class> c_;
};

/// A certified Pisot number: the dominant real root theta > 1 of a monic
/// integer polynomial whose other roots lie strictly inside the unit disk.
/// Immutable after construction.
class PisotNumber {
 public:
  [[nodiscard]] const PolyPtr& poly_ptr() const { return poly_; }
  [[nodiscard]] const MinimalPolynomial& poly() const { return *poly_; }
  [[nodiscard]] int degree() const { return poly_->degree(); }
  [[nodiscard]] const Real& theta() const { return theta_; }
  /// theta_2..theta_m, ordered by decreasing modulus, then real and imaginary part.
  [[nodiscard]] std::span<const Complex> conjugates() const { return conjugates_; }
  /// which = 1 is theta itself; which = 2..m index the conjugates.
  [[nodiscard]] const Complex& root(int which) const;
  [[nodiscard]] const Real& rho() const { return rho_; }
  /// (1 + |d_1| + ... + |d_m|)^-1, exact.
  [[nodiscard]] const mpq_class& delta_max() const { return delta_max_; }
  [[nodiscard]] int precision_bits() const { return precision_bits_; }
  [[nodiscard]] double theta_double() const { return theta_.to_double(); }

  [[nodiscard]] RingElement ring(std::vector<mpz_class> coeffs) const { return {poly_, std::move(coeffs)}; }
  [[nodiscard]] RingElement ring_int(long c) const { return RingElement::constant(poly_, c); }
  [[nodiscard]] FieldElement field(std::vector<mpq_class> coeffs) const { return {poly_, std::move(coeffs)}; }
  [[nodiscard]] FieldElement field_rational(const mpq_class& c) const {
    return FieldElement::constant(poly_, c);
  }

 private:
  friend PisotNumber build_pisot(std::vector<std::int64_t> d, int precision_bits);

  PolyPtr poly_;
  Real theta_;
  Complex theta_c_;
  std::vector<Complex> conjugates_;
  Real rho_;
  mpq_class delta_max_;
  int precision_bits_ = kDefaultPrecisionBits;
};

/// Roots are located from companion-matrix eigenvalue estimates and refined
/// by Newton iteration at the working precision.
/// Throws NotSquarefree, NotPisot or NoDominantRealRoot.
PisotNumber build_pisot(std::vector<std::int64_t> d, int precision_bits = kDefaultPrecisionBits);

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_theta_pow(const PisotNumber& p, std::uint64_t j);

/// sum_i coeffs_i * theta_which^i at the working precision.
Complex embed(const PisotNumber& p, const RingElement& x, int which);
Complex embed(const PisotNumber& p, const FieldElement& x, int which);
/// Real embedding (which = 1).
Real embed_real(const PisotNumber& p, const RingElement& x);
Real embed_real(const PisotNumber& p, const FieldElement& x);

/// sum_i |c_i| theta^i: a bound on |x| under the real embedding.
Real real_size(const PisotNumber& p, const RingElement& x);
Real real_size(const PisotNumber& p, const FieldElement& x);

struct NearestIntData {
  mpz_class K;
  Real delta;          // x theta^j - K, in (-1/2, 1/2]
  Real delta_direct;   // remainder from the high-precision real embedding
  Real delta_trace;    // remainder from the conjugate sum (valid if trace_route)
  bool trace_route = false;
};

/// K = <x theta^j>, delta = x theta^j - K. Cross-checks the direct embedding
/// against the trace identity x theta^j + sum_{i>=2} sigma_i(x theta^j) in Z.
/// Throws PrecisionExhausted or AmbiguousRounding.
NearestIntData nearest_int_data(const PisotNumber& p, const RingElement& x, std::uint64_t j);

/// Exact inverse via the extended Euclidean algorithm over Q[x].
/// Throws ZeroDivision for r = 0.
FieldElement field_invert(const FieldElement& r);

struct DistDecay {
  std::vector<Real> distances;  // ||z theta^j||, j = 0..j_max
  Real c_z;                     // sum_{i>=2} |sigma_i(z)|
};

DistDecay dist_decay(const PisotNumber& p, const RingElement& z, std::uint64_t j_max);

/// sum_{i>=2} |sigma_i(x)| (zero for rational integers theta).
Real conjugate_weight(const PisotNumber& p, const RingElement& x);
Real conjugate_weight(const PisotNumber& p, const FieldElement& x);

/// 1 / f'(theta). Its Z[theta]-multiples are exactly the x in Q(theta) with
/// Tr(x theta^j) in Z for all j >= 0, so ||x theta^j|| = O(rho^j) for them.
FieldElement dual_generator(const PisotNumber& p);

/// Tr(x theta^j) is an integer for j = 0..m-1 (hence for all j >= 0).
bool has_integral_traces(const PisotNumber& p, const FieldElement& x);

}  // namespace pisot
