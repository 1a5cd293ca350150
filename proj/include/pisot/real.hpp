#pragma once

// Owning value wrapper over an MPFR float with an explicit per-object
// precision, plus a minimal complex companion. Binary operations produce a
// result at the larger of the two operand precisions.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace pisot {

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(double v, mpfr_prec_t bits);
  Real(long v, mpfr_prec_t bits);
  Real(const mpz_class& v, mpfr_prec_t bits);
  Real(const mpq_class& v, mpfr_prec_t bits);
  static Real parse(std::string_view text, mpfr_prec_t bits);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }

  // Significant-digit decimal string ("%.*Rg").
  [[nodiscard]] std::string to_string(int digits) const;
  // Digits matching the object's precision (bits / 3.32).
  [[nodiscard]] std::string to_string() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend Real operator*(const Real& a, long b);
  friend Real operator*(const Real& a, const mpz_class& b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, double b);
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real hypot(const Real& a, const Real& b);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real pi(mpfr_prec_t bits);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
// 2^e as a Real of the given precision.
Real two_pow(long e, mpfr_prec_t bits);

// Nearest integer with ties resolved so the remainder lies in (-1/2, 1/2].
mpz_class nearest_integer(const Real& x);
// Exact integer conversion of an integral-valued Real (truncates otherwise).
mpz_class to_mpz(const Real& x);

// cos(2*pi*x) with reduction of x modulo 1 performed before scaling, and the
// quarter points mapped to an exact zero.
Real cos_2pi(const Real& x);
// cos(pi*x) with the same reduction (x reduced modulo 2).
Real cos_pi(const Real& x);
// x - round(x) in (-1/2, 1/2].
Real frac_centered(const Real& x);

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] mpfr_prec_t precision() const { return re.precision(); }
  [[nodiscard]] Real norm() const { return hypot(re, im); }
  [[nodiscard]] Complex conj() const { return {re, -im}; }

  Complex& operator+=(const Complex& o);
  Complex& operator*=(const Complex& o);
  friend Complex operator+(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& b);
  friend Complex operator/(const Complex& a, const Complex& b);
};

}  // namespace pisot
