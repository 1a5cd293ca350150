#include "pisot/real.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pisot {

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(std::string_view text, mpfr_prec_t bits) {
  Real r(bits);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("not a decimal number: " + s);
  }
  return r;
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_string() const {
  return to_string(std::max(1, static_cast<int>(static_cast<double>(precision()) / 3.32)));
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const mpz_class& b) {
  Real r(a.precision());
  mpfr_mul_z(r.v_, a.v_, b.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0 && !mpfr_nan_p(a.v_); }

std::partial_ordering operator<=>(const Real& a, double b) {
  if (mpfr_nan_p(a.v_) || b != b) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define PISOT_UNARY(name, fn)                  \
  Real name(const Real& x) {                   \
    Real r(x.precision());                     \
    fn(r.get(), x.get(), MPFR_RNDN);           \
    return r;                                  \
  }

PISOT_UNARY(abs, mpfr_abs)
PISOT_UNARY(sqrt, mpfr_sqrt)
PISOT_UNARY(cos, mpfr_cos)
PISOT_UNARY(sin, mpfr_sin)
PISOT_UNARY(log, mpfr_log)
PISOT_UNARY(exp, mpfr_exp)

#undef PISOT_UNARY

Real hypot(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(wider(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real two_pow(long e, mpfr_prec_t bits) {
  Real r(1L, bits);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

mpz_class to_mpz(const Real& x) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDZ);
  return z;
}

mpz_class nearest_integer(const Real& x) {
  // ceil(x - 1/2) keeps the remainder x - K inside (-1/2, 1/2].
  mpfr_prec_t bits = x.precision() + 2;
  if (mpfr_regular_p(x.get()) && mpfr_get_exp(x.get()) > 0) {
    bits = std::max<mpfr_prec_t>(bits, mpfr_get_exp(x.get()) + 2);
  }
  Real shifted(bits);
  mpfr_sub_d(shifted.get(), x.get(), 0.5, MPFR_RNDN);  // exact at this width
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), shifted.get(), MPFR_RNDU);
  return z;
}

Real frac_centered(const Real& x) {
  // Exact: x - K is a multiple of ulp(x) no larger than 1/2 in modulus.
  const mpz_class k = nearest_integer(x);
  Real out(x.precision());
  mpfr_sub_z(out.get(), x.get(), k.get_mpz_t(), MPFR_RNDN);
  return out;
}

Real cos_2pi(const Real& x) {
  const mpfr_prec_t p = x.precision();
  Real g = abs(frac_centered(x));  // in [0, 1/2]
  const Real eighth(0.125, p);
  const Real three_eighths(0.375, p);
  const Real quarter(0.25, p);
  const Real two_pi = pi(p) * 2L;
  if (g == quarter) return Real(p);
  if (g <= eighth) return cos(two_pi * g);
  if (g < three_eighths) return sin(two_pi * (quarter - g));
  return -cos(two_pi * (Real(0.5, p) - g));
}

Real cos_pi(const Real& x) { return cos_2pi(x / 2L); }

Complex& Complex::operator+=(const Complex& o) { return *this = *this + o; }
Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }

Complex operator/(const Complex& a, const Complex& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

}  // namespace pisot
