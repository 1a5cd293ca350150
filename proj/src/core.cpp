#include "pisot/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

#include "roots.hpp"

namespace pisot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPisot: return "NotPisot";
    case ErrorCode::NoDominantRealRoot: return "NoDominantRealRoot";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::AmbiguousRounding: return "AmbiguousRounding";
    case ErrorCode::ZeroDivision: return "ZeroDivision";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

namespace {

// Rewrites every power >= m through theta^m = d_1 theta^{m-1} + ... + d_m.
template <class T>
void reduce_in_place(std::vector<T>& c, const MinimalPolynomial& f) {
  const auto m = static_cast<std::size_t>(f.degree());
  for (std::size_t k = c.size(); k-- > m;) {
    if (c[k] == 0) continue;
    const T top = c[k];
    for (std::size_t i = 1; i <= m; ++i) c[k - i] += top * f.d(static_cast<int>(i));
    c[k] = 0;
  }
  c.resize(m, T(0));
}

template <class T>
std::vector<T> multiply_reduce(std::span<const T> a, std::span<const T> b, const MinimalPolynomial& f) {
  std::vector<T> prod(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  reduce_in_place(prod, f);
  return prod;
}

// Dense polynomials over Q, ascending, trimmed so the last entry is nonzero.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a / b, b nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, mpq_class(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class coef = a.back() / b.back();
    q[shift] = coef;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= coef * b[i];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out(std::max(a.size(), q.empty() || b.empty() ? 0 : q.size() + b.size() - 1), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly to_qpoly(const std::vector<mpz_class>& c) {
  QPoly out;
  for (const auto& v : c) out.emplace_back(v);
  trim(out);
  return out;
}

std::string join(const auto& items) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : items) {
    if (!first) os << ',';
    first = false;
    os << v;
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- polynomial

MinimalPolynomial::MinimalPolynomial(std::vector<std::int64_t> coeffs) : d_(std::move(coeffs)) {
  if (d_.empty()) throw PisotError(ErrorCode::InvalidArgument, "polynomial degree must be >= 1");
  if (d_.back() == 0) throw PisotError(ErrorCode::InvalidArgument, "d_m must be nonzero");
  const int m = degree();
  power_sums_.assign(static_cast<std::size_t>(m), mpz_class(0));
  power_sums_[0] = m;
  for (int k = 1; k < m; ++k) {
    mpz_class s = mpz_class(k) * d(k);
    for (int i = 1; i < k; ++i) s += mpz_class(d(i)) * power_sums_[static_cast<std::size_t>(k - i)];
    power_sums_[static_cast<std::size_t>(k)] = s;
  }
}

MinimalPolynomial MinimalPolynomial::parse(std::string_view text) {
  std::vector<std::int64_t> d;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw PisotError(ErrorCode::InvalidArgument, "bad polynomial coefficient '" + std::string(tok) + "'");
    }
    d.push_back(v);
    pos = comma + 1;
  }
  return MinimalPolynomial(std::move(d));
}

std::vector<mpz_class> MinimalPolynomial::ascending() const {
  const int m = degree();
  std::vector<mpz_class> c(static_cast<std::size_t>(m + 1));
  c[static_cast<std::size_t>(m)] = 1;
  for (int i = 1; i <= m; ++i) c[static_cast<std::size_t>(m - i)] = -mpz_class(d(i));
  return c;
}

std::string MinimalPolynomial::to_string() const { return join(d_); }

bool MinimalPolynomial::is_squarefree() const {
  const auto f = ascending();
  QPoly a = to_qpoly(f);
  QPoly b;
  for (std::size_t i = 1; i < f.size(); ++i) b.emplace_back(mpz_class(f[i] * static_cast<long>(i)));
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

// ---------------------------------------------------------------- Z[theta]

RingElement::RingElement(PolyPtr poly, std::vector<mpz_class> coeffs) : poly_(std::move(poly)), c_(std::move(coeffs)) {
  const auto m = static_cast<std::size_t>(poly_->degree());
  if (c_.size() > m) {
    reduce_in_place(c_, *poly_);
  } else {
    c_.resize(m, mpz_class(0));
  }
}

RingElement RingElement::zero(PolyPtr poly) { return {std::move(poly), {}}; }

RingElement RingElement::constant(PolyPtr poly, const mpz_class& c) { return {std::move(poly), {c}}; }

RingElement RingElement::theta_pow(PolyPtr poly, std::uint64_t j) {
  RingElement result = constant(poly, 1);
  RingElement base = poly->degree() == 1 ? constant(poly, poly->d(1)) : RingElement(poly, {0, 1});
  while (j > 0) {
    if (j & 1U) result = result * base;
    j >>= 1U;
    if (j > 0) base = base * base;
  }
  return result;
}

bool RingElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v == 0; });
}

RingElement RingElement::times_theta() const {
  std::vector<mpz_class> shifted(c_.size() + 1, mpz_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) shifted[i + 1] = c_[i];
  return {poly_, std::move(shifted)};
}

mpz_class RingElement::trace() const {
  mpz_class t = 0;
  const auto ps = poly_->power_sums();
  for (std::size_t i = 0; i < c_.size(); ++i) t += c_[i] * ps[i];
  return t;
}

mpz_class RingElement::max_abs_coeff() const {
  mpz_class best = 0;
  for (const auto& v : c_) best = std::max<mpz_class>(best, abs(v));
  return best;
}

std::string RingElement::to_string() const { return join(c_); }

RingElement operator+(const RingElement& a, const RingElement& b) {
  std::vector<mpz_class> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return {a.poly_, std::move(c)};
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  std::vector<mpz_class> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return {a.poly_, std::move(c)};
}

RingElement operator-(const RingElement& a) {
  std::vector<mpz_class> c(a.c_);
  for (auto& v : c) v = -v;
  return {a.poly_, std::move(c)};
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  return {a.poly_, multiply_reduce<mpz_class>(a.c_, b.c_, *a.poly_)};
}

RingElement operator*(const mpz_class& k, const RingElement& a) {
  std::vector<mpz_class> c(a.c_);
  for (auto& v : c) v *= k;
  return {a.poly_, std::move(c)};
}

// ---------------------------------------------------------------- Q(theta)

FieldElement::FieldElement(PolyPtr poly, std::vector<mpq_class> coeffs) : poly_(std::move(poly)), c_(std::move(coeffs)) {
  for (auto& v : c_) v.canonicalize();
  const auto m = static_cast<std::size_t>(poly_->degree());
  if (c_.size() > m) {
    reduce_in_place(c_, *poly_);
  } else {
    c_.resize(m, mpq_class(0));
  }
}

FieldElement::FieldElement(const RingElement& x) : poly_(x.poly()) {
  for (const auto& v : x.coeffs()) c_.emplace_back(v);
}

FieldElement FieldElement::constant(PolyPtr poly, const mpq_class& c) { return {std::move(poly), {c}}; }

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
}

bool FieldElement::is_one() const { return c_[0] == 1 && is_rational(); }

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& v) { return v == 0; });
}

mpz_class FieldElement::denominator() const {
  mpz_class l = 1;
  for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

bool FieldElement::is_integral() const { return denominator() == 1; }

RingElement FieldElement::to_ring() const {
  if (!is_integral()) throw PisotError(ErrorCode::InvalidArgument, "element is not in Z[theta]: " + to_string());
  std::vector<mpz_class> c;
  for (const auto& v : c_) c.push_back(v.get_num());
  return {poly_, std::move(c)};
}

mpq_class FieldElement::trace() const {
  mpq_class t = 0;
  const auto ps = poly_->power_sums();
  for (std::size_t i = 0; i < c_.size(); ++i) t += c_[i] * ps[i];
  return t;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i].get_num() << '/' << c_[i].get_den();
  }
  return os.str();
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  std::vector<mpq_class> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return {a.poly_, std::move(c)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  std::vector<mpq_class> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return {a.poly_, std::move(c)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return {a.poly_, multiply_reduce<mpq_class>(a.c_, b.c_, *a.poly_)};
}

FieldElement operator*(const mpq_class& k, const FieldElement& a) {
  std::vector<mpq_class> c(a.c_);
  for (auto& v : c) v *= k;
  return {a.poly_, std::move(c)};
}

// ---------------------------------------------------------------- Pisot number

const Complex& PisotNumber::root(int which) const {
  if (which < 1 || which > degree()) {
    throw PisotError(ErrorCode::InvalidArgument, "embedding index out of range: " + std::to_string(which));
  }
  return which == 1 ? theta_c_ : conjugates_[static_cast<std::size_t>(which - 2)];
}

PisotNumber build_pisot(std::vector<std::int64_t> d, int precision_bits) {
  if (precision_bits < 64) throw PisotError(ErrorCode::InvalidArgument, "precision_bits must be >= 64");
  auto poly = std::make_shared<const MinimalPolynomial>(std::move(d));
  if (!poly->is_squarefree()) {
    throw PisotError(ErrorCode::NotSquarefree, "x^m - d_1 x^{m-1} - ... shares a factor with its derivative");
  }
  const auto p = static_cast<mpfr_prec_t>(precision_bits);
  const auto asc = poly->ascending();
  std::vector<Complex> roots = detail::polynomial_roots(asc, p);

  const Real one(1L, p);
  const Real inner = one - two_pow(-kCertificationMarginLog2, p);
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].norm() >= inner) outside.push_back(i);
  }
  if (outside.size() != 1) {
    throw PisotError(ErrorCode::NotPisot,
                     std::to_string(outside.size()) + " roots on or outside |z| = 1 - 2^-20 for " + poly->to_string());
  }
  Complex dominant = roots[outside.front()];
  if (!dominant.im.is_zero() || dominant.re.sign() < 0) {
    throw PisotError(ErrorCode::NoDominantRealRoot, "the root outside the unit disk is not a positive real");
  }
  if (dominant.re <= one + two_pow(-kCertificationMarginLog2, p)) {
    throw PisotError(ErrorCode::NotPisot, "dominant root is not separated from 1");
  }

  // Residual certification: |f(z)| < 2^-(bits-16) at every computed root.
  const Real residual_cap = two_pow(-(precision_bits - 16), p);
  for (const auto& z : roots) {
    if (detail::eval_poly(asc, z).norm() >= residual_cap * max(one, pow(z.norm(), poly->degree()))) {
      throw PisotError(ErrorCode::PrecisionExhausted, "root refinement did not reach the working precision");
    }
  }

  PisotNumber out;
  out.poly_ = poly;
  out.precision_bits_ = precision_bits;
  out.theta_ = dominant.re;
  out.theta_c_ = dominant;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i != outside.front()) out.conjugates_.push_back(roots[i]);
  }
  std::sort(out.conjugates_.begin(), out.conjugates_.end(), [](const Complex& a, const Complex& b) {
    const Real na = a.norm();
    const Real nb = b.norm();
    if (na != nb) return na > nb;
    if (a.re != b.re) return a.re > b.re;
    return a.im > b.im;
  });
  out.rho_ = Real(p);
  for (const auto& z : out.conjugates_) out.rho_ = max(out.rho_, z.norm());
  mpz_class weight = 1;
  for (const auto v : poly->d()) weight += abs(mpz_class(v));
  out.delta_max_ = mpq_class(1, weight);
  out.delta_max_.canonicalize();
  return out;
}

// ---------------------------------------------------------------- operations

RingElement ring_add(const RingElement& a, const RingElement& b) { return a + b; }
RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }
RingElement ring_theta_pow(const PisotNumber& p, std::uint64_t j) { return RingElement::theta_pow(p.poly_ptr(), j); }

namespace {

template <class Coeff>
Complex horner(const PisotNumber& p, std::span<const Coeff> c, int which) {
  const mpfr_prec_t bits = p.precision_bits();
  const Complex& z = p.root(which);
  Complex acc(Real(c.back(), bits), Real(bits));
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc = acc * z + Complex(Real(c[i], bits), Real(bits));
  }
  if (which == 1) acc.im = Real(bits);
  return acc;
}

template <class Coeff>
Real horner_real(const PisotNumber& p, std::span<const Coeff> c) {
  const mpfr_prec_t bits = p.precision_bits();
  Real acc(c.back(), bits);
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * p.theta() + Real(c[i], bits);
  return acc;
}

Complex complex_pow(const Complex& z, std::uint64_t e) {
  Complex result(Real(1L, z.precision()), Real(z.precision()));
  Complex base = z;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace

Complex embed(const PisotNumber& p, const RingElement& x, int which) { return horner<mpz_class>(p, x.coeffs(), which); }
Complex embed(const PisotNumber& p, const FieldElement& x, int which) { return horner<mpq_class>(p, x.coeffs(), which); }
Real embed_real(const PisotNumber& p, const RingElement& x) { return horner_real<mpz_class>(p, x.coeffs()); }
Real embed_real(const PisotNumber& p, const FieldElement& x) { return horner_real<mpq_class>(p, x.coeffs()); }

Real real_size(const PisotNumber& p, const RingElement& x) {
  const mpfr_prec_t bits = p.precision_bits();
  Real acc(bits);
  Real power(1L, bits);
  for (const auto& c : x.coeffs()) {
    acc += Real(mpz_class(abs(c)), bits) * power;
    power *= p.theta();
  }
  return acc;
}

Real real_size(const PisotNumber& p, const FieldElement& x) {
  const mpfr_prec_t bits = p.precision_bits();
  Real acc(bits);
  Real power(1L, bits);
  for (const auto& c : x.coeffs()) {
    acc += Real(mpq_class(abs(c)), bits) * power;
    power *= p.theta();
  }
  return acc;
}

Real conjugate_weight(const PisotNumber& p, const FieldElement& x) {
  Real w(static_cast<mpfr_prec_t>(p.precision_bits()));
  for (int i = 2; i <= p.degree(); ++i) w += embed(p, x, i).norm();
  return w;
}

FieldElement dual_generator(const PisotNumber& p) {
  const int m = p.degree();
  std::vector<mpz_class> c(static_cast<std::size_t>(m));
  // f'(x) = m x^{m-1} - sum_i (m - i) d_i x^{m-1-i}
  c[static_cast<std::size_t>(m - 1)] = m;
  for (int i = 1; i < m; ++i) c[static_cast<std::size_t>(m - 1 - i)] -= mpz_class(m - i) * p.poly().d(i);
  return field_invert(FieldElement(p.ring(std::move(c))));
}

bool has_integral_traces(const PisotNumber& p, const FieldElement& x) {
  FieldElement w = x;
  const FieldElement theta(p.ring({0, 1}));
  for (int j = 0; j < p.degree(); ++j) {
    if (w.trace().get_den() != 1) return false;
    w = w * theta;
  }
  return true;
}

Real conjugate_weight(const PisotNumber& p, const RingElement& x) {
  Real w(static_cast<mpfr_prec_t>(p.precision_bits()));
  for (int i = 2; i <= p.degree(); ++i) w += embed(p, x, i).norm();
  return w;
}

NearestIntData nearest_int_data(const PisotNumber& p, const RingElement& x, std::uint64_t j) {
  const mpfr_prec_t bits = p.precision_bits();
  const Real theta_j = pow(p.theta(), static_cast<long>(j));
  const Real size = real_size(p, x) * theta_j;
  const Real ulp = two_pow(-static_cast<long>(bits), bits);
  if (ulp * size >= Real(0.25, bits)) {
    throw PisotError(ErrorCode::PrecisionExhausted,
                     "x theta^" + std::to_string(j) + " exceeds the working precision");
  }
  const RingElement w = x * RingElement::theta_pow(p.poly_ptr(), j);

  NearestIntData out;
  const Real direct = embed_real(p, w);
  const mpz_class k_direct = nearest_integer(direct);
  out.delta_direct = direct - Real(k_direct, bits);
  out.K = k_direct;
  out.delta = out.delta_direct;

  // sum_{i>=2} sigma_i(x) theta_i^j; w + sum = Tr(w) exactly.
  Complex s(bits);
  for (int i = 2; i <= p.degree(); ++i) {
    const Complex power = complex_pow(p.root(i), j);
    s += embed(p, x, i) * power;
  }
  const Real half(0.5, bits);
  if (s.norm() < half) {
    out.trace_route = true;
    out.delta_trace = -s.re;
    mpz_class k_trace = w.trace();
    if (out.delta_trace <= -half) {
      // keep the (-1/2, 1/2] convention
      out.delta_trace += Real(1L, bits);
      k_trace -= 1;
    }
    const Real direct_err = ulp * size * static_cast<long>(8 * (p.degree() + 2));
    const Real tolerance = max(two_pow(-static_cast<long>(bits) / 2, bits), direct_err);
    if (k_trace != k_direct || abs(out.delta_trace - out.delta_direct) > tolerance) {
      throw PisotError(ErrorCode::PrecisionExhausted, "direct and trace routes disagree at j=" + std::to_string(j));
    }
    out.K = k_trace;
    out.delta = out.delta_trace;
  }
  if (half - abs(out.delta) <= two_pow(-static_cast<long>(bits) / 2, bits)) {
    throw PisotError(ErrorCode::AmbiguousRounding, "x theta^" + std::to_string(j) + " is too close to a half-integer");
  }
  return out;
}

FieldElement field_invert(const FieldElement& r) {
  if (r.is_zero()) throw PisotError(ErrorCode::ZeroDivision, "inverse of zero");
  const MinimalPolynomial& f = *r.poly();
  QPoly r0 = to_qpoly(f.ascending());
  QPoly r1(r.coeffs().begin(), r.coeffs().end());
  trim(r1);
  QPoly s0;
  QPoly s1{mpq_class(1)};
  while (!r1.empty()) {
    auto [q, rem] = divmod(r0, r1);
    QPoly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw PisotError(ErrorCode::ZeroDivision, "element shares a factor with the polynomial");
  const mpq_class scale = 1 / r0[0];
  for (auto& v : s0) v *= scale;
  return {r.poly(), std::move(s0)};
}

DistDecay dist_decay(const PisotNumber& p, const RingElement& z, std::uint64_t j_max) {
  DistDecay out{{}, conjugate_weight(p, z)};
  out.distances.reserve(j_max + 1);
  for (std::uint64_t j = 0; j <= j_max; ++j) {
    if (z.is_zero()) {
      out.distances.emplace_back(static_cast<mpfr_prec_t>(p.precision_bits()));
      continue;
    }
    out.distances.push_back(abs(nearest_int_data(p, z, j).delta));
  }
  return out;
}

}  // namespace pisot
