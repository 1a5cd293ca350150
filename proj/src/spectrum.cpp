#include "pisot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "pisot/transform.hpp"

namespace pisot {

namespace {

constexpr long kMaxFactors = 1'000'000;

void check_tol(double tol) {
  if (!(tol > 0.0 && tol < 0.5)) throw PisotError(ErrorCode::InvalidTolerance, "tol must lie in (0, 1/2)");
}

// Accumulates prod |c_k| with relative rounding allowance.
class Accumulator {
 public:
  explicit Accumulator(mpfr_prec_t p) : prod_(1L, p), allowance_(p), ulp_(two_pow(-static_cast<long>(p), p)) {}

  // Returns false when the factor fell below the floor.
  bool add(const Real& c, const Real& abs_err) {
    const Real mag = abs(c);
    if (mag < kFactorFloor) {
      zero_bound_ = mag + abs_err;
      return false;
    }
    allowance_ += abs_err / mag + ulp_ * 2L;
    prod_ *= mag;
    return true;
  }

  [[nodiscard]] const Real& zero_bound() const { return zero_bound_; }

  // tail_tol bounds 1 - (neglected factors), which lie in [exp(-tail_tol), 1].
  void finish(ProductResult& out, double tail_tol) const {
    const mpfr_prec_t p = prod_.precision();
    if (allowance_ >= 0.5) throw PisotError(ErrorCode::PrecisionExhausted, "rounding allowance too large");
    const Real one(1L, p);
    const Real relative = exp(allowance_) - one;
    out.value = prod_;
    out.error_bound = prod_ * (Real(tail_tol, p) + relative) / (one - relative) * (one + two_pow(-30, p));
  }

 private:
  Real prod_;
  Real allowance_;
  Real ulp_;
  Real zero_bound_;
};

// prod_{j in Z} |cos(h pi z theta^j)| for h = 1 or 2.
ProductResult bi_product(const PisotNumber& P, const FieldElement& z, int h, double tol) {
  check_tol(tol);
  const mpfr_prec_t p = P.precision_bits();
  ProductResult out{Real(1L, p), Real(p), 0, 0, false, false};
  if (z.is_zero()) return out;
  if (!has_integral_traces(P, z)) {
    throw PisotError(ErrorCode::InvalidArgument, "z theta^j does not approach the integers: " + z.to_string());
  }
  const int m = P.degree();
  const Real ulp = two_pow(-static_cast<long>(p), p);
  const Real hpi = pi(p) * static_cast<long>(h);
  const Real half_tol(tol / 2, p);

  // Exact zeros can only come from j < 0, where z theta^j is rational and
  // an odd multiple of 1/(2h).
  {
    const FieldElement inv_theta = field_invert(FieldElement(P.ring({0, 1})));
    FieldElement w = z;
    Real size = abs(embed_real(P, z));
    const Real stop(0.5 / h * (1 - 1e-9), p);
    while (true) {
      w = w * inv_theta;
      size = size / P.theta();
      if (size < stop) break;
      if (w.is_rational()) {
        const mpq_class scaled = w[0] * (2 * h);
        if (scaled.get_den() == 1 && mpz_odd_p(scaled.get_num_mpz_t())) {
          out.value = Real(p);
          out.degenerate_zero = true;
          return out;
        }
      }
    }
  }

  Accumulator acc(p);
  // j < 0
  {
    const Real inv = Real(1L, p) / P.theta();
    const Real tail_scale = Real(1L, p) / (Real(1L, p) - inv * inv);
    const Real size = real_size(P, z);
    Real u = abs(embed_real(P, z)) * inv;
    Real size_k = size * inv;
    for (long k = 1;; ++k) {
      const Real a = hpi * u;
      if (a <= 1.0 && a * a * tail_scale <= half_tol) break;
      if (k > kMaxFactors) throw PisotError(ErrorCode::PrecisionExhausted, "too many factors");
      const Real c = cos_2pi(u * static_cast<long>(h) / 2L);
      const Real u_err = u * (2 * k + 2) * ulp + size_k * (2 * m + 4) * ulp;
      if (!acc.add(c, hpi * u_err + ulp * 4L)) {
        out.value = Real(p);
        out.error_bound = acc.zero_bound();
        out.contains_zero = true;
        return out;
      }
      out.factors_negative = k;
      u *= inv;
      size_k *= inv;
    }
  }
  // j >= 0 through the conjugates
  {
    const Real cz = conjugate_weight(P, z);
    const Real rho = P.rho();
    const Real tail_scale = Real(1L, p) / (Real(1L, p) - rho * rho);
    Real coeff_sum(p);
    for (const auto& c : z.coeffs()) coeff_sum += Real(mpq_class(abs(c)), p);
    const Real embed_err = coeff_sum * static_cast<long>(4 * m * m) * ulp;
    std::vector<Complex> w;
    for (int i = 2; i <= m; ++i) w.push_back(embed(P, z, i));
    Real bound = cz;  // C_z rho^j
    for (long j = 0;; ++j) {
      const Real a = hpi * bound;
      if (a <= 1.0 && a * a * tail_scale <= half_tol) break;
      if (j > kMaxFactors) throw PisotError(ErrorCode::PrecisionExhausted, "too many factors");
      Real s(p);
      for (const auto& wi : w) s += wi.re;
      const Real s_err = (cz * (2 * j + 2 * m + 4) + embed_err * static_cast<long>(m)) * ulp;
      const Real c = cos_2pi(s * static_cast<long>(h) / 2L);
      if (!acc.add(c, hpi * s_err + ulp * 4L)) {
        out.value = Real(p);
        out.error_bound = acc.zero_bound();
        out.contains_zero = true;
        return out;
      }
      out.factors_positive = j + 1;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] * P.conjugates()[i];
      bound *= rho;
    }
  }
  acc.finish(out, tol);
  return out;
}

}  // namespace

ProductResult phi_biinfinite(const PisotNumber& P, const RingElement& z, double tol) {
  return bi_product(P, FieldElement(z), 1, tol);
}

ProductResult phi_biinfinite(const PisotNumber& P, const FieldElement& z, double tol) { return bi_product(P, z, 1, tol); }

ProductResult phi_lambda(const PisotNumber& P, const RingElement& lambda, const RingElement& q, double tol) {
  return bi_product(P, FieldElement(lambda * q), 2, tol);
}

ProductResult tail_value(const PisotNumber& P, const FieldElement& x, double tol) {
  check_tol(tol);
  const mpfr_prec_t p = P.precision_bits();
  ProductResult out{Real(1L, p), Real(p), 0, 0, false, false};
  if (x.is_zero()) return out;
  const int m = P.degree();
  const Real ulp = two_pow(-static_cast<long>(p), p);
  const Real two_pi = pi(p) * 2L;
  const Real inv = Real(1L, p) / P.theta();
  const Real tail_scale = Real(1L, p) / (Real(1L, p) - inv * inv);
  const Real tol_r(tol, p);
  const FieldElement inv_theta = field_invert(FieldElement(P.ring({0, 1})));

  Accumulator acc(p);
  FieldElement w = x;
  Real bound = abs(embed_real(P, x));  // |x| theta^-j
  for (long j = 0;; ++j) {
    const Real a = two_pi * bound;
    if (a <= 1.0 && a * a * tail_scale <= tol_r) break;
    if (j > kMaxFactors) throw PisotError(ErrorCode::PrecisionExhausted, "too many factors");
    if (w.is_rational()) {
      const mpq_class scaled = w[0] * 4;
      if (scaled.get_den() == 1 && mpz_odd_p(scaled.get_num_mpz_t())) {
        out.value = Real(p);
        out.degenerate_zero = true;
        out.factors_positive = j + 1;
        return out;
      }
    }
    // |sum c_i theta^i| rounding: sum |c_i| theta^i (2m + 4) ulp
    Real size(p);
    Real power(1L, p);
    for (const auto& c : w.coeffs()) {
      size += abs(Real(c, p)) * power;
      power *= P.theta();
    }
    const Real u = embed_real(P, w);
    const Real c = cos_2pi(u);
    if (!acc.add(c, two_pi * size * (2 * m + 4) * ulp + ulp * 4L)) {
      out.value = Real(p);
      out.error_bound = acc.zero_bound();
      out.contains_zero = true;
      return out;
    }
    out.factors_positive = j + 1;
    w = w * inv_theta;
    bound *= inv;
  }
  acc.finish(out, tol);
  return out;
}

Residual compose_product(const std::vector<const ProductResult*>& factors) {
  mpfr_prec_t p = 64;
  for (const auto* f : factors) p = std::max(p, f->value.precision());
  Real value(1L, p);
  Real upper(1L, p);
  Real lower(1L, p);
  for (const auto* f : factors) {
    value *= f->value;
    upper *= f->value + f->error_bound;
    lower *= max(f->value - f->error_bound, Real(p));
  }
  const Real err = max(upper - value, value - lower) * (Real(1L, p) + two_pow(-30, p));
  return {value, err};
}

SpectrumCandidate limit_value(const PisotNumber& P, const std::vector<RingElement>& z_list, long A,
                              const FieldElement& r, double tol) {
  check_tol(tol);
  if (z_list.empty()) throw PisotError(ErrorCode::InvalidArgument, "z_list must not be empty");
  if (!(embed_real(P, r) > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "r must be positive");
  const double share = tol / static_cast<double>(z_list.size() + 1);
  std::vector<ProductResult> parts;
  parts.reserve(z_list.size() + 1);
  for (const auto& z : z_list) parts.push_back(phi_biinfinite(P, z, share));
  parts.push_back(tail_value(P, mpq_class(A) * r, share));
  std::vector<const ProductResult*> ptrs;
  for (const auto& part : parts) ptrs.push_back(&part);
  auto [value, err] = compose_product(ptrs);
  return {z_list, A, r, std::move(value), std::move(err), 0};
}

std::vector<SpectrumCandidate> enumerate_spectrum(const PisotNumber& P, const FieldElement& r,
                                                  const EnumerationOptions& opts) {
  check_tol(opts.tol);
  if (opts.height < 0 || opts.m_max < 0 || opts.a_max < 0) {
    throw PisotError(ErrorCode::InvalidArgument, "H, M_max and A_max must be nonnegative");
  }
  if (!(opts.eta > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "eta must be positive");
  if (!(embed_real(P, r) > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "r must be positive");
  const int m = P.degree();
  const mpfr_prec_t p = P.precision_bits();

  const mpz_class base = 2 * opts.height + 1;
  mpz_class vec_count;
  mpz_pow_ui(vec_count.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m));
  mpz_class total = 0;
  mpz_class tuples = 1;
  for (int M = 0; M <= opts.m_max; ++M) {
    tuples *= vec_count;
    total += tuples * (2 * opts.a_max + 1);
  }
  if (total > mpz_class(std::to_string(opts.budget))) {
    throw PisotError(ErrorCode::BudgetExceeded, "window holds " + total.get_str() + " candidates");
  }
  const auto V = static_cast<std::size_t>(vec_count.get_ui());

  // z vectors in lexicographic order, a_0 most significant.
  std::vector<RingElement> vectors;
  vectors.reserve(V);
  for (std::size_t idx = 0; idx < V; ++idx) {
    std::vector<mpz_class> c(static_cast<std::size_t>(m));
    std::size_t rest = idx;
    for (int i = m - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = static_cast<long>(rest % static_cast<std::size_t>(2 * opts.height + 1)) - opts.height;
      rest /= static_cast<std::size_t>(2 * opts.height + 1);
    }
    vectors.push_back(P.ring(std::move(c)));
  }

  const double share = opts.tol / static_cast<double>(opts.m_max + 2);
  const std::optional<FieldElement> scale = opts.dual ? std::optional(dual_generator(P)) : std::nullopt;
  std::vector<ProductResult> phi(V, ProductResult{Real(p), Real(p)});
  std::vector<std::exception_ptr> failures(V);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(V); ++i) {
    try {
      const RingElement& v = vectors[static_cast<std::size_t>(i)];
      phi[static_cast<std::size_t>(i)] = scale ? phi_biinfinite(P, *scale * FieldElement(v), share) : phi_biinfinite(P, v, share);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::vector<ProductResult> tails;
  for (long A = -opts.a_max; A <= opts.a_max; ++A) tails.push_back(tail_value(P, mpq_class(A) * r, share));

  struct Entry {
    std::uint64_t id;
    int M;
    long A;
    std::vector<std::size_t> idx;
    Real value;
    Real error;
  };
  std::vector<Entry> kept;
  std::uint64_t id = 0;
  for (int M = 0; M <= opts.m_max; ++M) {
    for (long A = -opts.a_max; A <= opts.a_max; ++A) {
      const ProductResult& tail = tails[static_cast<std::size_t>(A + opts.a_max)];
      std::vector<std::size_t> idx(static_cast<std::size_t>(M + 1), 0);
      while (true) {
        std::vector<const ProductResult*> parts{&tail};
        for (const auto i : idx) parts.push_back(&phi[i]);
        auto [value, err] = compose_product(parts);
        if (value >= opts.eta) kept.push_back({id, M, A, idx, std::move(value), std::move(err)});
        ++id;
        // odometer, last position fastest
        int pos = M;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == V) idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
      }
    }
  }

  std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.id < b.id;
  });
  const Real merge(2 * opts.tol, p);
  std::vector<SpectrumCandidate> out;
  std::size_t i = 0;
  while (i < kept.size()) {
    std::size_t best = i;
    std::size_t j = i + 1;
    while (j < kept.size() && kept[j - 1].value - kept[j].value <= merge) {
      if (kept[j].id < kept[best].id) best = j;
      ++j;
    }
    const Entry& e = kept[best];
    std::vector<RingElement> z;
    for (const auto k : e.idx) z.push_back(vectors[k]);
    out.push_back({std::move(z), e.A, r, e.value, e.error, e.id, opts.dual});
    i = j;
  }
  return out;
}

mpz_class synthesize_sequence(const PisotNumber& P, const std::vector<RingElement>& z_list, long A,
                              const FieldElement& r, int k) {
  if (z_list.empty()) throw PisotError(ErrorCode::InvalidArgument, "z_list must not be empty");
  if (k < 1) throw PisotError(ErrorCode::InvalidArgument, "k must be >= 1");
  if (!(embed_real(P, r) > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "r must be positive");
  const auto M = static_cast<std::uint64_t>(z_list.size() - 1);
  RingElement S = RingElement::zero(P.poly_ptr());
  for (std::uint64_t i = 0; i <= M; ++i) {
    S = S + z_list[i] * ring_theta_pow(P, (M + 1 - i) * static_cast<std::uint64_t>(k));
  }
  const FieldElement w = field_invert(mpq_class(2) * r) * FieldElement(S);
  if (w.is_integral()) return nearest_int_data(P, w.to_ring(), 0).K + A;

  // Clear the denominator D and locate D w exactly, then divide.
  const mpz_class D = w.denominator();
  const RingElement Dw = (mpq_class(D) * w).to_ring();
  const mpfr_prec_t p = P.precision_bits();
  const Real ulp = two_pow(-static_cast<long>(p), p);
  const Real size = real_size(P, Dw);
  if (ulp * size >= Real(0.25, p)) throw PisotError(ErrorCode::PrecisionExhausted, "n_k exceeds the working precision");
  const Real value = embed_real(P, Dw) / Real(D, p);
  const mpz_class n = nearest_integer(value);
  const Real delta = value - Real(n, p);
  const Real err = size / Real(D, p) * static_cast<long>(4 * P.degree() + 8) * ulp;
  if (Real(0.5, p) - abs(delta) <= err) {
    throw PisotError(ErrorCode::AmbiguousRounding, "(2r)^-1 S is too close to a half-integer");
  }
  return n + A;
}

std::optional<int> realization_index(const PisotNumber& P, const std::vector<RingElement>& z_list, long A,
                                     const FieldElement& r, double target, int k_max) {
  const mpfr_prec_t p = P.precision_bits();
  Real C(p);
  Real X = abs(embed_real(P, mpq_class(A) * r));
  for (const auto& z : z_list) {
    C += conjugate_weight(P, z);
    X += abs(embed_real(P, z));
  }
  const Real one(1L, p);
  const Real inv = one / P.theta();
  const Real rho = P.rho();
  for (int k = 1; k <= k_max; ++k) {
    const Real bound = pi(p) * (C * pow(rho, k) / (one - rho) + X * pow(inv, k) / (one - inv));
    if (bound <= target) return k;
  }
  return std::nullopt;
}

Residual product_law_residual(const PisotNumber& P, const RingElement& lambda, const RingElement& a,
                              const RingElement& b, int n, double tol) {
  if (n < 1) throw PisotError(ErrorCode::InvalidArgument, "n must be >= 1");
  const RingElement q = a + b * ring_theta_pow(P, static_cast<std::uint64_t>(n));
  const ProductResult joint = phi_lambda(P, lambda, q, tol);
  const ProductResult pa = phi_lambda(P, lambda, a, tol);
  const ProductResult pb = phi_lambda(P, lambda, b, tol);
  const Residual prod = compose_product({&pa, &pb});
  return {abs(joint.value - prod.value), joint.error_bound + prod.error_bound};
}

}  // namespace pisot
