#include "pisot/transform.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>

#include "pisot/kernels.hpp"

namespace pisot {

MuHatResult mu_hat(const Real& theta, const Real& t, double tol) {
  if (!(tol > 0.0 && tol < 0.5)) throw PisotError(ErrorCode::InvalidTolerance, "tol must lie in (0, 1/2)");
  if (!(theta > 1.0)) throw PisotError(ErrorCode::InvalidArgument, "theta must exceed 1");
  const mpfr_prec_t p = std::max(theta.precision(), t.precision());
  const Real ulp = two_pow(-static_cast<long>(p), p);
  const Real two_pi = pi(p) * 2L;
  const Real inv = Real(1L, p) / theta;
  const Real tail_scale = Real(1L, p) / (Real(1L, p) - inv * inv);
  const Real tol_r(tol, p);

  Real u = abs(t);
  if (u.is_zero()) return {Real(1L, p), Real(p), -1, false};
  Real prod(1L, p);
  Real allowance(p);  // sum of relative factor errors
  MuHatResult out{Real(p), Real(p), 0, false};
  for (long k = 0;; ++k) {
    const Real a = two_pi * u;
    if (a <= 1.0 && a * a * tail_scale <= tol_r) {
      out.K = k - 1;
      break;
    }
    const Real c = cos_2pi(u);
    const Real arg_err = u * (2 * k + 2) * ulp;
    const Real factor_err = two_pi * arg_err + ulp * 4L;
    if (abs(c) < kFactorFloor) {
      out.contains_zero = true;
      out.K = k;
      out.error_bound = abs(c) + factor_err;
      return out;
    }
    allowance += factor_err / abs(c) + ulp * 2L;
    prod *= c;
    u *= inv;
  }
  if (allowance >= 0.5) throw PisotError(ErrorCode::PrecisionExhausted, "rounding allowance too large for mu_hat");
  const Real one(1L, p);
  const Real relative = exp(allowance) - one;
  // |true - value| <= |value| (tol + R) / (1 - R), R the relative rounding bound.
  out.error_bound = abs(prod) * (tol_r + relative) / (one - relative) * (one + two_pow(-30, p));
  out.value = prod;
  return out;
}

DigitTrace digit_trace(const PisotNumber& P, const Real& y, int N, std::optional<mpq_class> threshold) {
  const mpfr_prec_t p = P.precision_bits();
  if (N < 0) throw PisotError(ErrorCode::InvalidArgument, "N must be nonnegative");
  if (!(y >= 1.0) || !(y < P.theta())) throw PisotError(ErrorCode::InvalidArgument, "y must lie in [1, theta)");
  const mpq_class thr = threshold.value_or(P.delta_max());
  if (thr <= 0 || thr > P.delta_max()) throw PisotError(ErrorCode::InvalidDelta, "threshold must lie in (0, delta_max]");
  const Real ulp = two_pow(-static_cast<long>(p), p);
  if (ulp * pow(P.theta(), N) >= Real(0.25, p)) {
    throw PisotError(ErrorCode::PrecisionExhausted, "theta^N exceeds the working precision");
  }
  DigitTrace out;
  out.y = Real(p);
  mpfr_set(out.y.get(), y.get(), MPFR_RNDN);
  out.N = N;
  out.threshold = Real(thr, p);
  Real x = out.y;
  const Real half(0.5, p);
  for (int j = 1; j <= N; ++j) {
    x *= P.theta();
    const mpz_class K = nearest_integer(x);
    Real delta = x - Real(K, p);
    const Real err = x * (2 * j + 4) * ulp;
    if (half - abs(delta) <= err) {
      throw PisotError(ErrorCode::AmbiguousRounding, "y theta^" + std::to_string(j) + " is too close to a half-integer");
    }
    if (abs(delta) > out.threshold) out.exceed_set.push_back(j);
    out.K.push_back(K);
    out.delta.push_back(std::move(delta));
  }
  return out;
}

std::vector<int> check_recurrence(const DigitTrace& trace, const PisotNumber& P, const mpq_class& delta) {
  if (delta <= 0 || delta >= P.delta_max()) throw PisotError(ErrorCode::InvalidDelta, "delta must lie in (0, delta_max)");
  const int m = P.degree();
  const Real bound(delta, P.precision_bits());
  std::vector<int> violations;
  int j = 1;
  while (j <= trace.N) {
    if (abs(trace.delta[static_cast<std::size_t>(j - 1)]) > bound) {
      ++j;
      continue;
    }
    const int start = j;
    while (j <= trace.N && !(abs(trace.delta[static_cast<std::size_t>(j - 1)]) > bound)) ++j;
    const int end = j - 1;  // run start..end
    for (int i = start; i + m <= end; ++i) {
      mpz_class rhs = 0;
      for (int s = 1; s <= m; ++s) rhs += mpz_class(P.poly().d(s)) * trace.K[static_cast<std::size_t>(i + m - s - 1)];
      if (rhs != trace.K[static_cast<std::size_t>(i + m - 1)]) violations.push_back(i);
    }
  }
  return violations;
}

std::vector<SeriesItem> coefficient_series(const Real& theta, const Real& r, std::int64_t N, double tol, bool fast) {
  if (!(r > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "r must be positive");
  if (!(tol > 0.0 && tol < 0.5)) throw PisotError(ErrorCode::InvalidTolerance, "tol must lie in (0, 1/2)");
  const mpfr_prec_t p = std::max(theta.precision(), r.precision());
  std::vector<SeriesItem> items(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)));
  if (fast) {
    const double th = theta.to_double();
    const double rd = r.to_double();
    std::vector<double> ts(items.size());
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = rd * static_cast<double>(i + 1);
    std::vector<double> values(ts.size());
    fast::mu_hat_batch(th, ts, tol, values);
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i] = {static_cast<std::int64_t>(i + 1), Real(ts[i], p),
                  {Real(values[i], p), Real(p), 0, values[i] == 0.0}};
    }
    return items;
  }
  const auto count = static_cast<std::int64_t>(items.size());
  std::vector<std::exception_ptr> failures(items.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    const Real t = r * (i + 1);
    try {
      items[static_cast<std::size_t>(i)] = {i + 1, t, mu_hat(theta, t, tol)};
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return items;
}

std::vector<SeriesItem> coefficient_series(const PisotNumber& P, const FieldElement& r, std::int64_t N, double tol,
                                           bool fast) {
  return coefficient_series(P.theta(), embed_real(P, r), N, tol, fast);
}

void write_series_csv(std::ostream& os, const std::vector<SeriesItem>& items, int digits) {
  os << "n,t,value,error_bound,contains_zero\n";
  for (const auto& it : items) {
    os << it.n << ',' << it.t.to_string(digits) << ',' << it.result.value.to_string(digits) << ','
       << it.result.error_bound.to_string(6) << ',' << (it.result.contains_zero ? "true" : "false") << '\n';
  }
}

}  // namespace pisot
