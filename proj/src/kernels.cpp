#include "pisot/kernels.hpp"

#include <cmath>
#include <numbers>

namespace pisot::fast {

double cos2pi(double x) {
  const double g = std::fabs(x - std::nearbyint(x));
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (g == 0.25) return 0.0;
  if (g <= 0.125) return std::cos(kTwoPi * g);
  if (g < 0.375) return std::sin(kTwoPi * (0.25 - g));
  return -std::cos(kTwoPi * (0.5 - g));
}

double mu_hat(double theta, double t, double tol) {
  const double inv = 1.0 / theta;
  const double tail_scale = 1.0 / (1.0 - inv * inv);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double u = std::fabs(t);
  double prod = 1.0;
  for (;;) {
    const double a = kTwoPi * u;
    if (a <= 1.0 && a * a * tail_scale <= tol) break;
    prod *= cos2pi(u);
    if (prod == 0.0) break;
    u *= inv;
  }
  return prod;
}

void mu_hat_batch(double theta, std::span<const double> t, double tol, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(t.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = mu_hat(theta, t[i], tol);
}

void mu_hat_batch_serial(double theta, std::span<const double> t, double tol, std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = mu_hat(theta, t[i], tol);
}

std::vector<double> abs_series(double theta, double r, std::int64_t n_first, std::int64_t n_last, double tol) {
  std::vector<double> out(n_last >= n_first ? static_cast<std::size_t>(n_last - n_first + 1) : 0);
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    out[i] = std::fabs(mu_hat(theta, r * static_cast<double>(n_first + i), tol));
  }
  return out;
}

std::vector<double> abs_series_serial(double theta, double r, std::int64_t n_first, std::int64_t n_last, double tol) {
  std::vector<double> out;
  for (std::int64_t n = n_first; n <= n_last; ++n) out.push_back(std::fabs(mu_hat(theta, r * static_cast<double>(n), tol)));
  return out;
}

}  // namespace pisot::fast
