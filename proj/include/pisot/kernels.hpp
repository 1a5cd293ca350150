#pragma once

// Hardware-double evaluation of the cosine product. Every element is computed
// independently with a fixed operation order, so results do not depend on the
// thread count.

#include <cstdint>
#include <span>
#include <vector>

namespace pisot::fast {

// cos(2 pi x), reduced modulo 1 first; exact zero at quarter points.
double cos2pi(double x);

// prod_{k>=0} cos(2 pi theta^-k t), truncated once the remaining tail has
// relative effect <= tol.
double mu_hat(double theta, double t, double tol);

// out[i] = mu_hat(theta, t[i], tol)
void mu_hat_batch(double theta, std::span<const double> t, double tol, std::span<double> out);
void mu_hat_batch_serial(double theta, std::span<const double> t, double tol, std::span<double> out);

// |mu_hat(theta, r n)| for n = n_first .. n_last.
std::vector<double> abs_series(double theta, double r, std::int64_t n_first, std::int64_t n_last, double tol);
std::vector<double> abs_series_serial(double theta, double r, std::int64_t n_first, std::int64_t n_last, double tol);

}  // namespace pisot::fast
