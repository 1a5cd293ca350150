#include "roots.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace pisot::detail {

namespace {

struct Eval {
  Complex f;
  Complex df;
};

Eval eval_with_derivative(const std::vector<mpz_class>& a, const Complex& z) {
  const mpfr_prec_t p = z.precision();
  Complex f(Real(a.back(), p), Real(p));
  Complex df(p);
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    df = df * z + f;
    f = f * z + Complex(Real(a[i], p), Real(p));
  }
  return {f, df};
}

std::vector<std::complex<double>> companion_estimates(const std::vector<mpz_class>& a) {
  const auto m = static_cast<Eigen::Index>(a.size() - 1);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    c(0, j) = -a[static_cast<std::size_t>(m - 1 - j)].get_d();
  }
  for (Eigen::Index i = 1; i < m; ++i) c(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < m; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

Complex to_complex(std::complex<double> z, mpfr_prec_t p) {
  return {Real(z.real(), p), Real(z.imag(), p)};
}

bool newton_polish(const std::vector<mpz_class>& a, Complex& z, mpfr_prec_t p) {
  const Real eps = two_pow(-static_cast<long>(p) + 8, p);
  for (int iter = 0; iter < 400; ++iter) {
    const Eval e = eval_with_derivative(a, z);
    if (e.df.norm().is_zero()) return false;
    const Complex step = e.f / e.df;
    z = z - step;
    const Real scale = max(Real(1L, p), z.norm());
    if (step.norm() <= eps * scale) return true;
  }
  return false;
}

bool all_distinct(const std::vector<Complex>& roots, mpfr_prec_t p) {
  const Real sep = two_pow(-static_cast<long>(p) / 4, p);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if ((roots[i] - roots[j]).norm() <= sep) return false;
    }
  }
  return true;
}

// Weierstrass (Durand-Kerner) simultaneous iteration.
void weierstrass(const std::vector<mpz_class>& a, std::vector<Complex>& z, mpfr_prec_t p) {
  const Real eps = two_pow(-static_cast<long>(p) + 8, p);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst(p);
    for (std::size_t i = 0; i < z.size(); ++i) {
      Complex den(Real(1L, p), Real(p));
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) den = den * (z[i] - z[j]);
      }
      const Complex step = eval_poly(a, z[i]) / den;
      z[i] = z[i] - step;
      worst = max(worst, step.norm());
    }
    if (worst <= eps) return;
  }
}

}  // namespace

Complex eval_poly(const std::vector<mpz_class>& a, const Complex& z) {
  const mpfr_prec_t p = z.precision();
  Complex f(Real(a.back(), p), Real(p));
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    f = f * z + Complex(Real(a[i], p), Real(p));
  }
  return f;
}

std::vector<Complex> polynomial_roots(const std::vector<mpz_class>& a, mpfr_prec_t bits) {
  const mpfr_prec_t p = bits + 32;
  std::vector<Complex> roots;
  if (a.size() == 2) {
    roots.emplace_back(Real(mpz_class(-a[0]), p), Real(p));
  } else {
    const auto estimates = companion_estimates(a);
    bool ok = true;
    for (const auto& e : estimates) {
      Complex z = to_complex(e, p);
      ok = newton_polish(a, z, p) && ok;
      roots.push_back(std::move(z));
    }
    if (!ok || !all_distinct(roots, p)) {
      // Perturbed restart keeps the simultaneous iteration away from symmetric stalls.
      roots.clear();
      for (std::size_t i = 0; i < estimates.size(); ++i) {
        const std::complex<double> nudge(1e-3 * static_cast<double>(i + 1), 7e-4 * static_cast<double>(i + 2));
        roots.push_back(to_complex(estimates[i] + nudge, p));
      }
      weierstrass(a, roots, p);
      for (auto& z : roots) newton_polish(a, z, p);
    }
  }
  // Snap numerically real roots onto the real axis and re-polish there.
  const Real snap = two_pow(-static_cast<long>(bits) / 2, p);
  std::vector<Complex> out;
  for (auto& z : roots) {
    if (abs(z.im) <= snap * max(Real(1L, p), z.norm())) {
      z.im = Real(p);
      newton_polish(a, z, p);
      z.im = Real(p);
    }
    Complex r(bits);
    mpfr_set(r.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(r.im.get(), z.im.get(), MPFR_RNDN);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pisot::detail
