#pragma once

#include <vector>

#include <gmpxx.h>

#include "pisot/real.hpp"

namespace pisot::detail {

/// All complex roots of a monic squarefree integer polynomial (ascending
/// coefficients, leading coefficient 1) to roughly `bits` bits. Estimates come
/// from the companion matrix; each is polished by Newton iteration, with a
/// simultaneous Weierstrass sweep as fallback if two estimates collapse.
std::vector<Complex> polynomial_roots(const std::vector<mpz_class>& ascending, mpfr_prec_t bits);

/// f(z) evaluated by Horner's rule.
Complex eval_poly(const std::vector<mpz_class>& ascending, const Complex& z);

}  // namespace pisot::detail
