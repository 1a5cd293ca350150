#include <doctest.h>

#include <random>

#include "pisot/spectrum.hpp"
#include "pisot/transform.hpp"

using namespace pisot;

namespace {

// prod_{j=-80}^{120} |cos(pi theta^j)| straight from powers of theta at 512 bits.
Real brute_phi_golden() {
  const mpfr_prec_t bits = 512;
  const Real theta = (Real(1L, bits) + sqrt(Real(5L, bits))) / 2L;
  Real prod(1L, bits);
  for (long j = -80; j <= 120; ++j) {
    const Real x = j >= 0 ? pow(theta, j) : Real(1L, bits) / pow(theta, -j);
    prod *= abs(cos(pi(bits) * x));
  }
  return prod;
}

std::vector<RingElement> random_ring(const PisotNumber& P, std::mt19937_64& rng, int count, int h) {
  std::uniform_int_distribution<int> coef(-h, h);
  std::vector<RingElement> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<mpz_class> c;
    for (int i = 0; i < P.degree(); ++i) c.emplace_back(coef(rng));
    auto z = P.ring(std::move(c));
    if (!z.is_zero()) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

TEST_CASE("Phi of zero is one") {
  const auto P = build_pisot({1, 1});
  const auto r = phi_biinfinite(P, P.ring_int(0), 1e-20);
  CHECK(r.value == 1.0);
  CHECK(r.error_bound.is_zero());
}

TEST_CASE("Phi(1) for the golden ratio matches direct truncation") {
  const auto P = build_pisot({1, 1});
  const auto r = phi_biinfinite(P, P.ring_int(1), 1e-20);
  const Real oracle = brute_phi_golden();
  CHECK(abs(r.value - oracle) <= r.error_bound + Real(1e-30, 256));
  CHECK(std::abs(r.value.to_double() - 0.006613493035344123) < 1e-17);
}

TEST_CASE("theta = 2 is degenerate") {
  const auto P = build_pisot({2});
  for (long z : {1L, 3L, -6L, 40L}) {
    const auto r = phi_biinfinite(P, P.ring_int(z), 1e-20);
    CHECK(r.degenerate_zero);
    CHECK(r.value.is_zero());
    CHECK(r.error_bound.is_zero());
  }
}

TEST_CASE("theta = 3 has nonzero products") {
  const auto P = build_pisot({3});
  const auto r = phi_biinfinite(P, P.ring_int(1), 1e-20);
  CHECK_FALSE(r.degenerate_zero);
  CHECK(r.value > 0.1);
}

TEST_CASE("Phi is shift and sign invariant") {
  std::mt19937_64 rng(5);
  for (const auto& d : {std::vector<std::int64_t>{1, 1}, {1, 1, 1}, {1, 0, 0, 1}}) {
    const auto P = build_pisot(d);
    const auto theta = P.ring({0, 1});
    for (const auto& z : random_ring(P, rng, 15, 5)) {
      const auto a = phi_biinfinite(P, z, 1e-20);
      const auto b = phi_biinfinite(P, z * theta, 1e-20);
      const auto c = phi_biinfinite(P, -z, 1e-20);
      CHECK(abs(a.value - b.value) <= a.error_bound + b.error_bound);
      CHECK(abs(a.value - c.value) <= a.error_bound + c.error_bound);
    }
  }
}

TEST_CASE("phi_Lambda(q) equals Phi(2 Lambda q)") {
  const auto P = build_pisot({1, 1, 1});
  std::mt19937_64 rng(9);
  const auto zs = random_ring(P, rng, 10, 3);
  for (std::size_t i = 0; i + 1 < zs.size(); i += 2) {
    const auto a = phi_lambda(P, zs[i], zs[i + 1], 1e-20);
    const auto b = phi_biinfinite(P, mpz_class(2) * (zs[i] * zs[i + 1]), 1e-20);
    CHECK(abs(a.value - b.value) <= a.error_bound + b.error_bound);
  }
}

TEST_CASE("tail(x) equals |mu_hat(x)|") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (const auto& d : {std::vector<std::int64_t>{1, 1}, {1, 1, 1}, {1, 0, 0, 1}}) {
    const auto P = build_pisot(d);
    for (int i = 0; i < 20; ++i) {
      const double x = dist(rng);
      const auto t = tail_value(P, P.field_rational(mpq_class(x)), 1e-20);
      const auto m = mu_hat(P.theta(), Real(x, 256), 1e-20);
      CHECK(abs(t.value - abs(m.value)) <= t.error_bound + m.error_bound);
    }
  }
  const auto P = build_pisot({1, 1});
  const auto t = tail_value(P, P.field_rational(mpq_class(13, 10)), 1e-20);
  const auto m = mu_hat(P.theta(), Real::parse("1.3", 256), 1e-20);
  CHECK(abs(t.value - abs(m.value)) <= t.error_bound + m.error_bound + two_pow(-240, 256));
}

TEST_CASE("tail detects exact zeros") {
  const auto P = build_pisot({2});
  const auto t = tail_value(P, P.field_rational(mpq_class(3, 2)), 1e-20);  // 3/2, 3/4
  CHECK(t.degenerate_zero);
}

TEST_CASE("limit value") {
  const auto P = build_pisot({1, 1});
  const auto one = P.field_rational(1);
  const auto c = limit_value(P, {P.ring_int(0)}, 0, one, 1e-20);
  CHECK(c.predicted == 1.0);
  const auto d = limit_value(P, {P.ring_int(1)}, 2, one, 1e-20);
  const auto phi = phi_biinfinite(P, P.ring_int(1), 1e-20);
  const auto tail = tail_value(P, P.field_rational(2), 1e-20);
  CHECK(abs(d.predicted - phi.value * tail.value) <= d.error_bound);
  CHECK_THROWS_AS(limit_value(P, {}, 0, one, 1e-20), PisotError);
}

TEST_CASE("enumeration windows") {
  const auto P = build_pisot({1, 1});
  const auto one = P.field_rational(1);
  EnumerationOptions o;
  o.height = 0;
  auto c = enumerate_spectrum(P, one, o);
  REQUIRE(c.size() == 1);
  CHECK(c[0].predicted == 1.0);

  o = {1, 1, 2, 1e-20, 0.05};
  c = enumerate_spectrum(P, one, o);
  REQUIRE(c.size() == 1);  // Phi(1) = 0.0066 is below 0.05

  o.eta = 1e-6;
  c = enumerate_spectrum(P, one, o);
  const auto phi = phi_biinfinite(P, P.ring_int(1), 1e-20);
  const auto tail = tail_value(P, P.field_rational(2), 1e-20);
  const Real target = phi.value * tail.value;
  bool has_phi = false;
  bool has_product = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (abs(c[i].predicted - phi.value) < 1e-18) has_phi = true;
    if (abs(c[i].predicted - target) < 1e-18) has_product = true;
    if (i > 0) {
      CHECK(c[i - 1].predicted - c[i].predicted > 2e-20);
    }
  }
  CHECK(has_phi);
  CHECK(has_product);

  o.budget = 100;
  try {
    enumerate_spectrum(P, one, o);
    FAIL("expected BudgetExceeded");
  } catch (const PisotError& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("enumeration at theta = 2 keeps only the trivial product") {
  const auto P = build_pisot({2});
  EnumerationOptions o{2, 1, 0, 1e-20, 1e-9};
  const auto c = enumerate_spectrum(P, P.field_rational(1), o);
  REQUIRE(c.size() == 1);
  CHECK(c[0].predicted == 1.0);
}

TEST_CASE("sequence synthesis") {
  const auto P = build_pisot({1, 1});
  const auto half = P.field_rational(mpq_class(1, 2));
  CHECK(synthesize_sequence(P, {P.ring_int(1)}, 0, half, 10) == 123);
  for (int k = 1; k < 6; ++k) CHECK(synthesize_sequence(P, {P.ring_int(0)}, 5, half, k) == 5);
  // r = 1: n_k = <theta^k / 2>.
  CHECK(synthesize_sequence(P, {P.ring_int(1)}, 0, P.field_rational(1), 10) == 61);

  const auto phi = phi_biinfinite(P, P.ring_int(1), 1e-20);
  double previous = 1.0;
  for (int k : {10, 14, 18}) {
    const auto n = synthesize_sequence(P, {P.ring_int(1)}, 0, half, k);
    const auto m = mu_hat(P.theta(), Real(n, 256) / 2L, 1e-20);
    const double gap = abs(abs(m.value) - phi.value).to_double();
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous <= 1e-3);
  CHECK(previous < 1e-8);  // 5.6e-9 at k = 18
}

TEST_CASE("product law residual") {
  const auto P = build_pisot({1, 1});
  const auto one = P.ring_int(1);
  const auto zero = P.ring_int(0);
  CHECK(product_law_residual(P, one, one, zero, 5, 1e-20).value < 1e-60);
  const auto r10 = product_law_residual(P, one, one, one, 10, 1e-25);
  const auto r40 = product_law_residual(P, one, one, one, 40, 1e-25);
  CHECK(r40.value <= 1e-12);  // 6.5e-13 observed
  CHECK(r40.value < r10.value);
}
