#include <doctest.h>

#include <random>

#include "pisot/core.hpp"

using namespace pisot;

namespace {

Real golden_oracle(mpfr_prec_t bits) { return (Real(1L, bits) + sqrt(Real(5L, bits))) / 2L; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const PisotError& e) {
    return e.code();
  }
  FAIL("no PisotError thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("golden ratio") {
  const auto p = build_pisot({1, 1});
  CHECK(abs(p.theta() - golden_oracle(256)) < two_pow(-250, 256));
  CHECK(p.delta_max() == mpq_class(1, 3));
  CHECK(abs(p.rho() - (golden_oracle(256) - 1L)) < two_pow(-250, 256));
  REQUIRE(p.conjugates().size() == 1);
  CHECK(p.conjugates()[0].re.sign() < 0);
  CHECK(p.conjugates()[0].im.is_zero());
}

TEST_CASE("tribonacci conjugate modulus") {
  const auto p = build_pisot({1, 1, 1});
  CHECK(std::abs(p.theta_double() - 1.839286755214161) < 1e-14);
  // Product of roots is 1, so |theta_2|^2 theta = 1.
  const Real expect = sqrt(Real(1L, 256) / p.theta());
  CHECK(abs(p.rho() - expect) < two_pow(-240, 256));
  CHECK(p.delta_max() == mpq_class(1, 4));
  REQUIRE(p.conjugates().size() == 2);
  CHECK(p.conjugates()[0].im.sign() > 0);
}

TEST_CASE("classification errors") {
  CHECK(code_of([] { build_pisot({1, -1}); }) == ErrorCode::NotPisot);
  CHECK(code_of([] { build_pisot({0, 1}); }) == ErrorCode::NotPisot);
  CHECK(code_of([] { build_pisot({2, -1}); }) == ErrorCode::NotSquarefree);
  CHECK(code_of([] { build_pisot({-2}); }) == ErrorCode::NoDominantRealRoot);
  CHECK(code_of([] { build_pisot({1}); }) == ErrorCode::NotPisot);
  CHECK(code_of([] { build_pisot({0, 0, 1}); }) == ErrorCode::NotPisot);
  CHECK(code_of([] { MinimalPolynomial::parse("1,,2"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("integer theta") {
  const auto p = build_pisot({2});
  CHECK(p.theta() == 2.0);
  CHECK(p.rho().is_zero());
  CHECK(p.conjugates().empty());
  CHECK(ring_theta_pow(p, 10).coeffs()[0] == 1024);
}

TEST_CASE("smallest Pisot number") {
  const auto p = build_pisot({0, 1, 1});
  CHECK(std::abs(p.theta_double() - 1.324717957244746) < 1e-14);
}

TEST_CASE("ring arithmetic") {
  const auto p = build_pisot({1, 1});
  const auto t10 = ring_theta_pow(p, 10);
  CHECK(t10.coeffs()[0] == 34);
  CHECK(t10.coeffs()[1] == 55);
  CHECK(t10.trace() == 123);  // Lucas L_10
  const auto a = p.ring({3, -2});
  const auto b = p.ring({-1, 5});
  // (3 - 2t)(-1 + 5t) = -3 + 17t - 10t^2 = -13 + 7t
  CHECK((a * b) == p.ring({-13, 7}));
  CHECK(ring_add(a, b) == p.ring({2, 3}));
  CHECK(p.ring({1, 2, 3}) == p.ring({4, 5}));
  CHECK(a.times_theta() == p.ring({-2, 1}));
}

TEST_CASE("power sums follow Newton's identities") {
  const MinimalPolynomial f({1, 1, 1});
  const auto ps = f.power_sums();
  CHECK(ps[0] == 3);
  CHECK(ps[1] == 1);
  CHECK(ps[2] == 3);
  const MinimalPolynomial g({2, -1, 3});
  CHECK(g.power_sums()[1] == 2);
  CHECK(g.power_sums()[2] == 2 * 2 + 2 * (-1));  // d1 p1 + 2 d2
}

TEST_CASE("trace matches the sum of embeddings") {
  const auto p = build_pisot({1, 1, 1});
  const auto x = p.ring({5, -3, 7});
  Complex s(256);
  for (int i = 1; i <= 3; ++i) s += embed(p, x, i);
  CHECK(abs(s.re - Real(x.trace(), 256)) < two_pow(-200, 256));
  CHECK(abs(s.im) < two_pow(-200, 256));
}

TEST_CASE("field inversion") {
  const auto p = build_pisot({1, 1});
  const auto inv = field_invert(p.field({0, 1}));
  CHECK(inv == p.field({-1, 1}));
  const auto x = p.field({mpq_class(2, 3), mpq_class(-5, 7)});
  CHECK((x * field_invert(x)).is_one());
  CHECK(code_of([&] { field_invert(p.field_rational(0)); }) == ErrorCode::ZeroDivision);
  // Inversion only needs an irreducible polynomial, not a Pisot one.
  const auto f = std::make_shared<const MinimalPolynomial>(std::vector<std::int64_t>{3, -2, 5, 1});
  const FieldElement y(f, {1, mpq_class(1, 2), -4, 9});
  CHECK((y * field_invert(y)).is_one());
  CHECK(field_invert(FieldElement::constant(f, mpq_class(4, 9))) == FieldElement::constant(f, mpq_class(9, 4)));
}

TEST_CASE("nearest integer data for golden powers") {
  const auto p = build_pisot({1, 1});
  const auto one = p.ring_int(1);
  const auto n4 = nearest_int_data(p, one, 4);
  CHECK(n4.K == 7);
  CHECK(n4.trace_route);
  const auto n10 = nearest_int_data(p, one, 10);
  CHECK(n10.K == 123);
  // delta = -(theta')^10 where theta' = 1 - theta.
  const Real conj = Real(1L, 256) - golden_oracle(256);
  CHECK(abs(n10.delta + pow(conj, 10)) < two_pow(-240, 256));
  // x theta^j with x = 1/2-ish ring element large.
  CHECK(nearest_int_data(p, p.ring({0, 1}), 0).K == 2);
}

TEST_CASE("precision exhaustion") {
  const auto p = build_pisot({1, 1}, 64);
  CHECK(code_of([&] { nearest_int_data(p, p.ring_int(1), 200); }) == ErrorCode::PrecisionExhausted);
}

TEST_CASE("distance decay bounded by conjugate weight") {
  const auto p = build_pisot({1, 1, 1});
  const auto z = p.ring({2, -1, 1});
  const auto dd = dist_decay(p, z, 40);
  for (std::size_t j = 0; j < dd.distances.size(); ++j) {
    CHECK(dd.distances[j] <= dd.c_z * pow(p.rho(), static_cast<long>(j)) * (1.0 + 1e-30));
  }
}

TEST_CASE("certified suite") {
  const auto p = build_pisot({1, 0, 0, 1});
  CHECK(std::abs(p.theta_double() - 1.3802775690976141) < 1e-14);
  for (long n = 3; n <= 10; ++n) {
    const auto q = build_pisot({n});
    CHECK(q.theta() == static_cast<double>(n));
    CHECK(q.conjugates().empty());
    CHECK(q.rho().is_zero());
  }
  // Salem polynomial: two conjugates on the unit circle.
  CHECK(code_of([] { build_pisot({1, 1, 1, -1}); }) == ErrorCode::NotPisot);
}

TEST_CASE("tribonacci rho is theta^-1/2") {
  const auto p = build_pisot({1, 1, 1});
  CHECK(abs(p.rho() - Real(1L, 256) / sqrt(p.theta())) < two_pow(-240, 256));
}

TEST_CASE("ring identities") {
  const auto p = build_pisot({1, 1});
  CHECK(ring_theta_pow(p, 2) == p.ring({1, 1}));
  CHECK(ring_mul(p.ring({0, 1}), p.ring({-1, 1})) == p.ring_int(1));
  const auto t = build_pisot({1, 1, 1});
  CHECK(field_invert(t.field({0, 1, 0})) == t.field({-1, -1, 1}));
  CHECK(field_invert(p.field_rational(mpq_class(1, 2))) == p.field_rational(2));
}

TEST_CASE("embeddings are multiplicative") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-100, 100);
  for (const auto& d : {std::vector<std::int64_t>{1, 1}, {1, 1, 1}, {1, 0, 0, 1}}) {
    const auto p = build_pisot(d);
    const Real tol = two_pow(-(p.precision_bits() - 24), 256);
    for (int trial = 0; trial < 350; ++trial) {
      std::vector<mpz_class> ca, cb;
      for (int i = 0; i < p.degree(); ++i) {
        ca.emplace_back(coef(rng));
        cb.emplace_back(coef(rng));
      }
      const auto a = p.ring(ca);
      const auto b = p.ring(cb);
      const auto ab = ring_mul(a, b);
      for (int i = 1; i <= p.degree(); ++i) {
        const Complex lhs = embed(p, ab, i);
        const Complex rhs = embed(p, a, i) * embed(p, b, i);
        const Real scale = max(Real(1L, 256), rhs.norm());
        CHECK(abs(lhs.re - rhs.re) <= tol * scale);
        CHECK(abs(lhs.im - rhs.im) <= tol * scale);
      }
    }
  }
}

TEST_CASE("trace route agrees with the direct embedding") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> coef(-20, 20);
  std::uniform_int_distribution<std::uint64_t> jd(0, 60);
  const Real tol = two_pow(-128, 256);
  int routed = 0;
  for (const auto& d : {std::vector<std::int64_t>{1, 1}, {1, 1, 1}, {1, 0, 0, 1}}) {
    const auto p = build_pisot(d);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<mpz_class> c;
      for (int i = 0; i < p.degree(); ++i) c.emplace_back(coef(rng));
      const auto nd = nearest_int_data(p, p.ring(c), jd(rng));
      if (!nd.trace_route) continue;
      ++routed;
      CHECK(abs(nd.delta_direct - nd.delta_trace) <= tol);
    }
  }
  CHECK(routed > 300);
}

TEST_CASE("golden distance decay") {
  const auto p = build_pisot({1, 1});
  const auto dd = dist_decay(p, p.ring_int(1), 30);
  // |sigma_2(1)| = 1; the bound ||theta^j|| <= rho^j is attained for j >= 2.
  CHECK(dd.c_z == 1.0);
  for (std::size_t j = 2; j < dd.distances.size(); ++j) {
    CHECK(abs(dd.distances[j] - Real(1L, 256) / pow(p.theta(), static_cast<long>(j))) < two_pow(-200, 256));
  }
  const auto shifted = dist_decay(p, p.ring({1, 1}), 28);
  for (std::size_t j = 0; j < shifted.distances.size(); ++j) {
    CHECK(abs(shifted.distances[j] - dd.distances[j + 2]) < two_pow(-200, 256));
  }
  const auto zero = dist_decay(p, p.ring_int(0), 10);
  for (const auto& x : zero.distances) CHECK(x.is_zero());
}
