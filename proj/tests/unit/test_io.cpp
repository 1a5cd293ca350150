#include <doctest.h>

#include "pisot/io.hpp"

using namespace pisot;

TEST_CASE("field element strings") {
  const auto P = build_pisot({1, 1, 1});
  const auto x = parse_field_element(P, "1/2,-3/6");
  CHECK(x.to_string() == "1/2,-1/2,0/1");
  CHECK(parse_field_element(P, x.to_string()) == x);
  CHECK_THROWS_AS(parse_field_element(P, "1,2,3,4"), PisotError);
  CHECK_THROWS_AS(parse_field_element(P, "1/0"), PisotError);
  CHECK_THROWS_AS(parse_field_element(P, "a"), PisotError);
}

TEST_CASE("ring lists") {
  const auto P = build_pisot({1, 1});
  const auto z = parse_ring_list(P, "1;0,2; -3,1");
  REQUIRE(z.size() == 3);
  CHECK(z[0] == P.ring_int(1));
  CHECK(z[1] == P.ring({0, 2}));
  CHECK(z[2] == P.ring({-3, 1}));
  CHECK_THROWS_AS(parse_ring_list(P, "1/2"), PisotError);
}

TEST_CASE("scalars") {
  const auto P = build_pisot({1, 1});
  const auto exact = parse_scalar(P, "0,1/2");
  REQUIRE(exact.exact.has_value());
  CHECK(abs(exact.value - P.theta() / 2L) < two_pow(-250, 256));
  const auto dec = parse_scalar(P, "1.25");
  CHECK_FALSE(dec.exact.has_value());
  CHECK(dec.value == 1.25);
  CHECK_THROWS_AS(parse_scalar(P, "1.2x"), PisotError);
}

TEST_CASE("PisotNumber JSON round trip") {
  const auto P = build_pisot({1, 0, 1});
  const Json j = to_json(P);
  CHECK(j["d"] == Json::array({1, 0, 1}));
  CHECK(j["conjugates"].size() == 2);
  CHECK(j["precision_bits"] == 256);
  const auto Q = pisot_from_json(Json::parse(j.dump()));
  CHECK(Q.theta() == P.theta());
  Json bad = j;
  bad["theta"] = "1.5";
  CHECK_THROWS_AS(pisot_from_json(bad), PisotError);
}

TEST_CASE("candidate JSON round trip") {
  const auto P = build_pisot({1, 1});
  const auto c = limit_value(P, {P.ring_int(1), P.ring({0, 1})}, 2, P.field_rational(mpq_class(1, 2)), 1e-20);
  const Json j = to_json(c);
  CHECK(j["z"] == Json::parse("[[1,0],[0,1]]"));
  CHECK(j["r"] == "1/2,0/1");
  CHECK(j["lattice"] == "ring");
  const auto back = candidate_from_json(P, Json::parse(j.dump()));
  CHECK(back.z.size() == 2);
  CHECK(back.A == 2);
  CHECK(back.r == c.r);
  CHECK(abs(back.predicted - c.predicted) < Real(1e-28, 256));
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("report JSON round trips") {
  ClusterReport r;
  r.seed = 7;
  r.r = "1";
  r.N = 1000;
  r.n_min = 500;
  r.eta = 0.05;
  r.gap = 1e-3;
  r.retained = 3;
  r.clusters.push_back({0.1, 0.09, 0.11, 3, {501, 600, 700}});
  r.matches.push_back({0, std::nullopt, 0.25});
  r.max_gap = 0.02;
  const Json j = to_json(r);
  CHECK(j["matches"][0]["candidate"] == "unmatched");
  const auto back = cluster_report_from_json(Json::parse(j.dump()));
  CHECK(to_json(back).dump() == j.dump());

  const IntervalEstimate e{-0.1, 0.2, 10, 0.03, 0.05, 1e-3, true};
  CHECK(to_json(interval_from_json(Json::parse(to_json(e).dump()))).dump() == to_json(e).dump());

  const auto d = decay_check(1.5, 256);
  const auto db = decay_from_json(Json::parse(to_json(d).dump()));
  CHECK(db.maxima == d.maxima);
  CHECK(db.argmax == d.argmax);

  const auto m = mu_hat(Real(2L, 256), Real(0.3, 256), 1e-20);
  const auto mb = mu_hat_from_json(Json::parse(to_json(m).dump()));
  CHECK(abs(mb.value - m.value) < Real(1e-28, 256));
  CHECK(mb.K == m.K);
}
