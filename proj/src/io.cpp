#include "pisot/io.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

constexpr int kDigits = 30;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpq_class parse_rational(std::string_view s) {
  s = trim(s);
  mpq_class q;
  if (s.empty() || q.set_str(std::string(s), 10) != 0 || q.get_den() == 0) {
    throw PisotError(ErrorCode::InvalidArgument, "not a rational number: " + std::string(s));
  }
  q.canonicalize();
  return q;
}

mpz_class parse_integer(std::string_view s) {
  s = trim(s);
  mpz_class z;
  if (s.empty() || z.set_str(std::string(s), 10) != 0) {
    throw PisotError(ErrorCode::InvalidArgument, "not an integer: " + std::string(s));
  }
  return z;
}

std::string real_string(const Real& x) { return x.to_string(kDigits); }

Real real_from(const Json& j, mpfr_prec_t bits) { return Real::parse(j.get<std::string>(), bits); }

}  // namespace

FieldElement parse_field_element(const PisotNumber& P, std::string_view text) {
  const auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) > P.degree()) {
    throw PisotError(ErrorCode::InvalidArgument, "too many coefficients in " + std::string(text));
  }
  std::vector<mpq_class> c(static_cast<std::size_t>(P.degree()));
  for (std::size_t i = 0; i < parts.size(); ++i) c[i] = parse_rational(parts[i]);
  return P.field(std::move(c));
}

std::vector<RingElement> parse_ring_list(const PisotNumber& P, std::string_view text) {
  std::vector<RingElement> out;
  for (const auto item : split(text, ';')) {
    const auto parts = split(item, ',');
    if (static_cast<int>(parts.size()) > P.degree()) {
      throw PisotError(ErrorCode::InvalidArgument, "too many coefficients in " + std::string(item));
    }
    std::vector<mpz_class> c(static_cast<std::size_t>(P.degree()));
    for (std::size_t i = 0; i < parts.size(); ++i) c[i] = parse_integer(parts[i]);
    out.push_back(P.ring(std::move(c)));
  }
  return out;
}

std::string Scalar::to_string() const { return exact ? exact->to_string() : value.to_string(kDigits); }

Scalar parse_scalar(const PisotNumber& P, std::string_view text) {
  text = trim(text);
  const mpfr_prec_t bits = P.precision_bits();
  if (text.find_first_of(".eE") != std::string_view::npos) {
    try {
      return {std::nullopt, Real::parse(text, bits)};
    } catch (const std::invalid_argument& e) {
      throw PisotError(ErrorCode::InvalidArgument, e.what());
    }
  }
  FieldElement x = parse_field_element(P, text);
  Real v = embed_real(P, x);
  return {std::move(x), std::move(v)};
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw PisotError(ErrorCode::InvalidArgument, "not a decimal number: " + s);
  }
  return v;
}

Json to_json(const PisotNumber& P) {
  Json j;
  j["d"] = std::vector<std::int64_t>(P.poly().d().begin(), P.poly().d().end());
  j["theta"] = P.theta().to_string();
  Json conj = Json::array();
  for (const auto& c : P.conjugates()) conj.push_back({real_string(c.re), real_string(c.im)});
  j["conjugates"] = std::move(conj);
  j["rho"] = real_string(P.rho());
  j["delta_max"] = P.delta_max().get_str();
  j["precision_bits"] = P.precision_bits();
  return j;
}

PisotNumber pisot_from_json(const Json& j) {
  auto P = build_pisot(j.at("d").get<std::vector<std::int64_t>>(), j.at("precision_bits").get<int>());
  const Real recorded = real_from(j.at("theta"), P.precision_bits());
  const Real tol = two_pow(-(P.precision_bits() - 16), P.precision_bits());
  if (abs(recorded - P.theta()) > tol) {
    throw PisotError(ErrorCode::InvalidArgument, "recorded theta does not match the polynomial");
  }
  return P;
}

Json to_json(const MuHatResult& m) {
  Json j;
  j["value"] = real_string(m.value);
  j["error_bound"] = m.error_bound.to_string(6);
  j["K"] = m.K;
  j["contains_zero"] = m.contains_zero;
  return j;
}

MuHatResult mu_hat_from_json(const Json& j) {
  MuHatResult m;
  m.value = real_from(j.at("value"), kDefaultPrecisionBits);
  m.error_bound = real_from(j.at("error_bound"), kDefaultPrecisionBits);
  m.K = j.at("K").get<long>();
  m.contains_zero = j.at("contains_zero").get<bool>();
  return m;
}

Json to_json(const ProductResult& p) {
  Json j;
  j["value"] = real_string(p.value);
  j["error_bound"] = p.error_bound.to_string(6);
  j["factors_negative"] = p.factors_negative;
  j["factors_positive"] = p.factors_positive;
  j["degenerate_zero"] = p.degenerate_zero;
  j["contains_zero"] = p.contains_zero;
  return j;
}

Json to_json(const SpectrumCandidate& c) {
  Json j;
  Json z = Json::array();
  for (const auto& zi : c.z) {
    Json row = Json::array();
    for (const auto& x : zi.coeffs()) row.push_back(x.get_si());
    z.push_back(std::move(row));
  }
  j["z"] = std::move(z);
  j["A"] = c.A;
  j["r"] = c.r.to_string();
  j["predicted"] = real_string(c.predicted);
  j["error"] = c.error_bound.to_string(6);
  j["id"] = std::to_string(c.id);
  j["lattice"] = c.dual ? "dual" : "ring";
  return j;
}

SpectrumCandidate candidate_from_json(const PisotNumber& P, const Json& j) {
  std::vector<RingElement> z;
  for (const auto& row : j.at("z")) {
    std::vector<mpz_class> c(static_cast<std::size_t>(P.degree()));
    if (row.size() > c.size()) throw PisotError(ErrorCode::InvalidArgument, "too many coefficients in z");
    for (std::size_t i = 0; i < row.size(); ++i) c[i] = row[i].get<long>();
    z.push_back(P.ring(std::move(c)));
  }
  SpectrumCandidate c{std::move(z),
                      j.at("A").get<long>(),
                      parse_field_element(P, j.at("r").get<std::string>()),
                      real_from(j.at("predicted"), P.precision_bits()),
                      real_from(j.at("error"), P.precision_bits()),
                      std::stoull(j.at("id").get<std::string>()),
                      j.value("lattice", std::string("ring")) == "dual"};
  return c;
}

Json to_json(const DigitTrace& t) {
  Json j;
  j["y"] = real_string(t.y);
  j["N"] = t.N;
  Json K = Json::array();
  Json delta = Json::array();
  for (std::size_t i = 0; i < t.K.size(); ++i) {
    K.push_back(t.K[i].get_str());
    delta.push_back(t.delta[i].to_string(20));
  }
  j["K"] = std::move(K);
  j["delta"] = std::move(delta);
  j["threshold"] = t.threshold.to_string(20);
  j["exceed_set"] = t.exceed_set;
  return j;
}

Json to_json(const ClusterReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["r"] = r.r;
  j["N"] = r.N;
  j["n_min"] = r.n_min;
  j["eta"] = r.eta;
  j["gap"] = r.gap;
  j["fast"] = r.fast;
  j["spot_deviation"] = format_double(r.spot_deviation);
  j["empty_retention"] = r.empty_retention;
  j["retained"] = r.retained;
  Json clusters = Json::array();
  for (const auto& c : r.clusters) {
    clusters.push_back({{"center", format_double(c.center)},
                        {"min", format_double(c.min)},
                        {"max", format_double(c.max)},
                        {"count", c.count},
                        {"witnesses", c.witnesses}});
  }
  j["clusters"] = std::move(clusters);
  Json matches = Json::array();
  for (const auto& m : r.matches) {
    Json e;
    e["cluster"] = m.cluster;
    if (m.candidate) {
      e["candidate"] = std::to_string(*m.candidate);
    } else {
      e["candidate"] = "unmatched";
    }
    e["distance"] = format_double(m.distance);
    matches.push_back(std::move(e));
  }
  j["matches"] = std::move(matches);
  j["max_gap"] = format_double(r.max_gap);
  return j;
}

ClusterReport cluster_report_from_json(const Json& j) {
  ClusterReport r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.r = j.at("r").get<std::string>();
  r.N = j.at("N").get<std::int64_t>();
  r.n_min = j.value("n_min", r.N / 2);
  r.eta = parse_double(j.at("eta"));
  r.gap = j.contains("gap") ? parse_double(j.at("gap")) : 0.0;
  r.fast = j.value("fast", false);
  r.spot_deviation = j.contains("spot_deviation") ? parse_double(j.at("spot_deviation")) : 0.0;
  r.retained = j.value("retained", std::size_t{0});
  for (const auto& c : j.at("clusters")) {
    r.clusters.push_back({parse_double(c.at("center")), parse_double(c.at("min")), parse_double(c.at("max")),
                          c.at("count").get<std::size_t>(), c.at("witnesses").get<std::vector<std::int64_t>>()});
  }
  r.empty_retention = j.value("empty_retention", r.clusters.empty());
  for (const auto& m : j.at("matches")) {
    ClusterMatch cm;
    cm.cluster = m.at("cluster").get<std::size_t>();
    const auto cand = m.at("candidate").get<std::string>();
    if (cand != "unmatched") cm.candidate = std::stoull(cand);
    cm.distance = parse_double(m.at("distance"));
    r.matches.push_back(cm);
  }
  r.max_gap = parse_double(j.at("max_gap"));
  return r;
}

Json to_json(const IntervalEstimate& e) {
  Json j;
  j["a"] = format_double(e.a);
  j["b"] = format_double(e.b);
  j["count"] = e.count;
  j["max_gap"] = format_double(e.max_gap);
  j["raw_max_gap"] = format_double(e.raw_max_gap);
  j["trim"] = e.trim;
  j["contains_zero"] = e.contains_zero;
  return j;
}

IntervalEstimate interval_from_json(const Json& j) {
  IntervalEstimate e;
  e.a = parse_double(j.at("a"));
  e.b = parse_double(j.at("b"));
  e.count = j.at("count").get<std::size_t>();
  e.max_gap = parse_double(j.at("max_gap"));
  e.raw_max_gap = parse_double(j.at("raw_max_gap"));
  e.trim = parse_double(j.at("trim"));
  e.contains_zero = j.at("contains_zero").get<bool>();
  return e;
}

Json to_json(const TranslatedReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["r"] = r.r;
  j["gamma"] = r.gamma;
  j["N"] = r.N;
  j["n_min"] = r.n_min;
  j["eta"] = r.eta;
  j["gap"] = r.gap;
  j["empty_retention"] = r.empty_retention;
  j["retained"] = r.retained;
  Json clusters = Json::array();
  for (const auto& c : r.clusters) {
    clusters.push_back({{"center", {format_double(c.center.real()), format_double(c.center.imag())}},
                        {"count", c.count},
                        {"witnesses", c.witnesses}});
  }
  j["clusters"] = std::move(clusters);
  j["dominant_radius"] = format_double(r.dominant_radius);
  j["probe_radius"] = format_double(r.probe_radius);
  j["probe_radius_spread"] = format_double(r.probe_radius_spread);
  j["probe_first_k"] = r.probe_first_k;
  j["probe_count"] = r.probe_count;
  j["coverage"] = format_double(r.coverage);
  return j;
}

Json to_json(const DecayReport& r) {
  Json j;
  j["theta"] = format_double(r.theta);
  j["N"] = r.N;
  Json blocks = Json::array();
  for (std::size_t i = 0; i < r.block.size(); ++i) {
    blocks.push_back({{"k", r.block[i]}, {"max", format_double(r.maxima[i])}, {"argmax", r.argmax[i]}});
  }
  j["blocks"] = std::move(blocks);
  return j;
}

DecayReport decay_from_json(const Json& j) {
  DecayReport r;
  r.theta = parse_double(j.at("theta"));
  r.N = j.at("N").get<std::int64_t>();
  for (const auto& b : j.at("blocks")) {
    r.block.push_back(b.at("k").get<int>());
    r.maxima.push_back(parse_double(b.at("max")));
    r.argmax.push_back(b.at("argmax").get<std::int64_t>());
  }
  return r;
}

}  // namespace pisot
