#include "pisot/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "pisot/kernels.hpp"
#include "pisot/transform.hpp"

namespace pisot {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& failures) {
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

// precise |mu_hat(r n)| for each n
std::vector<double> precise_abs(const Real& theta, const Real& r, std::span<const std::int64_t> ns, double tol) {
  std::vector<double> out(ns.size());
  std::vector<std::exception_ptr> failures(ns.size());
  const auto count = static_cast<std::int64_t>(ns.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const auto m = mu_hat(theta, r * ns[static_cast<std::size_t>(i)], tol);
      out[static_cast<std::size_t>(i)] = abs(m.value).to_double();
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(failures);
  return out;
}

double frac01(double x) { return x - std::floor(x); }

}  // namespace

std::vector<double> sample_abs(const Real& theta, const Real& r, std::int64_t n_first, std::int64_t n_last,
                               const SampleOptions& opts, double max_deviation, double* deviation, bool* fast_used) {
  if (n_last < n_first) return {};
  const bool fast = n_last > opts.fast_above;
  if (fast_used) *fast_used = fast;
  if (deviation) *deviation = 0;
  if (!fast) {
    std::vector<std::int64_t> ns(static_cast<std::size_t>(n_last - n_first + 1));
    std::iota(ns.begin(), ns.end(), n_first);
    return precise_abs(theta, r, ns, opts.tol);
  }
  auto values = fast::abs_series(theta.to_double(), r.to_double(), n_first, n_last, opts.fast_tol);
  const std::size_t size = values.size();
  const auto checks = static_cast<std::size_t>(std::max(1, std::min<int>(opts.spot_checks, static_cast<int>(size))));
  std::vector<std::int64_t> ns;
  for (std::size_t s = 0; s < checks; ++s) {
    const std::size_t idx = checks == 1 ? 0 : (size - 1) * s / (checks - 1);
    ns.push_back(n_first + static_cast<std::int64_t>(idx));
  }
  const auto exact = precise_abs(theta, r, ns, opts.tol);
  double worst = 0;
  for (std::size_t s = 0; s < ns.size(); ++s) {
    worst = std::max(worst, std::fabs(values[static_cast<std::size_t>(ns[s] - n_first)] - exact[s]));
  }
  if (deviation) *deviation = worst;
  if (!(worst < max_deviation)) {
    throw PisotError(ErrorCode::PrecisionExhausted,
                     "hardware path deviates by " + std::to_string(worst) + " from the precise path");
  }
  return values;
}

std::vector<Cluster> cluster_values(std::span<const double> values, std::span<const std::int64_t> n, double gap) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] != values[b] ? values[a] < values[b] : n[a] < n[b];
  });
  std::vector<Cluster> out;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] - values[order[j - 1]] <= gap) ++j;
    Cluster c;
    c.min = values[order[i]];
    c.max = values[order[j - 1]];
    c.count = j - i;
    double sum = 0;
    std::vector<std::int64_t> members;
    for (std::size_t k = i; k < j; ++k) {
      sum += values[order[k]];
      members.push_back(n[order[k]]);
    }
    c.center = sum / static_cast<double>(c.count);
    std::sort(members.begin(), members.end());
    members.resize(std::min<std::size_t>(members.size(), 5));
    c.witnesses = std::move(members);
    out.push_back(std::move(c));
    i = j;
  }
  return out;
}

ClusterReport sample_and_cluster(const Real& theta, const Real& r, std::int64_t N, const SampleOptions& opts) {
  if (!(opts.eta > 0.0 && opts.eta < 1.0)) throw PisotError(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
  if (!(opts.gap > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "gap must be positive");
  ClusterReport rep;
  rep.r = r.to_string(20);
  rep.N = N;
  rep.n_min = opts.n_min < 0 ? N / 2 : opts.n_min;
  if (rep.n_min >= N) throw PisotError(ErrorCode::InvalidArgument, "n_min must be below N");
  rep.eta = opts.eta;
  rep.gap = opts.gap;
  const auto values = sample_abs(theta, r, rep.n_min, N, opts, opts.eta / 10, &rep.spot_deviation, &rep.fast);
  std::vector<double> kept;
  std::vector<std::int64_t> ns;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= opts.eta) {
      kept.push_back(values[i]);
      ns.push_back(rep.n_min + static_cast<std::int64_t>(i));
    }
  }
  rep.retained = kept.size();
  rep.empty_retention = kept.empty();
  rep.clusters = cluster_values(kept, ns, opts.gap);
  std::vector<double> sorted = kept;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) rep.max_gap = std::max(rep.max_gap, sorted[i] - sorted[i - 1]);
  return rep;
}

void match_clusters(ClusterReport& report, const std::vector<SpectrumCandidate>& candidates, double tol) {
  report.matches.clear();
  for (std::size_t c = 0; c < report.clusters.size(); ++c) {
    ClusterMatch m{c, std::nullopt, std::numeric_limits<double>::infinity()};
    std::uint64_t best_id = 0;
    for (const auto& cand : candidates) {
      const double d = std::fabs(report.clusters[c].center - cand.predicted.to_double());
      if (d < m.distance || (d == m.distance && cand.id < best_id)) {
        m.distance = d;
        best_id = cand.id;
      }
    }
    if (m.distance <= tol) m.candidate = best_id;
    report.matches.push_back(m);
  }
}

IntervalEstimate interval_fill_test(const Real& theta, const Real& r, std::int64_t N, double eta, double trim) {
  if (!(trim >= 0.0 && trim < 1.0)) throw PisotError(ErrorCode::InvalidArgument, "trim must lie in [0, 1)");
  SampleOptions opts;
  opts.eta = eta;
  auto values = sample_abs(theta, r, N / 2, N, opts, 1e-6);
  std::erase_if(values, [&](double v) { return v < eta; });
  IntervalEstimate est;
  est.trim = trim;
  est.count = values.size();
  if (values.empty()) return est;
  std::sort(values.begin(), values.end());
  const auto top = static_cast<std::size_t>(std::floor((1.0 - trim) * static_cast<double>(values.size() - 1)));
  est.a = values.front();
  est.b = values[top];
  est.max_gap = values.front() - eta;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double g = values[i] - values[i - 1];
    est.raw_max_gap = std::max(est.raw_max_gap, g);
    if (i <= top) est.max_gap = std::max(est.max_gap, g);
  }
  est.contains_zero = est.a <= 0.0 && est.b >= 0.0;
  return est;
}

double derivative_bound(double theta) { return 2.0 * std::numbers::pi * theta / (theta - 1.0); }

IntervalEstimate estimate_J(double theta, double T, double grid_step) {
  if (!(theta > 1.0) || !(T > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "theta > 1 and T > 0 required");
  const double max_step = 1.0 / (4.0 * derivative_bound(theta));
  const double step = grid_step > 0.0 ? std::min(grid_step, max_step) : max_step;
  const auto count = static_cast<std::size_t>(std::floor((T / 2) / step)) + 1;
  std::vector<double> ts(count);
  for (std::size_t i = 0; i < count; ++i) ts[i] = T / 2 + step * static_cast<double>(i);
  std::vector<double> values(count);
  fast::mu_hat_batch(theta, ts, 1e-12, values);
  // Exact zeros at theta^n / 4 inside the window.
  const Real th(theta, 128);
  for (long n = 1; n < 4000; ++n) {
    const Real t = pow(th, n) / 4L;
    if (t > T) break;
    if (t < T / 2) continue;
    const auto m = mu_hat(th, t, 1e-20);
    values.push_back(m.contains_zero ? 0.0 : m.value.to_double());
  }
  IntervalEstimate est;
  est.count = values.size();
  std::sort(values.begin(), values.end());
  est.a = values.front();
  est.b = values.back();
  for (std::size_t i = 1; i < values.size(); ++i) est.max_gap = std::max(est.max_gap, values[i] - values[i - 1]);
  est.raw_max_gap = est.max_gap;
  est.contains_zero = est.a <= 0.0 && est.b >= 0.0;
  return est;
}

double star_discrepancy(std::vector<double> u) {
  if (u.empty()) return 0.0;
  std::sort(u.begin(), u.end());
  const auto n = static_cast<double>(u.size());
  double d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    d = std::max({d, k / n - u[i], u[i] - (k - 1) / n});
  }
  return d;
}

double discrepancy(double alpha, std::span<const double> x) {
  std::vector<double> u;
  u.reserve(x.size());
  for (const double v : x) u.push_back(frac01(alpha * v));
  return star_discrepancy(std::move(u));
}

double discrepancy_exact(const mpz_class& num, unsigned bits, std::span<const mpz_class> x) {
  std::vector<double> u;
  u.reserve(x.size());
  mpz_class prod;
  for (const auto& v : x) {
    prod = num * v;
    mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), bits);
    // top 64 bits are plenty for a double
    long shift = static_cast<long>(mpz_sizeinbase(prod.get_mpz_t(), 2)) - 64;
    if (shift < 0) shift = 0;
    mpz_class top;
    mpz_fdiv_q_2exp(top.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    u.push_back(std::ldexp(top.get_d(), static_cast<int>(shift) - static_cast<int>(bits)));
  }
  return star_discrepancy(std::move(u));
}

namespace {

// Connected components of occupied grid cells (8-neighbourhood).
std::vector<ComplexCluster> grid_clusters(const std::vector<std::complex<double>>& pts,
                                          const std::vector<std::int64_t>& ns, double gap) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto key = std::make_pair(static_cast<std::int64_t>(std::floor(pts[i].real() / gap)),
                                    static_cast<std::int64_t>(std::floor(pts[i].imag() / gap)));
    cells[key].push_back(i);
  }
  std::map<std::pair<std::int64_t, std::int64_t>, int> label;
  std::vector<ComplexCluster> out;
  for (const auto& [key, members] : cells) {
    if (label.contains(key)) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::pair<std::int64_t, std::int64_t>> stack{key};
    label[key] = id;
    std::vector<std::int64_t> wit;
    std::complex<double> sum = 0;
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (const auto i : cells[cur]) {
        sum += pts[i];
        wit.push_back(ns[i]);
        ++out[static_cast<std::size_t>(id)].count;
      }
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          const auto nb = std::make_pair(cur.first + dx, cur.second + dy);
          if (cells.contains(nb) && !label.contains(nb)) {
            label[nb] = id;
            stack.push_back(nb);
          }
        }
      }
    }
    auto& c = out[static_cast<std::size_t>(id)];
    c.center = sum / static_cast<double>(c.count);
    std::sort(wit.begin(), wit.end());
    wit.resize(std::min<std::size_t>(wit.size(), 5));
    c.witnesses = std::move(wit);
  }
  return out;
}

}  // namespace

TranslatedReport translated_sample(const PisotNumber& P, const FieldElement& r, const std::optional<FieldElement>& gamma_exact,
                                   const Real& gamma, std::int64_t N, const TranslateOptions& opts) {
  const SampleOptions& so = opts.sample;
  if (!(so.eta > 0.0 && so.eta < 1.0)) throw PisotError(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
  if (opts.bins < 1 || opts.probe_count < 1) throw PisotError(ErrorCode::InvalidArgument, "bins and probe count must be positive");
  const Real r_real = embed_real(P, r);
  if (!(r_real > 0.0)) throw PisotError(ErrorCode::InvalidArgument, "r must be positive");
  TranslatedReport rep;
  rep.r = r.to_string();
  rep.gamma = gamma_exact ? gamma_exact->to_string() : gamma.to_string(20);
  rep.N = N;
  rep.eta = so.eta;
  rep.gap = so.gap;
  const std::int64_t n_min = so.n_min < 0 ? N / 2 : so.n_min;
  if (n_min >= N) throw PisotError(ErrorCode::InvalidArgument, "n_min must be below N");
  rep.n_min = n_min;
  const auto values = sample_abs(P.theta(), r_real, n_min, N, so, so.eta / 10);

  std::vector<std::int64_t> ns;
  std::vector<double> moduli;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= so.eta) {
      ns.push_back(n_min + static_cast<std::int64_t>(i));
      moduli.push_back(values[i]);
    }
  }
  rep.retained = ns.size();
  rep.empty_retention = ns.empty();
  const mpfr_prec_t p = P.precision_bits();
  std::vector<std::complex<double>> pts(ns.size());
  std::vector<std::exception_ptr> failures(ns.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(ns.size()); ++i) {
    try {
      const std::int64_t n = ns[static_cast<std::size_t>(i)];
      const auto m = mu_hat(P.theta(), r_real * n, so.tol);
      const Real phase = gamma_exact ? embed_real(P, mpq_class(n) * *gamma_exact) : gamma * n;
      const double angle = 2.0 * std::numbers::pi * frac_centered(phase).to_double();
      pts[static_cast<std::size_t>(i)] = std::polar(m.value.to_double(), angle);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(failures);
  rep.clusters = grid_clusters(pts, ns, so.gap);
  const auto radial = cluster_values(moduli, ns, so.gap);
  std::size_t best = 0;
  for (std::size_t i = 0; i < radial.size(); ++i) {
    if (radial[i].count > radial[best].count) best = i;
  }
  if (!radial.empty()) rep.dominant_radius = radial[best].center;

  // Probe sequence.
  const FieldElement two_r = mpq_class(2) * r;
  const mpz_class D = two_r.denominator();
  const RingElement z = (mpq_class(D) * two_r).to_ring();
  rep.probe_radius = phi_biinfinite(P, z, 1e-20).value.to_double();
  const int k0 = realization_index(P, {z}, 0, r, so.gap, 400).value_or(400);
  rep.probe_first_k = k0;
  rep.probe_count = opts.probe_count;
  const int k_last = k0 + opts.probe_count - 1;
  const double log2_theta = std::log2(P.theta_double());
  const auto bits = static_cast<int>(std::ceil(k_last * log2_theta + std::log2(D.get_d() + 1.0) +
                                               static_cast<double>(mpz_sizeinbase(z.max_abs_coeff().get_mpz_t(), 2)))) +
                    p;
  const PisotNumber Q = bits > p ? build_pisot(std::vector<std::int64_t>(P.poly().d().begin(), P.poly().d().end()), bits)
                                 : P;
  const RingElement zq = Q.ring(std::vector<mpz_class>(z.coeffs().begin(), z.coeffs().end()));
  const FieldElement rq = Q.field(std::vector<mpq_class>(r.coeffs().begin(), r.coeffs().end()));
  std::optional<FieldElement> gq;
  if (gamma_exact) gq = Q.field(std::vector<mpq_class>(gamma_exact->coeffs().begin(), gamma_exact->coeffs().end()));
  Real gamma_hi(static_cast<mpfr_prec_t>(Q.precision_bits()));
  mpfr_set(gamma_hi.get(), gamma.get(), MPFR_RNDN);

  std::vector<char> hit(static_cast<std::size_t>(opts.bins), 0);
  std::vector<double> radii;
  for (int k = k0; k <= k_last; ++k) {
    const mpz_class n = synthesize_sequence(Q, {zq}, 0, rq, k);
    const Real phase = gq ? embed_real(Q, mpq_class(n) * *gq) : gamma_hi * n;
    Real f = phase - floor(phase);
    const auto bin = static_cast<std::size_t>(std::min<double>(std::floor(f.to_double() * opts.bins), opts.bins - 1));
    hit[bin] = 1;
    if ((k - k0) % 32 == 0) {
      radii.push_back(abs(mu_hat(Q.theta(), embed_real(Q, rq) * n, so.tol).value).to_double());
    }
  }
  rep.coverage = static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / opts.bins;
  for (const double rad : radii) rep.probe_radius_spread = std::max(rep.probe_radius_spread, std::fabs(rad - rep.probe_radius));
  return rep;
}

DecayReport decay_check(double theta, std::int64_t N, double tol) {
  if (!(theta > 1.0)) throw PisotError(ErrorCode::InvalidArgument, "theta must exceed 1");
  DecayReport rep;
  rep.theta = theta;
  rep.N = N;
  for (int k = 0; (std::int64_t{1} << (k + 1)) <= N; ++k) {
    const std::int64_t lo = std::int64_t{1} << k;
    const std::int64_t hi = (std::int64_t{1} << (k + 1)) - 1;
    const auto values = fast::abs_series(theta, 1.0, lo, hi, tol);
    const auto it = std::max_element(values.begin(), values.end());
    rep.block.push_back(k);
    rep.maxima.push_back(*it);
    rep.argmax.push_back(lo + (it - values.begin()));
  }
  return rep;
}

bool strictly_decreasing_tail(const DecayReport& report, std::size_t count) {
  if (report.maxima.size() < count) return false;
  for (std::size_t i = report.maxima.size() - count + 1; i < report.maxima.size(); ++i) {
    if (!(report.maxima[i] < report.maxima[i - 1])) return false;
  }
  return true;
}

}  // namespace pisot
