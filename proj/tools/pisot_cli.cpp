// pisot: command-line front end to the library.
// Exit codes: 0 success, 1 usage, 2 domain error, 3 precision exhausted.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pisot/empirical.hpp"
#include "pisot/errors.hpp"
#include "pisot/io.hpp"
#include "pisot/spectrum.hpp"
#include "pisot/transform.hpp"

using namespace pisot;

namespace {

struct Config {
  int precision = kDefaultPrecisionBits;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 20261018;
  std::string poly = "1,1";
  double tol = 0;  // 0 selects the mode default
};

int default_precision() {
  if (const char* env = std::getenv("PISOT_PRECISION")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed PISOT_PRECISION\n";
    }
  }
  return kDefaultPrecisionBits;
}

std::vector<std::int64_t> poly_coeffs(const std::string& text) {
  const auto m = MinimalPolynomial::parse(text);
  return {m.d().begin(), m.d().end()};
}

PisotNumber load(const Config& c) { return build_pisot(poly_coeffs(c.poly), c.precision); }

double tol_or(const Config& c, double fallback) { return c.tol > 0 ? c.tol : fallback; }

// Nested arrays use the command-line form "c0,c1;c0,c1".
std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) return v.dump();
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_array()) {
      s += i ? ";" : "";
      for (std::size_t k = 0; k < v[i].size(); ++k) s += (k ? "," : "") + cell_text(v[i][k]);
    } else {
      s += (i ? ";" : "") + cell_text(v[i]);
    }
  }
  return s;
}

std::string csv_cell(const Json& v) {
  const std::string s = cell_text(v);
  return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

// CSV writes the rows of `table` when present, key,value pairs otherwise.
void emit(const Config& c, const Json& j, const std::string& table = "") {
  std::ostringstream os;
  if (c.format == "csv") {
    const Json* rows = nullptr;
    if (j.is_array()) {
      rows = &j;
    } else if (!table.empty() && j.contains(table)) {
      rows = &j.at(table);
    }
    if (rows != nullptr && !rows->empty() && rows->front().is_object()) {
      bool first = true;
      for (auto it = rows->front().begin(); it != rows->front().end(); ++it) {
        os << (first ? "" : ",") << it.key();
        first = false;
      }
      os << '\n';
      for (const auto& row : *rows) {
        first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
          os << (first ? "" : ",") << csv_cell(it.value());
          first = false;
        }
        os << '\n';
      }
    } else {
      os << "key,value\n";
      for (auto it = j.begin(); it != j.end(); ++it) os << it.key() << ',' << csv_cell(it.value()) << '\n';
    }
  } else {
    os << j.dump(2) << '\n';
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw PisotError(ErrorCode::InvalidArgument, "cannot open " + c.out);
    f << os.str();
  }
}

// "random" draws from U(lo, hi) with the run seed.
Scalar scalar_or_random(const PisotNumber& P, const std::string& text, std::mt19937_64& rng, double lo, double hi) {
  if (text == "random") {
    std::uniform_real_distribution<double> u(lo, hi);
    return {std::nullopt, Real(u(rng), P.precision_bits())};
  }
  return parse_scalar(P, text);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return 1;
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::AmbiguousRounding:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier coefficients of Bernoulli convolutions at Pisot parameters"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  cfg.precision = default_precision();
  app.add_option("--precision", cfg.precision, "working precision in bits (env PISOT_PRECISION)")
      ->check(CLI::Range(64, 1 << 20));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "write output to this file");
  app.add_option("--seed", cfg.seed, "seed for random draws");

  auto with_poly = [&](CLI::App* sub) { sub->add_option("--poly", cfg.poly, "d1,...,dm of x^m - d1 x^{m-1} - ... - dm"); };
  auto with_tol = [&](CLI::App* sub) { sub->add_option("--tol", cfg.tol, "absolute tolerance")->check(CLI::PositiveNumber); };

  // check
  auto* check = app.add_subcommand("check", "certify a Pisot number; prints {d, theta, conjugates, rho, precision_bits}");
  with_poly(check);

  // eval
  std::string t_text = "0";
  std::string r_text = "1";
  std::int64_t series_n = 0;
  bool fast = false;
  auto* eval = app.add_subcommand("eval", "mu_hat(t); with --series N the values mu_hat(r n), n = 1..N");
  with_poly(eval);
  with_tol(eval);
  eval->add_option("--t", t_text, "argument, decimal or field element");
  eval->add_option("--series", series_n, "series length")->check(CLI::NonNegativeNumber);
  eval->add_option("--r", r_text, "series scale");
  eval->add_flag("--fast", fast, "hardware floating point for the series");

  // trace and recur
  std::string y_text = "1";
  int trace_n = 20;
  std::string threshold_text;
  std::string delta_text;
  auto* trace = app.add_subcommand("trace", "digit trace K_j = <y theta^j>, delta_j, j = 1..N");
  with_poly(trace);
  trace->add_option("--y", y_text, "y in [1, theta)");
  trace->add_option("--N", trace_n, "length")->check(CLI::PositiveNumber);
  trace->add_option("--threshold", threshold_text, "rational threshold, default delta_max");
  auto* recur = app.add_subcommand("recur", "check the linear recurrence of K_j on runs with |delta_j| < delta");
  with_poly(recur);
  recur->add_option("--y", y_text, "y in [1, theta)");
  recur->add_option("--N", trace_n, "length")->check(CLI::PositiveNumber);
  recur->add_option("--delta", delta_text, "rational delta in (0, delta_max)")->required();

  // phi and limit
  std::string z_text = "1";
  std::string lambda_text;
  std::string q_text;
  bool dual = false;
  long a_value = 0;
  auto* phi = app.add_subcommand("phi", "Phi(z) = prod_j |cos(pi z theta^j)|, or phi_Lambda(q) with --lambda");
  with_poly(phi);
  with_tol(phi);
  phi->add_option("--z", z_text, "element of Z[theta] as c0,c1,...");
  phi->add_option("--lambda", lambda_text, "Lambda in Z[theta]");
  phi->add_option("--q", q_text, "q in Z[theta]");
  phi->add_flag("--dual", dual, "use z / f'(theta)");
  auto* limit = app.add_subcommand("limit", "predicted limit prod_i Phi(z_i) * tail(r A)");
  with_poly(limit);
  with_tol(limit);
  limit->add_option("--z", z_text, "z_0;z_1;... each c0,c1,...");
  limit->add_option("--A", a_value, "integer shift");
  limit->add_option("--r", r_text, "r in Q(theta)");

  // enumerate
  EnumerationOptions eo;
  auto* enumerate = app.add_subcommand("enumerate", "predicted limit points in a finite window, descending");
  with_poly(enumerate);
  with_tol(enumerate);
  enumerate->add_option("--r", r_text, "r in Q(theta)");
  enumerate->add_option("--height", eo.height, "coefficients in [-H, H]")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--m-max", eo.m_max, "largest M")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--a-max", eo.a_max, "A in [-a_max, a_max]")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--eta", eo.eta, "floor on predicted values");
  enumerate->add_option("--budget", eo.budget, "candidate budget");
  enumerate->add_flag("--dual", eo.dual, "scale z by 1 / f'(theta)");

  // synthesize
  int k_value = 10;
  double target = 0;
  auto* synth = app.add_subcommand("synthesize", "n_k = <(2r)^-1 (z_0 theta^{(M+1)k} + ... + z_M theta^k)> + A");
  with_poly(synth);
  synth->add_option("--z", z_text, "z_0;z_1;...");
  synth->add_option("--A", a_value, "integer shift");
  synth->add_option("--r", r_text, "r in Q(theta)");
  synth->add_option("--k", k_value, "index")->check(CLI::PositiveNumber);
  synth->add_option("--target", target, "pick the first k whose heuristic gap is below target");

  // sample, fill, translate
  SampleOptions so;
  std::int64_t n_value = 100'000;
  double match_tol = 1e-2;
  bool match = false;
  double trim = 1e-3;
  auto* sample = app.add_subcommand("sample", "cluster |mu_hat(r n)| >= eta for n in [n_min, N]");
  with_poly(sample);
  sample->add_option("--r", r_text, "r: field element, decimal or 'random'");
  sample->add_option("--N", n_value, "last n")->check(CLI::PositiveNumber);
  sample->add_option("--eta", so.eta, "retention floor");
  sample->add_option("--gap", so.gap, "cluster split gap");
  sample->add_option("--n-min", so.n_min, "first n, default N/2");
  sample->add_flag("--match", match, "match clusters to the enumeration window");
  sample->add_option("--height", eo.height, "enumeration height");
  sample->add_option("--m-max", eo.m_max, "enumeration M_max");
  sample->add_option("--a-max", eo.a_max, "enumeration A_max");
  sample->add_option("--match-tol", match_tol, "match distance");
  sample->add_flag("--dual", eo.dual, "enumerate the dual lattice");
  auto* fill = app.add_subcommand("fill", "gap statistics of |mu_hat(r n)| for n in [N/2, N]");
  with_poly(fill);
  fill->add_option("--r", r_text, "r: field element, decimal or 'random'");
  fill->add_option("--N", n_value, "last n")->check(CLI::PositiveNumber);
  fill->add_option("--eta", so.eta, "retention floor")->default_val(0.0);
  fill->add_option("--trim", trim, "upper quantile excluded from max_gap");
  std::string gamma_text = "random";
  TranslateOptions to;
  auto* translate = app.add_subcommand("translate", "cluster mu_hat(r n) e^{2 pi i gamma n} in the plane");
  with_poly(translate);
  translate->add_option("--r", r_text, "r in Q(theta)");
  translate->add_option("--gamma", gamma_text, "gamma: field element, decimal or 'random'");
  translate->add_option("--N", n_value, "last n")->check(CLI::PositiveNumber);
  translate->add_option("--eta", so.eta, "retention floor");
  translate->add_option("--gap", so.gap, "grid resolution");
  translate->add_option("--n-min", so.n_min, "first n, default N/2");
  translate->add_option("--bins", to.bins, "angular bins")->check(CLI::PositiveNumber);
  translate->add_option("--probes", to.probe_count, "probe length")->check(CLI::PositiveNumber);

  // jset, discrepancy, decay
  double theta_value = std::numbers::phi;
  double t_max = 1e4;
  double step = 0;
  auto* jset = app.add_subcommand("jset", "range of signed mu_hat(t), t in [T/2, T]");
  jset->add_option("--theta", theta_value, "theta > 1");
  jset->add_option("--T", t_max, "window end")->check(CLI::PositiveNumber);
  jset->add_option("--step", step, "grid step, at most 1/(4C)");
  std::string alpha_text = "random";
  std::string seq = "linear";
  int draws = 1;
  auto* disc = app.add_subcommand("discrepancy", "star discrepancy of {alpha x_i}, i = 1..N");
  with_poly(disc);
  disc->add_option("--alpha", alpha_text, "decimal or 'random'");
  disc->add_option("--seq", seq, "x_i = i (linear) or Tr(theta^i) (trace)")->check(CLI::IsMember({"linear", "trace"}));
  disc->add_option("--N", n_value, "count")->check(CLI::PositiveNumber);
  disc->add_option("--draws", draws, "random draws")->check(CLI::PositiveNumber);
  auto* decay = app.add_subcommand("decay", "maxima of |mu_hat(n)| over dyadic blocks up to N");
  decay->add_option("--theta", theta_value, "theta > 1");
  decay->add_option("--N", n_value, "last n")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::mt19937_64 rng(cfg.seed);
  try {
    if (*check) {
      emit(cfg, to_json(load(cfg)));
    } else if (*eval) {
      const auto P = load(cfg);
      if (series_n > 0) {
        const auto r = scalar_or_random(P, r_text, rng, 1.0, 2.0);
        const double tol = tol_or(cfg, fast ? 1e-9 : 1e-20);
        const auto items = r.exact ? coefficient_series(P, *r.exact, series_n, tol, fast)
                                   : coefficient_series(P.theta(), r.value, series_n, tol, fast);
        if (cfg.format == "csv") {
          std::ostringstream os;
          write_series_csv(os, items, 20);
          if (cfg.out.empty()) {
            std::cout << os.str();
          } else {
            std::ofstream(cfg.out, std::ios::binary) << os.str();
          }
        } else {
          Json rows = Json::array();
          for (const auto& it : items) {
            Json row = to_json(it.result);
            row["n"] = it.n;
            rows.push_back(std::move(row));
          }
          emit(cfg, Json{{"r", r.to_string()}, {"N", series_n}, {"fast", fast}, {"series", std::move(rows)}});
        }
      } else {
        const auto t = parse_scalar(P, t_text);
        Json j = to_json(mu_hat(P.theta(), t.value, tol_or(cfg, 1e-20)));
        j["t"] = t.to_string();
        emit(cfg, j);
      }
    } else if (*trace || *recur) {
      const auto P = load(cfg);
      const auto y = parse_scalar(P, y_text);
      std::optional<mpq_class> threshold;
      if (!threshold_text.empty()) threshold = parse_field_element(P, threshold_text)[0];
      const auto tr = digit_trace(P, y.value, trace_n, threshold);
      if (*trace) {
        Json j = to_json(tr);
        Json rows = Json::array();
        for (std::size_t i = 0; i < tr.K.size(); ++i) {
          rows.push_back({{"j", i + 1}, {"K", j["K"][i]}, {"delta", j["delta"][i]}});
        }
        j["rows"] = std::move(rows);
        emit(cfg, j, "rows");
      } else {
        const mpq_class delta = parse_field_element(P, delta_text)[0];
        const auto failures = check_recurrence(tr, P, delta);
        emit(cfg, Json{{"y", y.to_string()}, {"N", trace_n}, {"delta", delta.get_str()},
                       {"ok", failures.empty()}, {"failing_j", failures}});
      }
    } else if (*phi) {
      const auto P = load(cfg);
      const double tol = tol_or(cfg, 1e-20);
      if (!lambda_text.empty()) {
        const auto lam = parse_ring_list(P, lambda_text).at(0);
        const auto q = parse_ring_list(P, q_text.empty() ? "1" : q_text).at(0);
        Json j = to_json(phi_lambda(P, lam, q, tol));
        j["lambda"] = lam.to_string();
        j["q"] = q.to_string();
        emit(cfg, j);
      } else {
        const auto z = parse_ring_list(P, z_text).at(0);
        Json j = dual ? to_json(phi_biinfinite(P, FieldElement(z) * dual_generator(P), tol))
                      : to_json(phi_biinfinite(P, z, tol));
        j["z"] = z.to_string();
        j["lattice"] = dual ? "dual" : "ring";
        emit(cfg, j);
      }
    } else if (*limit) {
      const auto P = load(cfg);
      emit(cfg, to_json(limit_value(P, parse_ring_list(P, z_text), a_value, parse_field_element(P, r_text),
                                    tol_or(cfg, 1e-20))));
    } else if (*enumerate) {
      const auto P = load(cfg);
      eo.tol = tol_or(cfg, 1e-20);
      const auto cands = enumerate_spectrum(P, parse_field_element(P, r_text), eo);
      Json rows = Json::array();
      for (const auto& c : cands) rows.push_back(to_json(c));
      emit(cfg, rows);
    } else if (*synth) {
      const auto P = load(cfg);
      const auto z = parse_ring_list(P, z_text);
      const auto r = parse_field_element(P, r_text);
      int k = k_value;
      if (target > 0) {
        const auto found = realization_index(P, z, a_value, r, target, 400);
        if (!found) throw PisotError(ErrorCode::PrecisionExhausted, "no k <= 400 reaches the target");
        k = *found;
      }
      emit(cfg, Json{{"k", k}, {"n_k", synthesize_sequence(P, z, a_value, r, k).get_str()}});
    } else if (*sample) {
      const auto P = load(cfg);
      const auto r = scalar_or_random(P, r_text, rng, 1.0, 2.0);
      so.tol = tol_or(cfg, 1e-20);
      auto rep = sample_and_cluster(P.theta(), r.value, n_value, so);
      rep.seed = cfg.seed;
      rep.r = r.to_string();
      if (match) {
        if (!r.exact) throw PisotError(ErrorCode::InvalidArgument, "--match needs r in Q(theta)");
        eo.eta = so.eta / 2;
        match_clusters(rep, enumerate_spectrum(P, *r.exact, eo), match_tol);
      }
      emit(cfg, to_json(rep), "clusters");
    } else if (*fill) {
      const auto P = load(cfg);
      const auto r = scalar_or_random(P, r_text, rng, 1.0, 2.0);
      Json j = to_json(interval_fill_test(P.theta(), r.value, n_value, so.eta, trim));
      j["seed"] = cfg.seed;
      j["r"] = r.to_string();
      j["N"] = n_value;
      emit(cfg, j);
    } else if (*translate) {
      const auto P = load(cfg);
      const auto r = parse_field_element(P, r_text);
      const auto g = scalar_or_random(P, gamma_text, rng, 0.0, 1.0);
      so.tol = tol_or(cfg, 1e-20);
      to.sample = so;
      auto rep = translated_sample(P, r, g.exact, g.value, n_value, to);
      rep.seed = cfg.seed;
      emit(cfg, to_json(rep), "clusters");
    } else if (*jset) {
      Json j = to_json(estimate_J(theta_value, t_max, step));
      j["theta"] = format_double(theta_value);
      j["T"] = t_max;
      emit(cfg, j);
    } else if (*disc) {
      Json rows = Json::array();
      if (seq == "linear") {
        std::vector<double> x(static_cast<std::size_t>(n_value));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int d = 0; d < (alpha_text == "random" ? draws : 1); ++d) {
          const double alpha = alpha_text == "random" ? u(rng) : std::stod(alpha_text);
          rows.push_back({{"alpha", format_double(alpha)}, {"D", format_double(discrepancy(alpha, x))}});
        }
      } else {
        const auto m = MinimalPolynomial(poly_coeffs(cfg.poly));
        std::vector<mpz_class> x(m.power_sums().begin(), m.power_sums().end());
        while (static_cast<std::int64_t>(x.size()) <= n_value) {
          mpz_class next = 0;
          for (int i = 1; i <= m.degree(); ++i) next += m.d(i) * x[x.size() - static_cast<std::size_t>(i)];
          x.push_back(next);
        }
        x.erase(x.begin());
        x.resize(static_cast<std::size_t>(n_value));
        const auto bits = static_cast<unsigned>(mpz_sizeinbase(x.back().get_mpz_t(), 2) + 64);
        gmp_randclass g(gmp_randinit_default);
        g.seed(static_cast<unsigned long>(cfg.seed));
        for (int d = 0; d < (alpha_text == "random" ? draws : 1); ++d) {
          mpz_class num;
          if (alpha_text == "random") {
            num = g.get_z_bits(bits);
          } else {
            num = to_mpz(Real::parse(alpha_text, bits + 64) * two_pow(bits, bits + 64));
          }
          Real alpha(num, bits + 64);
          alpha /= two_pow(bits, bits + 64);
          rows.push_back({{"alpha", alpha.to_string(20)}, {"D", format_double(discrepancy_exact(num, bits, x))}});
        }
      }
      emit(cfg, Json{{"seed", cfg.seed}, {"seq", seq}, {"N", n_value}, {"draws", std::move(rows)}}, "draws");
    } else if (*decay) {
      emit(cfg, to_json(decay_check(theta_value, n_value)), "blocks");
    }
  } catch (const PisotError& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "InvalidArgument: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "InvalidArgument: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
