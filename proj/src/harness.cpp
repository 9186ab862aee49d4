#include "locstat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

#include "locstat/curves.hpp"
#include "locstat/errors.hpp"
#include "locstat/kalman.hpp"
#include "locstat/ou_lse.hpp"
#include "locstat/rng.hpp"
#include "locstat/simulate.hpp"
#include "locstat/statespace.hpp"
#include "locstat/whittle.hpp"

#ifndef LOCSTAT_VERSION
#define LOCSTAT_VERSION "unknown"
#endif

namespace locstat {
namespace {

using json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sanitize_message(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s.empty() ? "error" : s;
}

json noise_to_json(const LevySpec& spec) {
  if (const auto* g = std::get_if<GaussianNoise>(&spec)) return {{"type", "gauss"}, {"sigma2", g->sigma2}};
  const auto& n = std::get<NigNoise>(spec);
  return {{"type", "nig"}, {"alpha", n.alpha}, {"beta", n.beta}, {"delta", n.delta}, {"mu", n.mu}};
}

LevySpec noise_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "gauss" || s == "gaussian") return default_gaussian_noise();
    if (s == "nig") return default_nig_noise();
    throw ConfigError("unknown noise '" + s + "' (expected gauss or nig)");
  }
  const auto type = j.value("type", std::string("nig"));
  if (type == "gauss" || type == "gaussian") {
    GaussianNoise g;
    g.sigma2 = j.value("sigma2", g.sigma2);
    return g;
  }
  if (type == "nig") {
    auto n = std::get<NigNoise>(default_nig_noise());
    n.alpha = j.value("alpha", n.alpha);
    n.beta = j.value("beta", n.beta);
    n.delta = j.value("delta", n.delta);
    n.mu = j.contains("mu") ? j["mu"].get<double>() : NigNoise::centered(n.alpha, n.beta, n.delta).mu;
    return n;
  }
  throw ConfigError("unknown noise type '" + type + "'");
}

std::unique_ptr<ModelFamily> family_of(const StudyConfig& c) { return make_family(c.family); }

Box box_of(const StudyConfig& c, const ModelFamily& family) {
  if (c.box_lo.empty() && c.box_hi.empty()) return family.default_box();
  return Box{c.box_lo, c.box_hi};
}

ParameterCurve truth_curve(const StudyConfig& c) {
  if (!c.constant_theta.empty()) return ParameterCurve::constant(c.constant_theta);
  if (c.family != "example2d")
    throw ConfigError("time-varying truth is only built in for example2d; set constant_theta");
  return ParameterCurve::example_time_varying(std::holds_alternative<NigNoise>(c.noise));
}

CoefficientCurve rate_curve(const StudyConfig& c) {
  return c.constant_rate ? CoefficientCurve::constant(*c.constant_rate)
                         : CoefficientCurve::builtin(c.curve);
}

SamplingGrid grid_for(const StudyConfig& c, int N, double u) {
  return SamplingGrid::standard_o1(N, u, c.bandwidth_constant);
}

// Estimates of one replication for one N, appended in u order.
void run_replication(const StudyConfig& c, int N, int rep, const std::vector<double>& u_points,
                     std::vector<EstimateRow>& out) {
  SimulationConfig sim;
  sim.N = N;
  sim.horizon = c.horizon;
  sim.sim_ratio = c.sim_ratio;
  sim.seed = mix_seed(c.seed, static_cast<std::uint64_t>(N));
  sim.stream = static_cast<std::uint64_t>(rep);

  std::unique_ptr<ModelFamily> family;
  Box box;
  Path path;
  ParameterCurve theta;
  CoefficientCurve a = CoefficientCurve::constant(1.0);
  if (c.estimator == Estimator::Lse) {
    a = rate_curve(c);
    path = simulate_tv_ou(a, c.noise, sim);
  } else {
    family = family_of(c);
    box = box_of(c, *family);
    theta = truth_curve(c);
    path = simulate_tv_statespace(*family, theta, c.noise, sim);
  }

  for (std::size_t k = 0; k < u_points.size(); ++k) {
    EstimateRow row;
    row.N = N;
    row.u_index = static_cast<int>(k);
    row.u = u_points[k];
    row.replication = rep;
    const SamplingGrid grid = grid_for(c, N, row.u);
    try {
      const Window window = extract_window(path, grid);
      if (c.estimator == Estimator::Lse) {
        row.truth = {a(row.u)};
        const LseEstimate est = lse_estimate(window, c.kernel, c.lse_lo, c.lse_hi);
        row.estimate = {est.a_hat};
        row.sigma_hat = est.sigma_u_hat;
        row.std_error = lse_standardized_error(est, row.truth[0], grid);
        row.clamped = est.clamped;
      } else {
        row.truth = theta(row.u);
        DeConfig de = c.de;
        de.seed = mix_seed(c.de.seed, (static_cast<std::uint64_t>(rep) << 20) ^ (k << 8) ^ N);
        const StateSpaceEstimate est =
            c.estimator == Estimator::Qmle ? qmle_estimate(window, c.kernel, *family, box, de)
                                           : whittle_estimate(window, c.kernel, *family, box, de);
        row.estimate = est.theta;
        row.riccati_residual = est.riccati_residual;
        if (c.estimator == Estimator::Qmle) {
          row.objective = est.objective;
        } else {
          row.whittle_value = est.objective;
          row.objective = qmle_objective(window, kernel_weights(c.kernel, grid), *family, est.theta);
        }
      }
    } catch (const Error& e) {
      row.estimate.clear();
      row.error = sanitize_message(e.what());
      if (row.truth.empty())
        row.truth = c.estimator == Estimator::Lse ? std::vector<double>{a(row.u)} : theta(row.u);
    }
    out.push_back(std::move(row));
  }
}

void aggregate(StudyResult& r) {
  const auto& c = r.config;
  const std::size_t P = r.u_points.size();
  const std::size_t d = r.rows.empty() ? 1 : r.rows.front().truth.size();
  const double du = P >= 2 ? r.u_points[1] - r.u_points[0] : kNaN;
  r.mise.assign(c.N_list.size(), std::vector<double>(d, kNaN));
  r.mse.assign(c.N_list.size(), std::vector<std::vector<double>>(P, std::vector<double>(d, kNaN)));
  r.failures.assign(c.N_list.size(), 0);
  for (std::size_t n = 0; n < c.N_list.size(); ++n) {
    std::vector<std::vector<double>> sum(P, std::vector<double>(d, 0.0));
    std::vector<int> count(P, 0);
    for (const auto& row : r.rows) {
      if (row.N != c.N_list[n]) continue;
      if (!row.ok()) {
        ++r.failures[n];
        continue;
      }
      ++count[row.u_index];
      for (std::size_t j = 0; j < d; ++j) {
        const double e = row.estimate[j] - row.truth[j];
        sum[row.u_index][j] += e * e;
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      double integral = 0.0;
      for (std::size_t i = 0; i < P; ++i) {
        r.mse[n][i][j] = count[i] > 0 ? sum[i][j] / count[i] : kNaN;
        integral += r.mse[n][i][j] * du;
      }
      r.mise[n][j] = P >= 2 ? integral : kNaN;
    }
  }
}

void write_file(const std::filesystem::path& p, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  body(out);
  if (!out) throw ConfigError("failed writing " + p.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s.empty()) return kNaN;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw ConfigError("malformed number '" + s + "' in CSV");
  return v;
}

}  // namespace

Estimator parse_estimator(std::string_view text) {
  if (text == "lse") return Estimator::Lse;
  if (text == "qmle") return Estimator::Qmle;
  if (text == "whittle") return Estimator::Whittle;
  throw ConfigError("unknown estimator '" + std::string(text) + "' (expected lse, qmle or whittle)");
}

std::string to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::Lse: return "lse";
    case Estimator::Qmle: return "qmle";
    case Estimator::Whittle: return "whittle";
  }
  return "lse";
}

StudyConfig StudyConfig::full_scale(Estimator estimator) {
  StudyConfig c;
  c.estimator = estimator;
  c.replications = 400;
  c.N_list = {1, 4, 16, 64, 256};
  c.u_points.clear();
  for (int i = 0; i < 101; ++i) c.u_points.push_back(400.0 + 12.0 * i);
  c.sim_ratio = 1000;
  return c;
}

std::vector<double> StudyConfig::resolved_u_points() const {
  if (!u_points.empty()) return u_points;
  std::vector<double> u(21);
  for (int i = 0; i < 21; ++i) u[i] = 0.2 * horizon + 0.6 * horizon * i / 20.0;
  return u;
}

void StudyConfig::validate() const {
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (N_list.empty()) throw ConfigError("N list must not be empty");
  if (!(horizon > 0.0)) throw ConfigError("horizon must be > 0");
  if (sim_ratio < 1) throw ConfigError("sim_ratio must be >= 1");
  if (!(bandwidth_constant > 0.0)) throw ConfigError("bandwidth_constant must be > 0");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  locstat::validate(noise);
  de.validate(estimator == Estimator::Lse ? 1 : 3);
  const auto u = resolved_u_points();
  if (u.empty()) throw ConfigError("at least one estimation point is required");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.2 * horizon - 1e-9 || u[i] > 0.8 * horizon + 1e-9)
      throw ConfigError("estimation point " + fmt(u[i]) + " lies outside [0.2 T, 0.8 T]");
    if (i > 0 && !(u[i] > u[i - 1])) throw ConfigError("estimation points must be increasing");
  }
  for (int N : N_list) {
    if (N < 1) throw ConfigError("N must be >= 1");
    for (double ui : u) {
      const double x = ui * N;
      if (std::abs(x - std::round(x)) > 1e-6)
        throw ConfigError("estimation point " + fmt(ui) + " is not on the observation lattice k/N");
      const SamplingGrid g = SamplingGrid::standard_o1(N, ui, bandwidth_constant);
      g.validate();
      if (g.time(-g.m()) < -1e-9 || g.time(g.m()) > horizon + 1e-9)
        throw ConfigError("window around u = " + fmt(ui) + " exceeds [0, T] for N = " +
                          std::to_string(N));
    }
  }
  if (estimator == Estimator::Lse) {
    if (!(lse_lo > 0.0 && lse_lo < lse_hi)) throw ConfigError("LSE interval must satisfy 0 < lo < hi");
    const CoefficientCurve a = constant_rate ? CoefficientCurve::constant(*constant_rate)
                                             : CoefficientCurve::builtin(curve);
    if (!(a.min_over(0.0, horizon) > 0.0)) throw ConfigError("rate curve must be positive on [0, T]");
  } else {
    const auto family = make_family(this->family);
    if (!constant_theta.empty() && constant_theta.size() != static_cast<std::size_t>(family->param_dim()))
      throw ConfigError("constant_theta has the wrong dimension for family " + this->family);
    const Box box = (box_lo.empty() && box_hi.empty()) ? family->default_box() : Box{box_lo, box_hi};
    box.validate();
    if (box.dim() != static_cast<std::size_t>(family->param_dim()))
      throw ConfigError("box has the wrong dimension for family " + this->family);
  }
}

std::string StudyConfig::to_json() const {
  json j;
  j["estimator"] = to_string(estimator);
  j["curve"] = curve;
  j["constant_rate"] = constant_rate ? json(*constant_rate) : json(nullptr);
  j["lse_lo"] = lse_lo;
  j["lse_hi"] = lse_hi;
  j["family"] = family;
  j["constant_theta"] = constant_theta;
  j["box_lo"] = box_lo;
  j["box_hi"] = box_hi;
  j["noise"] = noise_to_json(noise);
  j["N"] = N_list;
  j["replications"] = replications;
  j["kernel"] = to_string(kernel);
  j["horizon"] = horizon;
  j["bandwidth_constant"] = bandwidth_constant;
  j["u_points"] = resolved_u_points();
  j["sim_ratio"] = sim_ratio;
  j["seed"] = seed;
  j["de"] = {{"population", de.population}, {"F", de.F},        {"CR", de.CR},
             {"max_gens", de.max_gens},     {"tol", de.tol},    {"seed", de.seed}};
  j["threads"] = threads;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

StudyConfig StudyConfig::from_json(const std::string& text) {
  StudyConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    if (j.contains("estimator")) c.estimator = parse_estimator(j["estimator"].get<std::string>());
    c.curve = j.value("curve", c.curve);
    if (j.contains("constant_rate") && !j["constant_rate"].is_null())
      c.constant_rate = j["constant_rate"].get<double>();
    c.lse_lo = j.value("lse_lo", c.lse_lo);
    c.lse_hi = j.value("lse_hi", c.lse_hi);
    c.family = j.value("family", c.family);
    c.constant_theta = j.value("constant_theta", c.constant_theta);
    c.box_lo = j.value("box_lo", c.box_lo);
    c.box_hi = j.value("box_hi", c.box_hi);
    if (j.contains("noise")) c.noise = noise_from_json(j["noise"]);
    c.N_list = j.value("N", c.N_list);
    c.replications = j.value("replications", c.replications);
    if (j.contains("kernel")) c.kernel = parse_kernel(j["kernel"].get<std::string>());
    c.horizon = j.value("horizon", c.horizon);
    c.bandwidth_constant = j.value("bandwidth_constant", c.bandwidth_constant);
    c.u_points = j.value("u_points", c.u_points);
    c.sim_ratio = j.value("sim_ratio", c.sim_ratio);
    c.seed = j.value("seed", c.seed);
    if (j.contains("de")) {
      const json& d = j["de"];
      c.de.population = d.value("population", c.de.population);
      c.de.F = d.value("F", c.de.F);
      c.de.CR = d.value("CR", c.de.CR);
      c.de.max_gens = d.value("max_gens", c.de.max_gens);
      c.de.tol = d.value("tol", c.de.tol);
      c.de.seed = d.value("seed", c.de.seed);
    }
    c.threads = j.value("threads", c.threads);
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid configuration JSON: ") + e.what());
  }
  return c;
}

std::vector<double> StudyResult::standardized_errors(int N) const {
  std::vector<double> out;
  for (const auto& row : rows)
    if (row.N == N && row.ok()) out.push_back(row.std_error);
  return out;
}

StudyResult run_study(const StudyConfig& config) {
  config.validate();
  if (config.estimator != Estimator::Lse) {
    const auto family = family_of(config);
    const AssumptionReport report = check_assumptions(*family, box_of(config, *family), 1.0);
    for (const auto& r : report.results)
      if (!r.passed) throw ConfigError("assumption " + r.id + " fails on the box: " + r.detail);
  }
  StudyResult result;
  result.config = config;
  result.u_points = config.resolved_u_points();
  const int threads = config.threads > 0
                          ? config.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int N : config.N_list) {
    std::vector<std::vector<EstimateRow>> per_rep(config.replications);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
      for (int rep = next++; rep < config.replications && !failed; rep = next++) {
        try {
          run_replication(config, N, rep, result.u_points, per_rep[rep]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    };
    const int n_threads = std::min(threads, config.replications);
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& rows : per_rep)
      for (auto& row : rows) result.rows.push_back(std::move(row));
  }
  aggregate(result);

  if (!config.output_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    write_file(dir / "estimates.csv", [&](std::ostream& o) { write_estimates_csv(result, o); });
    write_file(dir / "mise.csv", [&](std::ostream& o) {
      o << "N,component,mise,failures\n";
      for (std::size_t n = 0; n < config.N_list.size(); ++n)
        for (std::size_t j = 0; j < result.mise[n].size(); ++j)
          o << config.N_list[n] << ',' << j + 1 << ',' << fmt(result.mise[n][j]) << ','
            << result.failures[n] << '\n';
    });
    write_file(dir / "mse.csv", [&](std::ostream& o) {
      o << "N,u_index,u,component,mse\n";
      for (std::size_t n = 0; n < config.N_list.size(); ++n)
        for (std::size_t i = 0; i < result.u_points.size(); ++i)
          for (std::size_t j = 0; j < result.mse[n][i].size(); ++j)
            o << config.N_list[n] << ',' << i << ',' << fmt(result.u_points[i]) << ',' << j + 1
              << ',' << fmt(result.mse[n][i][j]) << '\n';
    });
    if (config.estimator == Estimator::Lse) {
      write_file(dir / "qq.csv", [&](std::ostream& o) {
        o << "N,theoretical,sample\n";
        for (int N : config.N_list) {
          auto errors = result.standardized_errors(N);
          if (errors.size() < 10) continue;
          for (const auto& [t, s] : qq_export(std::move(errors)))
            o << N << ',' << fmt(t) << ',' << fmt(s) << '\n';
        }
      });
    }
    write_file(dir / "manifest.json", [&](std::ostream& o) { o << manifest_json(result) << '\n'; });
  }
  return result;
}

double mise(const std::vector<std::vector<double>>& estimates, std::span<const double> u,
            const std::function<double(double)>& truth) {
  if (u.size() < 2) throw DomainError("mise: at least two estimation points are required");
  if (estimates.empty()) throw DomainError("mise: no replications");
  const double du = u[1] - u[0];
  double total = 0.0;
  for (const auto& rep : estimates) {
    if (rep.size() != u.size()) throw DomainError("mise: estimate row length differs from u grid");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double e = rep[i] - truth(u[i]);
      s += e * e * du;
    }
    total += s;
  }
  return total / static_cast<double>(estimates.size());
}

double mse(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw DomainError("mse: no estimates");
  double s = 0.0;
  for (double e : estimates) s += (e - truth) * (e - truth);
  return s / static_cast<double>(estimates.size());
}

std::vector<std::pair<double, double>> qq_export(std::vector<double> errors) {
  if (errors.size() < 10) throw DomainError("qq_export: at least 10 samples are required");
  std::sort(errors.begin(), errors.end());
  const boost::math::normal standard;
  const double n = static_cast<double>(errors.size());
  std::vector<std::pair<double, double>> out(errors.size());
  for (std::size_t k = 0; k < errors.size(); ++k)
    out[k] = {boost::math::quantile(standard, (static_cast<double>(k) + 0.5) / n), errors[k]};
  return out;
}

double qq_max_deviation(const std::vector<std::pair<double, double>>& pairs) {
  double worst = 0.0;
  for (const auto& [t, s] : pairs) worst = std::max(worst, std::abs(s - t));
  return worst;
}

void write_estimates_csv(const StudyResult& result, std::ostream& out) {
  const std::size_t d = result.rows.empty() ? 1 : result.rows.front().truth.size();
  out << "N,u_index,u,replication";
  for (std::size_t j = 1; j <= d; ++j) out << ",truth_" << j;
  for (std::size_t j = 1; j <= d; ++j) out << ",estimate_" << j;
  out << ",sigma_hat,std_error,objective,whittle_value,riccati_residual,clamped,error\n";
  for (const auto& row : result.rows) {
    out << row.N << ',' << row.u_index << ',' << fmt(row.u) << ',' << row.replication;
    for (std::size_t j = 0; j < d; ++j) out << ',' << fmt(row.truth[j]);
    for (std::size_t j = 0; j < d; ++j) out << ',' << (row.ok() ? fmt(row.estimate[j]) : "");
    out << ',' << fmt(row.sigma_hat) << ',' << fmt(row.std_error) << ',' << fmt(row.objective)
        << ',' << fmt(row.whittle_value) << ',' << fmt(row.riccati_residual) << ','
        << (row.clamped ? 1 : 0) << ',' << row.error << '\n';
  }
}

std::vector<EstimateRow> read_estimates_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("estimates CSV is empty");
  const auto header = split_csv(line);
  std::size_t d = 0;
  for (const auto& h : header)
    if (h.rfind("truth_", 0) == 0) ++d;
  if (header.size() != 4 + 2 * d + 7) throw ConfigError("unexpected estimates CSV header");
  std::vector<EstimateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw ConfigError("malformed estimates CSV row");
    EstimateRow row;
    row.N = std::stoi(f[0]);
    row.u_index = std::stoi(f[1]);
    row.u = parse_double(f[2]);
    row.replication = std::stoi(f[3]);
    std::size_t k = 4;
    for (std::size_t j = 0; j < d; ++j) row.truth.push_back(parse_double(f[k++]));
    row.error = f[4 + 2 * d + 6];
    for (std::size_t j = 0; j < d; ++j, ++k)
      if (row.ok()) row.estimate.push_back(parse_double(f[k]));
    row.sigma_hat = parse_double(f[k++]);
    row.std_error = parse_double(f[k++]);
    row.objective = parse_double(f[k++]);
    row.whittle_value = parse_double(f[k++]);
    row.riccati_residual = parse_double(f[k++]);
    row.clamped = f[k++] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_qq_csv(const std::vector<std::pair<double, double>>& pairs, std::ostream& out) {
  out << "theoretical,sample\n";
  for (const auto& [t, s] : pairs) out << fmt(t) << ',' << fmt(s) << '\n';
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string version_string() { return LOCSTAT_VERSION; }

std::string manifest_json(const StudyResult& result) {
  const std::string config_text = result.config.to_json();
  json j;
  j["tool"] = "locstat";
  j["version"] = version_string();
  j["config_hash"] = fnv1a_hex(config_text);
  j["seed"] = result.config.seed;
  j["config"] = json::parse(config_text);
  json agg = json::array();
  for (std::size_t n = 0; n < result.config.N_list.size(); ++n) {
    json e;
    e["N"] = result.config.N_list[n];
    json m = json::array();
    for (double v : result.mise[n]) m.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    e["mise"] = m;
    e["failures"] = result.failures[n];
    agg.push_back(e);
  }
  j["aggregates"] = agg;
  j["files"] = result.config.estimator == Estimator::Lse
                   ? json::array({"estimates.csv", "mise.csv", "mse.csv", "qq.csv"})
                   : json::array({"estimates.csv", "mise.csv", "mse.csv"});
  return j.dump(2);
}

}  // namespace locstat
