// locstat command line: simulation, single-path estimation and Monte Carlo studies.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "locstat/errors.hpp"
#include "locstat/harness.hpp"
#include "locstat/simulate.hpp"

namespace {

using namespace locstat;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string config_file;
  std::optional<std::string> estimator, curve, family, noise, kernel, out;
  std::optional<std::vector<int>> N;
  std::optional<std::vector<double>> theta, u;
  std::optional<int> points, reps, sim_ratio, de_pop, de_gens, threads;
  std::optional<double> horizon, rate;
  std::optional<std::uint64_t> seed, de_seed;
  bool full_scale = false;
  bool states = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_file, "JSON study configuration")->check(CLI::ExistingFile);
  app->add_option("--noise", o.noise, "driving noise: gauss or nig");
  app->add_option("--horizon", o.horizon, "path horizon T");
  app->add_option("--sim-ratio", o.sim_ratio, "Euler steps per observation spacing");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--out", o.out, "output file (single-path commands) or directory (montecarlo)");
}

void add_estimation(CLI::App* app, Options& o) {
  app->add_option("--kernel", o.kernel, "localizing kernel: rect or epan");
  app->add_option("--points", o.points, "number of equispaced estimation points on [0.2T, 0.8T]");
  app->add_option("--u", o.u, "explicit estimation points");
}

void add_statespace(CLI::App* app, Options& o) {
  app->add_option("--family", o.family, "model family: example2d or car1");
  app->add_option("--theta", o.theta, "constant true parameter (default: time-varying curves)");
  app->add_option("--de-pop", o.de_pop, "differential evolution population (0: 15 per dimension)");
  app->add_option("--de-gens", o.de_gens, "differential evolution generations");
  app->add_option("--de-seed", o.de_seed, "differential evolution seed");
}

StudyConfig build_config(const Options& o, Estimator default_estimator) {
  StudyConfig c;
  c.estimator = default_estimator;
  if (o.full_scale) c = StudyConfig::full_scale(default_estimator);
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    std::stringstream ss;
    ss << in.rdbuf();
    c = StudyConfig::from_json(ss.str());
    if (o.full_scale) {
      const StudyConfig f = StudyConfig::full_scale(c.estimator);
      c.replications = f.replications;
      c.N_list = f.N_list;
      c.u_points = f.u_points;
      c.sim_ratio = f.sim_ratio;
    }
  }
  if (o.estimator) c.estimator = parse_estimator(*o.estimator);
  if (o.curve) c.curve = *o.curve;
  if (o.rate) c.constant_rate = *o.rate;
  if (o.family) c.family = *o.family;
  if (o.theta) c.constant_theta = *o.theta;
  if (o.noise) {
    if (*o.noise == "gauss" || *o.noise == "gaussian") c.noise = default_gaussian_noise();
    else if (*o.noise == "nig") c.noise = default_nig_noise();
    else throw ConfigError("unknown noise '" + *o.noise + "' (expected gauss or nig)");
  }
  if (o.kernel) c.kernel = parse_kernel(*o.kernel);
  if (o.N) c.N_list = *o.N;
  if (o.reps) c.replications = *o.reps;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.sim_ratio) c.sim_ratio = *o.sim_ratio;
  if (o.seed) c.seed = *o.seed;
  if (o.de_pop) c.de.population = *o.de_pop;
  if (o.de_gens) c.de.max_gens = *o.de_gens;
  if (o.de_seed) c.de.seed = *o.de_seed;
  if (o.threads) c.threads = *o.threads;
  if (o.u) {
    c.u_points = *o.u;
  } else if (o.points) {
    if (*o.points < 1) throw ConfigError("--points must be >= 1");
    c.u_points.clear();
    for (int i = 0; i < *o.points; ++i)
      c.u_points.push_back(*o.points == 1 ? 0.5 * c.horizon
                                          : 0.2 * c.horizon + 0.6 * c.horizon * i / (*o.points - 1));
  }
  return c;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::optional<std::string>& out, const std::function<void(std::ostream&)>& body) {
  if (!out || *out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + *out);
  body(f);
}

int run_simulate(const Options& o) {
  StudyConfig c = build_config(o, o.family ? Estimator::Qmle : Estimator::Lse);
  if (!o.N && o.config_file.empty()) c.N_list = {16};
  if (c.N_list.size() != 1) throw ConfigError("simulate takes exactly one --N");
  SimulationConfig sim;
  sim.N = c.N_list.front();
  sim.horizon = c.horizon;
  sim.sim_ratio = c.sim_ratio;
  sim.seed = c.seed;
  sim.keep_states = o.states;
  Path path;
  if (c.estimator == Estimator::Lse) {
    const CoefficientCurve a = c.constant_rate ? CoefficientCurve::constant(*c.constant_rate)
                                               : CoefficientCurve::builtin(c.curve);
    path = simulate_tv_ou(a, c.noise, sim);
  } else {
    const auto family = make_family(c.family);
    const ParameterCurve theta =
        c.constant_theta.empty()
            ? ParameterCurve::example_time_varying(std::holds_alternative<NigNoise>(c.noise))
            : ParameterCurve::constant(c.constant_theta);
    path = simulate_tv_statespace(*family, theta, c.noise, sim);
  }
  emit(o.out, [&](std::ostream& s) { write_path_csv(path, s); });
  return 0;
}

int run_estimate(const Options& o, Estimator estimator) {
  StudyConfig c = build_config(o, estimator);
  c.estimator = estimator;
  c.replications = 1;
  if (!o.N && !o.config_file.empty() && c.N_list.size() > 1) c.N_list = {c.N_list.front()};
  if (!o.N && o.config_file.empty()) c.N_list = {16};
  if (c.N_list.size() != 1) throw ConfigError("estimation commands take exactly one --N");
  c.output_dir.clear();
  const StudyResult r = run_study(c);
  emit(o.out, [&](std::ostream& s) {
    if (estimator == Estimator::Lse) {
      s << "u,a_true,a_hat,sigma_hat,std_err\n";
      for (const auto& row : r.rows)
        s << fmt(row.u) << ',' << fmt(row.truth[0]) << ','
          << (row.ok() ? fmt(row.estimate[0]) : "nan") << ',' << fmt(row.sigma_hat) << ','
          << fmt(row.std_error) << '\n';
      return;
    }
    const std::size_t d = r.rows.empty() ? 0 : r.rows.front().truth.size();
    s << "u";
    for (std::size_t j = 1; j <= d; ++j) s << ",theta_star_" << j;
    for (std::size_t j = 1; j <= d; ++j) s << ",theta_hat_" << j;
    s << ",objective,riccati_residual";
    if (estimator == Estimator::Whittle) s << ",whittle_value";
    s << '\n';
    for (const auto& row : r.rows) {
      s << fmt(row.u);
      for (double v : row.truth) s << ',' << fmt(v);
      for (std::size_t j = 0; j < d; ++j) s << ',' << (row.ok() ? fmt(row.estimate[j]) : "nan");
      s << ',' << fmt(row.objective) << ',' << fmt(row.riccati_residual);
      if (estimator == Estimator::Whittle) s << ',' << fmt(row.whittle_value);
      s << '\n';
    }
  });
  for (const auto& row : r.rows)
    if (!row.ok()) std::cerr << "u = " << row.u << ": " << row.error << '\n';
  return 0;
}

int run_montecarlo(const Options& o) {
  StudyConfig c = build_config(o, Estimator::Lse);
  if (o.out) c.output_dir = *o.out;
  const StudyResult r = run_study(c);
  std::cout << "N,component,mise,failures\n";
  for (std::size_t n = 0; n < c.N_list.size(); ++n)
    for (std::size_t j = 0; j < r.mise[n].size(); ++j)
      std::cout << c.N_list[n] << ',' << j + 1 << ',' << fmt(r.mise[n][j]) << ',' << r.failures[n]
                << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized estimation for time-varying Levy-driven OU and state-space models"};
  app.set_version_flag("--version", locstat::version_string());
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "simulate one path and write it as CSV");
  add_common(sim, o);
  sim->add_option("--curve", o.curve, "OU rate curve: a1, a2 or a3");
  sim->add_option("--rate", o.rate, "constant OU rate");
  sim->add_option("--family", o.family, "simulate a state-space model of this family instead");
  sim->add_option("--theta", o.theta, "constant state-space parameter");
  sim->add_option("--N", o.N, "N")->expected(1);
  sim->add_flag("--states", o.states, "also write the latent state");

  auto* lse = app.add_subcommand("estimate-lse", "localized least squares along one OU path");
  add_common(lse, o);
  add_estimation(lse, o);
  lse->add_option("--curve", o.curve, "OU rate curve: a1, a2 or a3");
  lse->add_option("--rate", o.rate, "constant OU rate");
  lse->add_option("--N", o.N, "N")->expected(1);

  auto* qmle = app.add_subcommand("estimate-qmle", "truncated QMLE along one state-space path");
  add_common(qmle, o);
  add_estimation(qmle, o);
  add_statespace(qmle, o);
  qmle->add_option("--N", o.N, "N")->expected(1);

  auto* whittle = app.add_subcommand("estimate-whittle", "localized Whittle estimation along one path");
  add_common(whittle, o);
  add_estimation(whittle, o);
  add_statespace(whittle, o);
  whittle->add_option("--N", o.N, "N")->expected(1);

  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo study with MISE/MSE and Q-Q output");
  add_common(mc, o);
  add_estimation(mc, o);
  add_statespace(mc, o);
  mc->add_option("--estimator", o.estimator, "lse, qmle or whittle");
  mc->add_option("--curve", o.curve, "OU rate curve: a1, a2 or a3");
  mc->add_option("--rate", o.rate, "constant OU rate");
  mc->add_option("--N", o.N, "list of N");
  mc->add_option("--reps", o.reps, "replications");
  mc->add_option("--threads", o.threads, "worker threads (0: all cores)");
  mc->add_flag("--full-scale", o.full_scale, "full-size study: 400 replications, N up to 256, 101 points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return run_simulate(o);
    if (*lse) return run_estimate(o, Estimator::Lse);
    if (*qmle) return run_estimate(o, Estimator::Qmle);
    if (*whittle) return run_estimate(o, Estimator::Whittle);
    return run_montecarlo(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const KernelError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const RangeError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
