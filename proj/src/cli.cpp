#include "otoc/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "otoc/cluster_dynamics.hpp"
#include "otoc/dense_chain.hpp"
#include "otoc/errors.hpp"
#include "otoc/floquet.hpp"
#include "otoc/oracle.hpp"
#include "otoc/otoc_spin.hpp"
#include "otoc/tensor_train.hpp"
#include "otoc/trajectory_probe.hpp"

namespace otoc {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage (unknown flag, bad value)\n"
    "  10 invalid-parameter   11 unsupported-ensemble   12 invalid-geometry\n"
    "  13 too-small           14 bond-out-of-range      15 flavor-mismatch\n"
    "  20 truncation-ceiling  21 signal-lost            22 numerical-integrity\n"
    "  23 degenerate-normalization\n"
    "  30 fit-insufficient    31 unsupported            40 io\n"
    "Errors print one line: error code=<name> exit=<n> message=\"...\"\n"
    "Config files: flat 'key = value' lines using the flag names; flags override the file.\n"
    "Env: OTOC_RELAX_THREADS caps worker and OpenMP threads.";

EngineOptions engine_options(const RunConfig& c) {
  EngineOptions o;
  o.policy.chi = c.chi;
  o.policy.cutoff = c.cutoff;
  o.policy.ceiling = c.ceiling;
  return o;
}

OtocConfig otoc_config(const RunConfig& c) {
  OtocConfig o;
  o.gate = {c.ax, c.ay, c.az, c.q};
  o.geometry = parse_geometry(c.geom);
  o.boundary = parse_boundary(c.bc);
  o.L = c.L;
  o.T = c.T;
  o.x_v = c.xv;
  o.x_w = c.xw;
  return o;
}

ClusterConfig cluster_config(const RunConfig& c) {
  ClusterConfig o;
  o.az = c.az;
  o.q = c.q;
  o.geometry = parse_geometry(c.geom);
  o.boundary = parse_boundary(c.bc);
  o.L = c.L;
  o.T = c.T;
  o.x_w = c.xw;
  return o;
}

bool dense(const RunConfig& c) {
  if (c.engine == "dense") return true;
  if (c.engine == "tt") return false;
  throw Error(ErrorCode::InvalidParameter, "engine must be tt or dense");
}

void finish_series(const RunConfig& c, const RelaxationSeries& s, FitOptions fo, std::ostream& log) {
  const fs::path dir(c.out);
  write_series_csv(dir / "series.csv", s);
  log << "series: " << s.points.size() << " points, status " << to_string(s.status) << "\n";
  fo.margin = c.margin;
  if (c.breakpoint > 0.0) fo.c = c.breakpoint;
  const TwoStageFit fit = fit_two_stage(s, fo);
  write_fit_report(dir / "fit.txt", fit);
  log << "r1 = " << fit.r1 << "  r2 = " << fit.r2 << "\n";
}

void run_rates(const RunConfig& c, std::ostream& log) {
  const DecayRates r = rates({c.ax, c.ay, c.az, c.q});
  std::ostringstream s;
  s << std::setprecision(8);
  s << "r_DW = " << r.r_dw << "\nr_mag = " << r.r_mag << "\n";
  s << "geom bc r1 r2\n";
  for (Geometry g : {Geometry::Brickwork, Geometry::Staircase})
    for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
      const RatePrediction p = predicted_rates(g, b, c.az);
      s << to_string(g) << ' ' << to_string(b) << ' ' << p.r1 << ' ' << p.r2 << "\n";
    }
  log << s.str();
  std::ofstream(fs::path(c.out) / "rates.txt") << s.str();
}

void run_spin(const RunConfig& c, std::ostream& log) {
  const OtocConfig o = otoc_config(c);
  const EngineOptions e = engine_options(c);
  const RelaxationSeries s = dense(c) ? run_otoc<DenseChain>(o, e) : run_otoc<TensorTrainChain>(o, e);
  finish_series(c, s, {c.L, o.boundary, c.xw}, log);
}

void run_cluster(const RunConfig& c, bool one_point, std::ostream& log) {
  const ClusterConfig o = cluster_config(c);
  const EngineOptions e = engine_options(c);
  RelaxationSeries s;
  if (one_point)
    s = dense(c) ? one_point_sq<DenseChain>(o, e) : one_point_sq<TensorTrainChain>(o, e);
  else
    s = dense(c) ? otoc_cluster<DenseChain>(o, e) : otoc_cluster<TensorTrainChain>(o, e);
  FitOptions fo{c.L, o.boundary, one_point ? 0 : c.xw};
  if (one_point) fo.c = 1.0;
  finish_series(c, s, fo, log);
}

void run_heatmap(const RunConfig& c, std::ostream& log) {
  const EngineOptions e = engine_options(c);
  MagnetizationGrid g;
  KeyValues meta = c.to_key_values();
  if (c.basis == "spin") {
    const OtocConfig o = otoc_config(c);
    const DominantState d = dense(c) ? dominant_state<DenseChain>(o, c.T, e) : dominant_state<TensorTrainChain>(o, c.T, e);
    g = dense(c) ? magnetization_grid<DenseChain>(o, c.T, e, d.config)
                 : magnetization_grid<TensorTrainChain>(o, c.T, e, d.config);
    g.approximate = !d.exact;
    meta["dominant_state"] = format_configuration(d.config);
    meta["dominant_log_score"] = fmt(d.score.log_abs);
    meta["argmax"] = d.exact ? "exact" : "greedy";
    log << "dominant state " << format_configuration(d.config) << (d.exact ? "" : " (greedy)") << "\n";
  } else if (c.basis == "cluster") {
    const ClusterConfig o = cluster_config(c);
    g = dense(c) ? cluster_heatmap<DenseChain>(o, e) : cluster_heatmap<TensorTrainChain>(o, e);
  } else {
    throw Error(ErrorCode::InvalidParameter, "basis must be spin or cluster");
  }
  double worst = 0.0;
  for (double v : g.identity) worst = std::max(worst, std::abs(v - 1.0));
  meta["identity_max_dev"] = fmt(worst);
  meta["rows"] = "site";
  meta["cols"] = "tau";
  meta["pgm_map"] = "round(127.5*(v+1))";
  const fs::path dir(c.out);
  write_grid_csv(dir / "grid.csv", g);
  write_grid_pgm(dir / "grid.pgm", g);
  write_key_values(dir / "grid.meta", meta, "heatmap metadata");
  log << "grid " << g.L << " x " << (g.t + 1) << ", identity max deviation " << worst << "\n";
}

void run_floquet(const RunConfig& c, std::ostream& log) {
  FloquetParams p;
  p.az = c.az;
  p.mode = parse_phi_mode(c.phi_mode);
  p.phi = c.phi;
  p.seed = c.seed;
  p.n_samples = c.n_samples;
  p.L = c.L;
  p.boundary = parse_boundary(c.bc);
  p.T = c.T;
  p.n_typicality = c.n_typ;
  p.x_v = c.xv;
  p.x_w = c.xw;
  const FloquetResult r = disorder_average(p);
  const fs::path dir(c.out);
  write_floquet_csv(dir / "series.csv", r, c.seed);
  const FloquetFit f = floquet_first_stage(r, p.L, p.n_typicality * r.n_samples, p.x_w + 1.0);
  std::ofstream fit(dir / "fit.txt");
  fit << std::setprecision(17) << "r1 = " << f.rate << "\nwindow1 = (" << f.window.lo << ", " << f.window.hi
      << "]\nnoise_floor = " << f.noise << "\nsaturation = " << r.saturation << "\n";
  log << "floquet first-stage rate " << f.rate << " per period over (" << f.window.lo << ", " << f.window.hi
      << "]\n";
}

void run_oracle(const RunConfig& c, std::ostream& log) {
  const auto cases = oracle_check(c.L, {0.2, 0.5, 0.8}, c.xw);
  double worst = 0.0;
  bool signs = true;
  std::ofstream rep(fs::path(c.out) / "oracle.txt");
  for (const auto& k : cases) {
    worst = std::max(worst, k.max_log_dev);
    signs = signs && k.signs_match;
    rep << to_string(k.geometry) << ' ' << to_string(k.boundary) << " az=" << k.az << " dev=" << k.max_log_dev
        << " points=" << k.points << "\n";
  }
  const bool pass = worst <= 1e-8 && signs;
  log << (pass ? "PASS" : "FAIL") << " oracle-check L=" << c.L << " max_log_dev=" << worst << "\n";
  if (!pass) throw Error(ErrorCode::NumericalIntegrity, "dense and tensor-train series disagree");
}

struct Sweep {
  std::string key;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  Sweep s;
  if (eq == std::string::npos) throw Error(ErrorCode::InvalidParameter, "sweep must look like key=start:stop:step");
  s.key = spec.substr(0, eq);
  double a, b, h;
  char c1, c2;
  std::istringstream in(spec.substr(eq + 1));
  if (!(in >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || h <= 0.0)
    throw Error(ErrorCode::InvalidParameter, "sweep must look like key=start:stop:step");
  for (int k = 0; a + k * h <= b + 1e-9 * h; ++k) s.values.push_back(a + k * h);
  return s;
}

void set_key(RunConfig& c, const std::string& key, double v) {
  if (key == "az") c.az = v;
  else if (key == "ax") c.ax = v;
  else if (key == "ay") c.ay = v;
  else if (key == "phi") c.phi = v;
  else if (key == "L") c.L = int(std::lround(v));
  else if (key == "T") c.T = int(std::lround(v));
  else if (key == "xw") c.xw = int(std::lround(v));
  else throw Error(ErrorCode::InvalidParameter, "cannot sweep over '" + key + "'");
}

void run_one(const RunConfig& c, std::ostream& log) {
  fs::create_directories(c.out);
  RunConfig resolved = c;
  resolved.sweep.clear();
  write_key_values(fs::path(c.out) / "config.resolved", resolved.to_key_values(), "otoc_relax resolved config v1");
  const std::string& s = c.subcommand;
  if (s == "rates") run_rates(c, log);
  else if (s == "spin-otoc") run_spin(c, log);
  else if (s == "cluster-otoc") run_cluster(c, false, log);
  else if (s == "one-point") run_cluster(c, true, log);
  else if (s == "heatmap") run_heatmap(c, log);
  else if (s == "floquet") run_floquet(c, log);
  else if (s == "oracle-check") run_oracle(c, log);
  else throw Error(ErrorCode::Usage, "unknown subcommand '" + s + "'");
}

int exit_code(ErrorCode c) { return int(c); }

void print_error(ErrorCode code, const std::string& what) {
  std::string m = what;
  for (char& ch : m)
    if (ch == '"' || ch == '\n') ch = '\'';
  std::cerr << "error code=" << to_string(code) << " exit=" << exit_code(code) << " message=\"" << m << "\"\n";
}

}  // namespace

int thread_budget() {
  if (const char* env = std::getenv("OTOC_RELAX_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return int(std::max(1u, std::thread::hardware_concurrency()));
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"spin-otoc", "cluster-otoc", "one-point", "heatmap",
                                             "floquet",   "oracle-check", "rates"};
  return s;
}

RunConfig defaults_for(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  if (sub == "cluster-otoc" || sub == "one-point") {
    c.L = 16;
    c.T = 64;
  } else if (sub == "heatmap") {
    c.T = 40;
  } else if (sub == "floquet") {
    c.L = 18;
    c.T = 30;
    c.xw = 1;
  } else if (sub == "oracle-check") {
    c.L = 10;
  }
  return c;
}

KeyValues RunConfig::to_key_values() const {
  KeyValues kv;
  kv["subcommand"] = subcommand;
  kv["geom"] = geom;
  kv["bc"] = bc;
  kv["engine"] = engine;
  kv["basis"] = basis;
  kv["phi-mode"] = phi_mode;
  kv["L"] = std::to_string(L);
  kv["T"] = std::to_string(T);
  kv["q"] = std::to_string(q);
  kv["xv"] = std::to_string(xv);
  kv["xw"] = std::to_string(xw);
  kv["chi"] = std::to_string(chi);
  kv["n-typ"] = std::to_string(n_typ);
  kv["n-samples"] = std::to_string(n_samples);
  kv["ax"] = fmt(ax);
  kv["ay"] = fmt(ay);
  kv["az"] = fmt(az);
  kv["cutoff"] = fmt(cutoff);
  kv["ceiling"] = fmt(ceiling);
  kv["phi"] = fmt(phi);
  kv["margin"] = fmt(margin);
  kv["breakpoint"] = fmt(breakpoint);
  kv["seed"] = std::to_string(seed);
  kv["out"] = out;
  if (!sweep.empty()) kv["sweep"] = sweep;
  return kv;
}

void run(const RunConfig& c, std::ostream& log) {
  if (c.sweep.empty()) {
    run_one(c, log);
    return;
  }
  const Sweep sw = parse_sweep(c.sweep);
  std::vector<RunConfig> points;
  for (double v : sw.values) {
    RunConfig p = c;
    set_key(p, sw.key, v);
    std::ostringstream name;
    name << sw.key << '=' << v;
    p.out = (fs::path(c.out) / name.str()).string();
    p.sweep.clear();
    points.push_back(p);
  }
  const int workers = std::min<int>(thread_budget(), int(points.size()));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  auto work = [&] {
    for (std::size_t i; (i = next++) < points.size();) {
      std::ostringstream local;
      try {
        run_one(points[i], local);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
      std::lock_guard lock(mu);
      log << "[" << points[i].out << "]\n" << local.str();
    }
  };
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  // splice config-file values in front of explicit flags so flags win
  KeyValues file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + long(i));
    } else {
      continue;
    }
    try {
      file = read_key_values(path);
    } catch (const Error& e) {
      print_error(e.code(), e.what());
      return exit_code(e.code());
    }
    break;
  }
  auto is_sub = [](const std::string& s) {
    return std::find(subcommands().begin(), subcommands().end(), s) != subcommands().end();
  };
  auto sub_it = std::find_if(args.begin(), args.end(), is_sub);
  if (sub_it == args.end() && file.count("subcommand")) {
    args.insert(args.begin(), file["subcommand"]);
    sub_it = args.begin();
  }
  if (sub_it != args.end()) {
    std::vector<std::string> injected;
    for (const auto& [k, v] : file) {
      if (k == "subcommand") continue;
      injected.push_back("--" + k);
      injected.push_back(v);
    }
    args.insert(sub_it + 1, injected.begin(), injected.end());
  }

  CLI::App app{"Two-stage OTOC relaxation simulator"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  const std::map<std::string, std::string> about = {
      {"spin-otoc", "spin-basis OTOC series and two-stage fit"},
      {"cluster-otoc", "cluster-basis OTOC series and two-stage fit"},
      {"one-point", "squared one-point function in the cluster basis"},
      {"heatmap", "dominant state and magnetization grid"},
      {"floquet", "Floquet circuit OTOC by canonical typicality"},
      {"oracle-check", "dense vs tensor-train agreement at one L"},
      {"rates", "predicted (r1, r2) table"}};
  std::map<std::string, RunConfig> configs;
  for (const auto& name : subcommands()) configs[name] = defaults_for(name);
  for (const auto& name : subcommands()) {
    RunConfig& c = configs[name];
    CLI::App* s = app.add_subcommand(name, about.at(name));
    s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    s->add_option("--geom", c.geom, "circuit geometry")->check(CLI::IsMember({"bw", "s"}))->capture_default_str();
    s->add_option("--bc", c.bc, "boundary")->check(CLI::IsMember({"obc", "pbc"}))->capture_default_str();
    s->add_option("--engine", c.engine, "tt or dense")->check(CLI::IsMember({"tt", "dense"}))->capture_default_str();
    s->add_option("--basis", c.basis, "heatmap basis")->check(CLI::IsMember({"spin", "cluster"}))->capture_default_str();
    s->add_option("--L", c.L, "sites")->capture_default_str();
    s->add_option("--T", c.T, "time units (Floquet: periods)")->capture_default_str();
    s->add_option("--ax", c.ax)->capture_default_str();
    s->add_option("--ay", c.ay)->capture_default_str();
    s->add_option("--az", c.az)->capture_default_str();
    s->add_option("--q", c.q)->capture_default_str();
    s->add_option("--xv", c.xv, "V insertion site")->capture_default_str();
    s->add_option("--xw", c.xw, "W insertion site")->capture_default_str();
    s->add_option("--chi", c.chi, "bond dimension cap")->capture_default_str();
    s->add_option("--cutoff", c.cutoff, "relative singular value cutoff")->capture_default_str();
    s->add_option("--ceiling", c.ceiling, "cumulative truncation error ceiling")->capture_default_str();
    s->add_option("--margin", c.margin, "fit margin after breakpoints")->capture_default_str();
    s->add_option("--breakpoint", c.breakpoint, "breakpoint multiple of L (0 = default)")->capture_default_str();
    s->add_option("--seed", c.seed)->capture_default_str();
    s->add_option("--n-typ", c.n_typ, "typicality states")->capture_default_str();
    s->add_option("--n-samples", c.n_samples, "disorder samples")->capture_default_str();
    s->add_option("--phi-mode", c.phi_mode)->check(CLI::IsMember({"clean", "homog", "site"}))->capture_default_str();
    s->add_option("--phi", c.phi)->capture_default_str();
    s->add_option("--out", c.out, "output directory")->capture_default_str();
    s->add_option("--sweep", c.sweep, "key=start:stop:step, one subdirectory per point");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error(ErrorCode::Usage, e.what());
    return exit_code(ErrorCode::Usage);
  }

  RunConfig cfg;
  for (const auto& name : subcommands())
    if (app.got_subcommand(name)) cfg = configs[name];

  omp_set_num_threads(thread_budget());
  try {
    run(cfg, std::cout);
  } catch (const Error& e) {
    print_error(e.code(), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error code=internal exit=1 message=\"" << e.what() << "\"\n";
    return 1;
  }
  return 0;
}

}  // namespace otoc
