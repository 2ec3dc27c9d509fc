#include "mollify/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "mollify/csv_io.hpp"
#include "mollify/errors.hpp"
#include "mollify/lab.hpp"

namespace mollify::cli {

namespace {

struct Options {
  std::string signal;
  std::string coefficients_path;
  std::string samples_path;
  std::vector<double> edges;
  bool edges_given = false;
  int N = 128;
  std::vector<int> Ns{32, 64, 128};
  std::string mode = "spectral";
  std::string p_policy = "adaptive";
  double kappa = 0.60653065971263342;
  double gamma = 0.5;
  std::vector<double> gammas{0.2, 0.5, 0.8};
  double c = 10.0;
  std::string normalization = "off";
  int norm_order = -1;
  bool norm_adaptive = false;
  double switch_radius = -1.0;
  std::string theta_mode = "nearest";
  double theta_floor = -1.0;
  double spacing = kPi / 8000.0;
  int x_points = 300;
  std::vector<double> x_list;
  unsigned threads = 0;
  double edge_threshold = 0.5;
  double loss_threshold = 1e-2;
  std::string out;
  std::string out_dir = ".";
};

lab::DataMode data_mode(const Options& o) {
  if (o.mode == "spectral") return lab::DataMode::spectral;
  if (o.mode == "discrete") return lab::DataMode::discrete;
  throw ConfigError("--mode: expected 'spectral' or 'discrete', got '" + o.mode + "'");
}

lab::ReconstructConfig resolve(const Options& o) {
  lab::ReconstructConfig cfg;
  cfg.mode = data_mode(o);
  const bool spectral = cfg.mode == lab::DataMode::spectral;
  cfg.N = o.N;

  cfg.policy.theta = spectral ? ThetaPolicy::spectral_default() : ThetaPolicy::discrete_default();
  if (o.theta_floor >= 0.0) cfg.policy.theta.floor_scale = o.theta_floor;
  if (o.theta_mode == "custom")
    cfg.policy.theta.mode = ThetaPolicy::Mode::custom;
  else if (o.theta_mode != "nearest")
    throw ConfigError("--theta: expected 'nearest' or 'custom', got '" + o.theta_mode + "'");

  if (o.p_policy == "adaptive")
    cfg.policy.degree = DegreePolicy::adaptive(o.kappa);
  else if (o.p_policy == "power")
    cfg.policy.degree = DegreePolicy::power(o.gamma);
  else
    throw ConfigError("--p-policy: expected 'adaptive' or 'power', got '" + o.p_policy + "'");

  if (o.normalization == "on") {
    NormalizationPolicy np = spectral ? NormalizationPolicy::spectral() : NormalizationPolicy::discrete();
    if (o.norm_order >= 0) np.order = o.norm_order;
    if (o.switch_radius >= 0.0) np.switch_radius = o.switch_radius;
    np.adaptive_order = o.norm_adaptive;
    cfg.policy.normalization = np;
  } else if (o.normalization != "off") {
    throw ConfigError("--normalization: expected 'on' or 'off', got '" + o.normalization + "'");
  }

  cfg.localizer.c = o.c;
  cfg.quadrature.max_spacing = o.spacing;
  if (!o.x_list.empty()) {
    cfg.x_grid = o.x_list;
  } else {
    if (o.x_points < 1) throw ConfigError("--x-points: must be positive");
    cfg.x_grid = lab::uniform_grid(static_cast<std::size_t>(o.x_points));
  }
  cfg.threads = o.threads;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::format_real(v[i]);
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

io::ConfigEcho base_echo(const std::string& command, const Options& o) {
  io::ConfigEcho e{{"command", command}};
  if (!o.signal.empty()) e.emplace_back("signal", o.signal);
  if (!o.coefficients_path.empty()) e.emplace_back("coefficients", o.coefficients_path);
  if (!o.samples_path.empty()) e.emplace_back("samples", o.samples_path);
  if (o.edges_given) e.emplace_back("edges", join_reals(o.edges));
  return e;
}

io::ConfigEcho run_echo(const std::string& command, const Options& o,
                        const lab::ReconstructConfig& cfg) {
  io::ConfigEcho e = base_echo(command, o);
  e.emplace_back("n", std::to_string(cfg.N));
  e.emplace_back("mode", lab::to_string(cfg.mode));
  const bool adaptive = cfg.policy.degree.kind == DegreePolicy::Kind::adaptive;
  e.emplace_back("p_policy", adaptive ? "adaptive" : "power");
  e.emplace_back(adaptive ? "kappa" : "gamma", io::format_real(cfg.policy.degree.value));
  e.emplace_back("c", io::format_real(cfg.localizer.c));
  e.emplace_back("theta", cfg.policy.theta.mode == ThetaPolicy::Mode::custom ? "custom" : "nearest");
  e.emplace_back("theta_floor", io::format_real(cfg.policy.theta.floor_scale));
  const NormalizationPolicy& np = cfg.policy.normalization;
  e.emplace_back("normalization", np.mode == NormMode::none ? "off" : to_string(np.mode));
  if (np.mode != NormMode::none) {
    e.emplace_back("norm_order", std::to_string(np.order));
    e.emplace_back("norm_adaptive", np.adaptive_order ? "true" : "false");
    e.emplace_back("switch_radius", io::format_real(np.switch_radius));
  }
  e.emplace_back("spacing", io::format_real(cfg.quadrature.max_spacing));
  if (!o.x_list.empty())
    e.emplace_back("x_list", join_reals(cfg.x_grid));
  else
    e.emplace_back("x_points", std::to_string(cfg.x_grid.size()));
  return e;
}

PiecewiseSignal require_signal(const Options& o) {
  if (o.signal.empty()) throw ConfigError("--signal is required");
  auto sig = builtin_signal(o.signal);
  if (!sig) throw ConfigError("--signal: unknown signal '" + o.signal + "'");
  return *sig;
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
  if (o.out.empty() || o.out == "-")
    out << content;
  else
    io::write_file(o.out, content);
}

void cmd_project(const Options& o, std::ostream& out) {
  if (o.N < 1) throw ConfigError("--n: must be positive");
  SpectralCoefficients c;
  if (!o.samples_path.empty())
    c = interpolant_coefficients(io::read_samples_file(o.samples_path));
  else
    c = compute_coefficients(require_signal(o), o.N);
  io::ConfigEcho e = base_echo("project", o);
  e.emplace_back("n", std::to_string(c.N));
  std::ostringstream ss;
  io::write_coefficients(ss, c, e);
  emit(o, out, ss.str());
}

void cmd_sample(const Options& o, std::ostream& out) {
  if (o.N < 1) throw ConfigError("--n: must be positive");
  const GridSamples g = sample_signal(require_signal(o), o.N);
  io::ConfigEcho e = base_echo("sample", o);
  e.emplace_back("n", std::to_string(o.N));
  std::ostringstream ss;
  io::write_samples(ss, g, e);
  emit(o, out, ss.str());
}

void report_notes(const lab::ErrorReport& rep, std::ostream& err) {
  for (const auto& n : rep.notes) err << "warning: " << n << '\n';
}

void cmd_reconstruct(const Options& o, std::ostream& out, std::ostream& err) {
  Options opts = o;
  lab::ErrorReport rep;
  if (!o.coefficients_path.empty() || !o.samples_path.empty()) {
    if (!o.coefficients_path.empty() && !o.samples_path.empty())
      throw ConfigError("give either --coefficients or --samples, not both");
    if (!o.edges_given) throw ConfigError("--edges is required for user data");
    if (!o.coefficients_path.empty()) {
      const auto c = io::read_coefficients_file(o.coefficients_path);
      opts.mode = "spectral";
      opts.N = c.N;
      rep = lab::reconstruct(c, o.edges, resolve(opts));
    } else {
      const auto g = io::read_samples_file(o.samples_path);
      opts.mode = "discrete";
      opts.N = g.N;
      rep = lab::reconstruct(g, o.edges, resolve(opts));
    }
  } else {
    rep = lab::reconstruct(require_signal(o), resolve(opts));
  }
  report_notes(rep, err);
  std::ostringstream ss;
  io::write_report(ss, rep, run_echo("reconstruct", opts, rep.config));
  emit(o, out, ss.str());
}

void cmd_study(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.Ns.empty()) throw ConfigError("--ns: N-list must not be empty");
  const PiecewiseSignal sig = require_signal(o);
  const lab::ReconstructConfig cfg = resolve(o);
  const auto rows = lab::convergence_study(sig, o.Ns, cfg);
  std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("--out-dir: cannot create '" + o.out_dir + "'");
  for (const auto& row : rows) {
    report_notes(row.report, err);
    std::ostringstream ss;
    io::write_report(ss, row.report, run_echo("study", o, row.report.config));
    io::write_file((dir / (o.signal + "_N" + std::to_string(row.N) + ".csv")).string(), ss.str());
  }
  io::ConfigEcho e = run_echo("study", o, cfg);
  e.erase(std::remove_if(e.begin(), e.end(), [](const auto& kv) { return kv.first == "n"; }), e.end());
  e.emplace_back("ns", join_ints(o.Ns));
  e.emplace_back("loss_threshold", io::format_real(o.loss_threshold));
  std::ostringstream ss;
  io::write_study_summary(ss, rows, e);
  io::write_file((dir / "summary.csv").string(), ss.str());
  if (!o.out.empty()) emit(o, out, ss.str());
}

void cmd_table31(const Options& o, std::ostream& out) {
  if (o.Ns.empty()) throw ConfigError("--ns: N-list must not be empty");
  if (o.gammas.empty()) throw ConfigError("--gammas: list must not be empty");
  const PiecewiseSignal sig = builtin_signal("f1").value();
  const double x0 = kPi;
  Options base = o;
  base.signal = "f1";
  base.p_policy = "power";
  base.mode = "spectral";
  base.normalization = "off";
  std::ostringstream body;
  body << "gamma,N,p,predicted_x,measured_x\n";
  io::ConfigEcho e;
  for (double gamma : o.gammas) {
    for (int N : o.Ns) {
      Options cell = base;
      cell.gamma = gamma;
      cell.N = N;
      lab::ReconstructConfig cfg = resolve(cell);
      if (e.empty()) {
        e = run_echo("table31", cell, cfg);
        e.erase(std::remove_if(e.begin(), e.end(), [](const auto& kv) {
                  return kv.first == "n" || kv.first == "gamma";
                }), e.end());
        e.emplace_back("ns", join_ints(o.Ns));
        e.emplace_back("gammas", join_reals(o.gammas));
        e.emplace_back("loss_threshold", io::format_real(o.loss_threshold));
      }
      std::vector<double> xs;
      for (double x : cfg.x_grid)
        if (x >= 0.5 * kPi - 1e-12 && x < x0) xs.push_back(x);
      cfg.x_grid = xs;
      const auto rep = lab::reconstruct(sig, cfg);
      const auto onset = lab::loss_onset(rep.x, rep.error, sig.edges(), o.loss_threshold);
      body << io::format_real(gamma) << ',' << N << ','
           << degree_for(cfg.policy.degree, 1.0, N) << ','
           << io::format_real(lab::predicted_loss_location(N, gamma, x0)) << ','
           << io::format_real(onset ? *onset : std::nan("")) << '\n';
    }
  }
  std::ostringstream ss;
  io::write_echo(ss, e);
  ss << body.str();
  emit(o, out, ss.str());
}

void cmd_detect_edges(const Options& o, std::ostream& out, std::ostream& err) {
  SpectralCoefficients c;
  if (!o.coefficients_path.empty())
    c = io::read_coefficients_file(o.coefficients_path);
  else
    c = compute_coefficients(require_signal(o), o.N);
  const auto det = lab::detect_edges_naive(c, o.edge_threshold);
  if (!det.warning.empty()) err << "warning: " << det.warning << '\n';
  io::ConfigEcho e = base_echo("detect-edges", o);
  e.emplace_back("n", std::to_string(c.N));
  e.emplace_back("edge_threshold", io::format_real(o.edge_threshold));
  std::ostringstream ss;
  io::write_echo(ss, e);
  ss << "edge\n";
  for (double x : det.edges) ss << io::format_real(x) << '\n';
  emit(o, out, ss.str());
}

void add_options(CLI::App& app, Options& o) {
  app.set_config("--config", "", "Key-value configuration file; flags override its values");
  app.add_option("--signal", o.signal, "Built-in signal: f1, f2, sin, smooth");
  app.add_option("--coefficients", o.coefficients_path, "Input coefficient CSV (k,re,im)");
  app.add_option("--samples", o.samples_path, "Input sample CSV (nu,y,value)");
  app.add_option("--edges", o.edges, "Jump locations for user data")->delimiter(',')->each([&o](const std::string&) { o.edges_given = true; });
  app.add_option("--n", o.N, "Number of modes N")->check(CLI::Range(1, 1 << 20));
  app.add_option("--ns", o.Ns, "N-list for study and table31")->delimiter(',');
  app.add_option("--mode", o.mode, "spectral | discrete");
  app.add_option("--p-policy", o.p_policy, "adaptive | power");
  app.add_option("--kappa", o.kappa, "Adaptive degree factor, p = kappa theta N");
  app.add_option("--gamma", o.gamma, "Power degree exponent, p = N^gamma");
  app.add_option("--gammas", o.gammas, "Exponent list for table31")->delimiter(',');
  app.add_option("--c", o.c, "Localizer constant");
  app.add_option("--normalization", o.normalization, "off | on");
  app.add_option("--norm-order", o.norm_order, "Normalization order (default 2 spectral, 4 discrete)");
  app.add_flag("--norm-adaptive", o.norm_adaptive, "Use order round(N d / pi) capped by --norm-order");
  app.add_option("--switch-radius", o.switch_radius, "Normalize where d(x) <= radius * pi / N");
  app.add_option("--theta", o.theta_mode, "nearest | custom");
  app.add_option("--theta-floor", o.theta_floor, "theta >= floor / N (default 0.25 spectral, 2 discrete)");
  app.add_option("--spacing", o.spacing, "Largest quadrature node spacing");
  app.add_option("--x-points", o.x_points, "Uniform evaluation grid size over [0, 2 pi)");
  app.add_option("--x", o.x_list, "Explicit evaluation points")->delimiter(',');
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--edge-threshold", o.edge_threshold, "Peak threshold for detect-edges");
  app.add_option("--loss-threshold", o.loss_threshold, "Error level marking loss of convergence");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--out-dir", o.out_dir, "Output directory for study");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Adaptive spectral mollification of piecewise-smooth periodic data", "mollify"};
  app.fallthrough();
  app.require_subcommand(1);
  add_options(app, o);
  auto* project = app.add_subcommand("project", "Write Fourier coefficients (k,re,im)");
  auto* sample = app.add_subcommand("sample", "Write equidistant samples (nu,y,value)");
  auto* recon = app.add_subcommand("reconstruct", "Mollified reconstruction with error split");
  auto* study = app.add_subcommand("study", "Convergence study over --ns");
  auto* table = app.add_subcommand("table31", "Loss-of-convergence locations for p = N^gamma");
  auto* detect = app.add_subcommand("detect-edges", "Naive concentration-sum edge detector");

  std::vector<std::string> storage{"mollify"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (project->parsed()) cmd_project(o, out);
    else if (sample->parsed()) cmd_sample(o, out);
    else if (recon->parsed()) cmd_reconstruct(o, out, err);
    else if (study->parsed()) cmd_study(o, out, err);
    else if (table->parsed()) cmd_table31(o, out);
    else if (detect->parsed()) cmd_detect_edges(o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  return kSuccess;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace mollify::cli
