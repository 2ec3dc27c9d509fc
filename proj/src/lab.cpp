#include "mollify/lab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <thread>

#include "mollify/errors.hpp"
#include "mollify/quadrature.hpp"

namespace mollify::lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const Piece& piece_at(const PiecewiseSignal& sig, double y) {
  const auto& pieces = sig.pieces();
  for (const Piece& p : pieces)
    if (y >= p.begin && y < p.end) return p;
  return pieces.back();
}

// Sorted z-breakpoints in (lo, hi) where x - z crosses a piece boundary.
std::vector<double> breakpoints(const PiecewiseSignal& sig, double x, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (const Piece& p : sig.pieces()) {
    const double base = x - p.begin;
    const int m_lo = static_cast<int>(std::floor((base - hi) / kTwoPi)) - 1;
    const int m_hi = static_cast<int>(std::ceil((base - lo) / kTwoPi)) + 1;
    for (int m = m_lo; m <= m_hi; ++m) {
      const double z = base - kTwoPi * m;
      if (z > lo && z < hi) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14; }),
            out.end());
  return out;
}

// Integrates w(z) * f(x - z) over [lo, hi], using one-sided piece values on each segment.
template <typename W>
double integrate_against_signal(const PiecewiseSignal& sig, double x, double lo, double hi,
                                double spacing, W&& w) {
  const auto cuts = breakpoints(sig, x, lo, hi);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const double mid_y = x - 0.5 * (a + b);
    const double shift = reduce_angle(mid_y) - mid_y;
    const Piece& piece = piece_at(sig, mid_y + shift);
    const std::size_t n = quad::even_panels(b - a, spacing, 2);
    total += quad::simpson([&](double z) { return w(z) * piece.eval(x - z + shift); }, a, b, n);
  }
  return total;
}

double kernel_spacing(const MollifierKernel& kernel, const QuadratureOptions& opts) {
  return 2.0 * kernel.radius() / static_cast<double>(convolution_panels(kernel, opts));
}

}  // namespace

const char* to_string(DataMode m) { return m == DataMode::spectral ? "spectral" : "discrete"; }

double regularization_error(const PiecewiseSignal& sig, double x, const MollifierKernel& kernel,
                            const QuadratureOptions& opts) {
  const double r = kernel.radius();
  const double conv = integrate_against_signal(sig, x, -r, r, kernel_spacing(kernel, opts),
                                               [&](double z) { return kernel(z); });
  return conv - sig(x);
}

PointError decompose_spectral(const PiecewiseSignal& sig, const SpectralCoefficients& c, double x,
                              const MollifierKernel& kernel, const QuadratureOptions& opts) {
  PointError pe;
  pe.exact = sig(x);
  pe.recovered = mollify_spectral(c, x, kernel, opts);
  pe.error = pe.recovered - pe.exact;
  pe.regularization = regularization_error(sig, x, kernel, opts);
  pe.split = pe.error - pe.regularization;
  return pe;
}

PointError decompose_discrete(const PiecewiseSignal& sig, const GridSamples& g, double x,
                              const MollifierKernel& kernel, const QuadratureOptions& opts) {
  PointError pe;
  pe.exact = sig(x);
  pe.recovered = mollify_discrete(g, x, kernel);
  pe.error = pe.recovered - pe.exact;
  pe.regularization = regularization_error(sig, x, kernel, opts);
  pe.split = pe.error - pe.regularization;
  return pe;
}

PointError error_decomposition_spectral(const PiecewiseSignal& sig, int N, double x,
                                        const MollifierSpec& spec, const LocalizerConfig& cfg) {
  return decompose_spectral(sig, compute_coefficients(sig, N), x, MollifierKernel(spec, cfg));
}

PointError error_decomposition_discrete(const PiecewiseSignal& sig, int N, double x,
                                        const MollifierSpec& spec, const LocalizerConfig& cfg) {
  return decompose_discrete(sig, sample_signal(sig, N), x, MollifierKernel(spec, cfg));
}

double truncation_middle_form(const PiecewiseSignal& sig, const SpectralCoefficients& c, double x,
                              const MollifierKernel& kernel, double max_spacing) {
  const int N = c.N;
  const double r = kernel.radius();
  const std::size_t n = convolution_panels(kernel, QuadratureOptions{max_spacing});
  std::vector<double> psi_hat(static_cast<std::size_t>(N + 1));
  for (int k = 0; k <= N; ++k)
    psi_hat[static_cast<std::size_t>(k)] =
        quad::simpson([&](double z) { return kernel(z) * std::cos(k * z); }, -r, r, n) / kTwoPi;
  auto projected_psi = [&](double z) {
    double s = psi_hat[0];
    for (int k = 1; k <= N; ++k) s += 2.0 * psi_hat[static_cast<std::size_t>(k)] * std::cos(k * z);
    return s;
  };
  // (S_N f - f)(x - z) = S_N f(x - z) - f(x - z); the second part goes through the piecewise integrator.
  const auto cuts = breakpoints(sig, x, -kPi, kPi);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const double mid_y = x - 0.5 * (a + b);
    const double shift = reduce_angle(mid_y) - mid_y;
    const Piece& piece = piece_at(sig, mid_y + shift);
    const std::size_t m = quad::even_panels(b - a, max_spacing, 2);
    total += quad::simpson([&](double z) {
      const double diff = eval_projection(c, x - z) - piece.eval(x - z + shift);
      return diff * (kernel(z) - projected_psi(z));
    }, a, b, m);
  }
  return total;
}

double predicted_loss_location(int N, double gamma, double x0) {
  if (!(gamma > 0.0) || gamma > 1.0) throw ConfigError("predicted_loss_location: gamma must lie in (0, 1]");
  if (N < 1) throw ConfigError("predicted_loss_location: N must be positive");
  return x0 - std::pow(static_cast<double>(N), gamma) * kPi / static_cast<double>(N);
}

std::vector<double> uniform_grid(std::size_t points) {
  std::vector<double> xs(points);
  for (std::size_t j = 0; j < points; ++j)
    xs[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
  return xs;
}

void ReconstructConfig::validate() const {
  if (N < 2) throw ConfigError("N must be at least 2");
  if (x_grid.empty()) throw ConfigError("x-grid must not be empty");
  for (double x : x_grid)
    if (!std::isfinite(x)) throw ConfigError("x-grid contains a non-finite value");
  policy.degree.validate();
  localizer.validate();
  if (!(policy.theta.floor_scale > 0.0)) throw ConfigError("theta floor must be positive");
  if (!(quadrature.max_spacing > 0.0)) throw ConfigError("quadrature spacing must be positive");
  const NormalizationPolicy& np = policy.normalization;
  if (np.mode != NormMode::none) {
    if (!(np.switch_radius >= 0.0)) throw ConfigError("normalization switch radius must be >= 0");
    if (mode == DataMode::spectral && np.mode != NormMode::spectral)
      throw ConfigError("spectral data requires spectral normalization");
    if (mode == DataMode::discrete && np.mode != NormMode::discrete)
      throw ConfigError("grid data requires discrete normalization");
    if (np.mode == NormMode::spectral && np.order != 0 && np.order != 2)
      throw ConfigError("spectral normalization order must be 0 or 2");
    if (np.mode == NormMode::discrete && (np.order < 0 || np.order > 8))
      throw ConfigError("discrete normalization order must lie in 0..8");
  }
}

namespace {

MollifierKernel build_kernel(const MollifierSpec& spec, const ReconstructConfig& cfg, double x,
                             std::string& note) {
  switch (spec.norm_mode) {
    case NormMode::spectral: {
      const int r = spec.norm_order >= 2 ? 2 : 0;
      const auto norm = build_spectral_normalization(spec, cfg.localizer, cfg.N, r, cfg.quadrature);
      note = norm.note;
      return spectral_normalized_kernel(spec, cfg.localizer, norm);
    }
    case NormMode::discrete: {
      const auto norm = solve_discrete_normalization(spec, cfg.localizer, x, cfg.N, spec.norm_order);
      note = norm.note;
      return discrete_normalized_kernel(spec, cfg.localizer, norm);
    }
    case NormMode::none:
      break;
  }
  return MollifierKernel(spec, cfg.localizer);
}

// Runs body(i) for i in [0, n) on contiguous chunks; each index writes only its own slots.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  unsigned t = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  t = static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(t);
  auto run_chunk = [&](unsigned w) {
    const std::size_t lo = n * w / t;
    const std::size_t hi = n * (w + 1) / t;
    try {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (t == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned w = 0; w < t; ++w) pool.emplace_back(run_chunk, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

ErrorReport empty_report(const ReconstructConfig& cfg, bool with_exact) {
  ErrorReport rep;
  rep.config = cfg;
  rep.x = cfg.x_grid;
  const std::size_t n = cfg.x_grid.size();
  rep.recovered.assign(n, kNaN);
  rep.params.resize(n);
  if (with_exact) {
    rep.exact.assign(n, kNaN);
    rep.error.assign(n, kNaN);
    rep.regularization.assign(n, kNaN);
    rep.split.assign(n, kNaN);
  }
  return rep;
}

void collect_notes(ErrorReport& rep, const std::vector<std::string>& notes) {
  for (std::size_t i = 0; i < notes.size(); ++i)
    if (!notes[i].empty()) rep.notes.push_back("x=" + std::to_string(rep.x[i]) + ": " + notes[i]);
}

}  // namespace

ErrorReport reconstruct(const PiecewiseSignal& sig, const ReconstructConfig& cfg) {
  cfg.validate();
  ErrorReport rep = empty_report(cfg, true);
  std::vector<std::string> notes(rep.x.size());
  SpectralCoefficients coeffs;
  GridSamples samples;
  if (cfg.mode == DataMode::spectral)
    coeffs = compute_coefficients(sig, cfg.N);
  else
    samples = sample_signal(sig, cfg.N);
  parallel_for(rep.x.size(), cfg.threads, [&](std::size_t i) {
    const double x = rep.x[i];
    const MollifierSpec spec = choose_params(x, cfg.N, sig, cfg.policy);
    const MollifierKernel kernel = build_kernel(spec, cfg, x, notes[i]);
    const PointError pe = cfg.mode == DataMode::spectral
                              ? decompose_spectral(sig, coeffs, x, kernel, cfg.quadrature)
                              : decompose_discrete(sig, samples, x, kernel, cfg.quadrature);
    rep.params[i] = spec;
    rep.exact[i] = pe.exact;
    rep.recovered[i] = pe.recovered;
    rep.error[i] = pe.error;
    rep.regularization[i] = pe.regularization;
    rep.split[i] = pe.split;
  });
  collect_notes(rep, notes);
  return rep;
}

ErrorReport reconstruct(const SpectralCoefficients& c, std::span<const double> edges,
                        const ReconstructConfig& cfg_in) {
  ReconstructConfig cfg = cfg_in;
  cfg.N = c.N;
  cfg.mode = DataMode::spectral;
  cfg.validate();
  if (cfg.policy.theta.mode == ThetaPolicy::Mode::custom)
    throw ConfigError("custom theta requires a built-in signal");
  ErrorReport rep = empty_report(cfg, false);
  std::vector<std::string> notes(rep.x.size());
  parallel_for(rep.x.size(), cfg.threads, [&](std::size_t i) {
    const double x = rep.x[i];
    const MollifierSpec spec = choose_params(x, cfg.N, edges, cfg.policy);
    rep.params[i] = spec;
    rep.recovered[i] = mollify_spectral(c, x, build_kernel(spec, cfg, x, notes[i]), cfg.quadrature);
  });
  collect_notes(rep, notes);
  return rep;
}

ErrorReport reconstruct(const GridSamples& g, std::span<const double> edges,
                        const ReconstructConfig& cfg_in) {
  ReconstructConfig cfg = cfg_in;
  cfg.N = g.N;
  cfg.mode = DataMode::discrete;
  cfg.validate();
  if (cfg.policy.theta.mode == ThetaPolicy::Mode::custom)
    throw ConfigError("custom theta requires a built-in signal");
  ErrorReport rep = empty_report(cfg, false);
  std::vector<std::string> notes(rep.x.size());
  parallel_for(rep.x.size(), cfg.threads, [&](std::size_t i) {
    const double x = rep.x[i];
    const MollifierSpec spec = choose_params(x, cfg.N, edges, cfg.policy);
    rep.params[i] = spec;
    rep.recovered[i] = mollify_discrete(g, x, build_kernel(spec, cfg, x, notes[i]));
  });
  collect_notes(rep, notes);
  return rep;
}

double log10_error(double e) { return std::log10(std::max(std::abs(e), kErrorFloor)); }

std::optional<double> loss_onset(const std::vector<double>& x, const std::vector<double>& error,
                                 std::span<const double> edges, double threshold) {
  if (x.size() != error.size()) throw ConfigError("loss_onset: size mismatch");
  const double start = 0.5 * kPi;
  double stop = kTwoPi;
  for (double e : edges) {
    const double r = reduce_angle(e);
    if (r > start && r < stop) stop = r;
  }
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  for (std::size_t i : order) {
    if (x[i] < start - 1e-12 || x[i] >= stop) continue;
    if (distance_to_edge(edges, x[i]) < 1e-12) continue;
    if (std::abs(error[i]) > threshold) return x[i];
  }
  return std::nullopt;
}

LineFit fit_line(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) throw ConfigError("fit_line: size mismatch");
  LineFit fit;
  fit.points = u.size();
  if (u.size() < 2) return fit;
  const double n = static_cast<double>(u.size());
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0, suv = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  if (suu == 0.0) return fit;
  fit.slope = suv / suu;
  fit.intercept = mv - fit.slope * mu;
  fit.r2 = svv == 0.0 ? 1.0 : (suv * suv) / (suu * svv);
  return fit;
}

LineFit convergence_fit(const ErrorReport& report, std::span<const double> edges, double min_dN) {
  if (!report.has_exact()) throw ConfigError("convergence_fit: report has no exact values");
  const double N = static_cast<double>(report.config.N);
  std::vector<double> u, v;
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    const double dN = distance_to_edge(edges, report.x[i]) * N;
    if (dN < min_dN || !std::isfinite(report.error[i])) continue;
    u.push_back(std::sqrt(dN));
    v.push_back(log10_error(report.error[i]));
  }
  return fit_line(u, v);
}

std::vector<StudyRow> convergence_study(const PiecewiseSignal& sig, const std::vector<int>& Ns,
                                        const ReconstructConfig& base) {
  if (Ns.empty()) throw ConfigError("study: N-list must not be empty");
  if (!std::is_sorted(Ns.begin(), Ns.end())) throw ConfigError("study: N-list must be nondecreasing");
  std::vector<StudyRow> rows;
  for (int N : Ns) {
    ReconstructConfig cfg = base;
    cfg.N = N;
    StudyRow row;
    row.N = N;
    row.report = reconstruct(sig, cfg);
    for (std::size_t i = 0; i < row.report.x.size(); ++i)
      if (distance_to_edge(sig.edges(), row.report.x[i]) >= 0.25 * kPi - 1e-12)
        row.max_err_interior = std::max(row.max_err_interior, std::abs(row.report.error[i]));
    row.fit = convergence_fit(row.report, sig.edges());
    row.loss_onset_x = loss_onset(row.report.x, row.report.error, sig.edges());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> concentration_sum(const SpectralCoefficients& c, std::vector<double>* grid) {
  const int N = c.N;
  if (N < 8) throw ConfigError("edge detection requires N >= 8");
  const std::size_t M = 8 * static_cast<std::size_t>(N);
  const double factor = kPi / std::log(static_cast<double>(N));
  std::vector<double> out(M);
  if (grid) grid->resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(M);
    std::complex<double> s = 0.0;
    for (int k = 1; k <= N; ++k) {
      const std::complex<double> e = std::polar(1.0, k * x);
      s += c[k] * e - c[-k] * std::conj(e);
    }
    out[j] = std::abs(-factor * std::complex<double>(0.0, 1.0) * s);
    if (grid) (*grid)[j] = x;
  }
  return out;
}

EdgeDetection detect_edges_naive(const SpectralCoefficients& c, double threshold) {
  std::vector<double> grid;
  const std::vector<double> mag = concentration_sum(c, &grid);
  const std::size_t M = mag.size();
  EdgeDetection det;
  for (std::size_t j = 0; j < M; ++j) {
    const double prev = mag[(j + M - 1) % M];
    const double next = mag[(j + 1) % M];
    if (mag[j] > threshold && mag[j] >= prev && mag[j] > next) det.edges.push_back(grid[j]);
  }
  if (det.edges.empty()) det.warning = "no concentration peak above threshold";
  return det;
}

}  // namespace mollify::lab
