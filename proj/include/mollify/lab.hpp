#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mollify/fourier.hpp"
#include "mollify/mollifier.hpp"
#include "mollify/normalization.hpp"
#include "mollify/signals.hpp"

namespace mollify::lab {

enum class DataMode { spectral, discrete };

const char* to_string(DataMode m);

/// One evaluation point: recovered value and the split of its error.
/// `split` is the truncation term T in spectral mode and the aliasing term A in discrete mode.
struct PointError {
  double exact = 0.0;
  double recovered = 0.0;
  double error = 0.0;
  double regularization = 0.0;
  double split = 0.0;
};

/// (kernel * f)(x) - f(x) against the exact signal, Simpson panels split at piece boundaries.
double regularization_error(const PiecewiseSignal& sig, double x, const MollifierKernel& kernel,
                            const QuadratureOptions& opts = {});

PointError decompose_spectral(const PiecewiseSignal& sig, const SpectralCoefficients& c, double x,
                              const MollifierKernel& kernel, const QuadratureOptions& opts = {});
PointError decompose_discrete(const PiecewiseSignal& sig, const GridSamples& g, double x,
                              const MollifierKernel& kernel, const QuadratureOptions& opts = {});

/// Convenience forms that compute the data for N themselves (raw kernel).
PointError error_decomposition_spectral(const PiecewiseSignal& sig, int N, double x,
                                        const MollifierSpec& spec, const LocalizerConfig& cfg);
PointError error_decomposition_discrete(const PiecewiseSignal& sig, int N, double x,
                                        const MollifierSpec& spec, const LocalizerConfig& cfg);

/// T evaluated as (S_N f - f) * (psi - S_N psi) at x, by quadrature over the full period.
double truncation_middle_form(const PiecewiseSignal& sig, const SpectralCoefficients& c, double x,
                              const MollifierKernel& kernel, double max_spacing = kPi / 8000.0);

/// x0 - N^gamma * pi / N.
double predicted_loss_location(int N, double gamma, double x0);

/// x_j = 2 pi j / points, j = 0..points-1.
std::vector<double> uniform_grid(std::size_t points);

struct ReconstructConfig {
  DataMode mode = DataMode::spectral;
  int N = 128;
  ParamPolicy policy;
  LocalizerConfig localizer;
  QuadratureOptions quadrature;
  std::vector<double> x_grid = uniform_grid(300);
  /// 0 selects the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct ErrorReport {
  ReconstructConfig config;
  std::vector<double> x;
  std::vector<double> exact;
  std::vector<double> recovered;
  std::vector<double> error;
  std::vector<double> regularization;
  std::vector<double> split;  // truncation (spectral) or aliasing (discrete)
  std::vector<MollifierSpec> params;
  /// Normalization fallbacks and similar per-point remarks, as "x: message".
  std::vector<std::string> notes;

  bool has_exact() const { return !exact.empty(); }
};

/// Exact signal available: coefficients or samples are computed internally and
/// all columns including the split are filled.
ErrorReport reconstruct(const PiecewiseSignal& sig, const ReconstructConfig& cfg);

/// User data with declared edges: exact, error and split columns are NaN.
ErrorReport reconstruct(const SpectralCoefficients& c, std::span<const double> edges,
                        const ReconstructConfig& cfg);
ErrorReport reconstruct(const GridSamples& g, std::span<const double> edges,
                        const ReconstructConfig& cfg);

/// log10 |E| floored at machine truncation level.
double log10_error(double e);

/// First grid point x >= pi/2 with |E| > threshold, scanning upward and stopping
/// at the first edge above pi/2 (or 2 pi when there is none). Points lying on an
/// edge are skipped.
std::optional<double> loss_onset(const std::vector<double>& x, const std::vector<double>& error,
                                 std::span<const double> edges, double threshold = 1e-2);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

LineFit fit_line(const std::vector<double>& u, const std::vector<double>& v);

/// Fit of log10 |E| against sqrt(d(x) N) over points with d(x) N >= min_dN.
LineFit convergence_fit(const ErrorReport& report, std::span<const double> edges,
                        double min_dN = 20.0);

struct StudyRow {
  int N = 0;
  double max_err_interior = 0.0;  // over d(x) >= pi/4
  LineFit fit;
  std::optional<double> loss_onset_x;
  ErrorReport report;
};

std::vector<StudyRow> convergence_study(const PiecewiseSignal& sig, const std::vector<int>& Ns,
                                        const ReconstructConfig& base);

struct EdgeDetection {
  std::vector<double> edges;
  std::string warning;
};

/// (pi / log N) times the conjugate partial sum -sum sgn(k) i c_k e^{ikx} on 8N points.
std::vector<double> concentration_sum(const SpectralCoefficients& c, std::vector<double>* grid = nullptr);

/// Local maxima of the concentration sum magnitude above threshold.
EdgeDetection detect_edges_naive(const SpectralCoefficients& c, double threshold = 0.5);

}  // namespace mollify::lab
