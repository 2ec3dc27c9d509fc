#pragma once

#include <vector>

#include "mollify/constants.hpp"
#include "mollify/fourier.hpp"
#include "mollify/localizer.hpp"
#include "mollify/signals.hpp"

namespace mollify {

/// Rule for the Dirichlet degree p.
struct DegreePolicy {
  enum class Kind { adaptive, power };
  Kind kind = Kind::adaptive;
  /// kappa for adaptive (p = kappa theta N), gamma for power (p = N^gamma).
  double value = 0.60653065971263342;  // 1/sqrt(e)

  static DegreePolicy adaptive(double kappa) { return {Kind::adaptive, kappa}; }
  static DegreePolicy power(double gamma) { return {Kind::power, gamma}; }

  void validate() const;
};

enum class NormMode { none, spectral, discrete };

const char* to_string(NormMode m);

/// Normalization request; engaged only where d(x) <= switch_radius * pi / N.
struct NormalizationPolicy {
  NormMode mode = NormMode::none;
  int order = 0;
  double switch_radius = 0.0;
  /// Use r = clamp(round(N d(x) / pi), 1, order) instead of the fixed order.
  bool adaptive_order = false;

  static NormalizationPolicy off() { return {}; }
  static NormalizationPolicy spectral(int r = 2, double radius = 6.0) {
    return {NormMode::spectral, r, radius, false};
  }
  static NormalizationPolicy discrete(int r = 4, double radius = 4.0) {
    return {NormMode::discrete, r, radius, false};
  }
};

/// Everything choose_params needs besides x, N and the edges.
struct ParamPolicy {
  ThetaPolicy theta = ThetaPolicy::spectral_default();
  DegreePolicy degree;
  NormalizationPolicy normalization;
};

/// Per-point mollifier parameters.
struct MollifierSpec {
  double theta = 1.0;
  int p = 1;
  double distance = kPi;
  DegreePolicy p_policy;
  /// NormMode::none unless normalization is engaged at this point.
  NormMode norm_mode = NormMode::none;
  int norm_order = 0;
  double switch_radius = 0.0;

  double radius() const { return kPi * theta; }
};

/// round-half-away-from-zero, clamped to [1, N].
int degree_for(const DegreePolicy& policy, double theta, int N);

MollifierSpec choose_params(double x, int N, const PiecewiseSignal& sig, const ParamPolicy& policy);
MollifierSpec choose_params(double x, int N, std::span<const double> edges, const ParamPolicy& policy);

double psi_eval(const MollifierSpec& spec, const LocalizerConfig& cfg, double y);

/// psi_{p,theta}(z) optionally reshaped by a polynomial prefactor in t = z / theta
/// and an overall scale: scale * (1 + q_1 t + ... + q_r t^r) * psi(z).
class MollifierKernel {
 public:
  MollifierKernel(const MollifierSpec& spec, const LocalizerConfig& cfg);
  MollifierKernel(const MollifierSpec& spec, const LocalizerConfig& cfg, std::vector<double> q,
                  double scale);

  double operator()(double z) const;
  double base(double z) const;  // psi without prefactor or scale
  double prefactor(double z) const;

  double radius() const { return radius_; }
  int p() const { return p_; }
  double theta() const { return theta_; }
  double scale() const { return scale_; }
  const std::vector<double>& q() const { return q_; }

 private:
  LocalizerConfig cfg_;
  int p_;
  double theta_;
  double radius_;
  std::vector<double> q_;  // q_1..q_r
  double scale_ = 1.0;
};

struct QuadratureOptions {
  /// Largest Simpson node spacing for the continuous convolution.
  double max_spacing = kPi / 8000.0;
};

/// Simpson panel count over the kernel support.
std::size_t convolution_panels(const MollifierKernel& kernel, const QuadratureOptions& opts);

/// int kernel(x - y) S_N f(y) dy over the kernel support.
double mollify_spectral(const SpectralCoefficients& c, double x, const MollifierKernel& kernel,
                        const QuadratureOptions& opts = {});
double mollify_spectral(const SpectralCoefficients& c, double x, const MollifierSpec& spec,
                        const LocalizerConfig& cfg, const QuadratureOptions& opts = {});

/// Kernel mass int kernel(z) dz with the same quadrature as mollify_spectral.
double kernel_mass(const MollifierKernel& kernel, const QuadratureOptions& opts = {});

/// A grid node inside the kernel support: sample index and z = x - y (unwrapped).
struct SupportNode {
  int index;
  double z;
};

/// Grid nodes y_nu = nu pi / N with |x - y_nu| < radius (periodically).
std::vector<SupportNode> support_nodes(int N, double x, double radius);

/// (pi/N) sum over support nodes of f(y_nu) kernel(x - y_nu).
/// Throws NumericalError when fewer than two nodes fall in the support.
double mollify_discrete(const GridSamples& g, double x, const MollifierKernel& kernel);
double mollify_discrete(const GridSamples& g, double x, const MollifierSpec& spec,
                        const LocalizerConfig& cfg);

}  // namespace mollify
