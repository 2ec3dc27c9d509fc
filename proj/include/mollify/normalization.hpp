#pragma once

#include <string>
#include <vector>

#include "mollify/fourier.hpp"
#include "mollify/mollifier.hpp"

namespace mollify {

/// Unit-mass (order 0) or unit-mass plus vanishing projected second moment
/// (order 2) reshaping of psi for spectral data. Odd moments vanish by evenness.
struct SpectralNormalization {
  int requested_order = 0;
  int order = 0;
  double q0 = 1.0;
  double q2 = 0.0;
  /// Overall factor applied after the (1 + q2 t^2) prefactor.
  double scale = 1.0;
  std::string note;  // non-empty when the requested order was not honored
};

/// 1 / int psi. Throws NumericalError if |int psi| < 1e-6.
double spectral_q0(const MollifierSpec& spec, const LocalizerConfig& cfg);

/// q2 = -int S_N(z^2) psi / int S_N(z^2) (z/theta)^2 psi, trapezoidal rule at
/// spacing <= opts.max_spacing. Throws NumericalError if the denominator is below 1e-12.
double spectral_q2(const MollifierSpec& spec, const LocalizerConfig& cfg, int N,
                   const QuadratureOptions& opts = {});

/// r in {0, 2}; falls back to r = 0 (with a note) when the order-2 system is degenerate.
SpectralNormalization build_spectral_normalization(const MollifierSpec& spec,
                                                   const LocalizerConfig& cfg, int N, int r,
                                                   const QuadratureOptions& opts = {});

MollifierKernel spectral_normalized_kernel(const MollifierSpec& spec, const LocalizerConfig& cfg,
                                           const SpectralNormalization& norm);

double mollify_spectral_normalized(const SpectralCoefficients& c, double x,
                                   const MollifierSpec& spec, const LocalizerConfig& cfg, int r,
                                   const QuadratureOptions& opts = {});

/// Discrete moments of psi at x on the 2N-point grid, over support nodes only.
struct DiscreteMoments {
  /// plain[s] = sum z^s psi(z) h, s = 0..max_order.
  std::vector<double> plain;
  /// scaled[s] = sum (z/theta)^s psi(z) h; the Vandermonde entries a_alpha are scaled[alpha + 1].
  std::vector<double> scaled;
  std::size_t nodes = 0;
};

DiscreteMoments discrete_moments(const MollifierSpec& spec, const LocalizerConfig& cfg, double x,
                                 int grid_N, int max_order);

/// Polynomial prefactor q(t) = 1 + q_1 t + ... + q_r t^r and mass scale such that
/// the first r discrete moments of scale * q(z/theta) psi(z) vanish at x and its
/// discrete mass is one.
struct DiscreteNormalization {
  double x = 0.0;
  int requested_order = 0;
  int order = 0;
  std::vector<double> q;  // q_1..q_order
  double scale = 1.0;
  double condition = 1.0;
  std::string note;
};

DiscreteNormalization solve_discrete_normalization(const MollifierSpec& spec,
                                                   const LocalizerConfig& cfg, double x,
                                                   int grid_N, int r);

MollifierKernel discrete_normalized_kernel(const MollifierSpec& spec, const LocalizerConfig& cfg,
                                           const DiscreteNormalization& norm);

double mollify_discrete_normalized(const GridSamples& g, double x, const MollifierSpec& spec,
                                   const LocalizerConfig& cfg, int r);

/// Dense solve with partial pivoting; also returns the 1-norm condition number.
/// Throws NumericalError on an exactly singular matrix.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                                double* condition = nullptr);

}  // namespace mollify
