#pragma once

#include <complex>
#include <vector>

#include "mollify/signals.hpp"

namespace mollify {

/// Fourier coefficients f_k for k = -N..N, stored at index k + N.
struct SpectralCoefficients {
  int N = 0;
  std::vector<std::complex<double>> values;
  /// Set when the coefficients come from real data (f_{-k} = conj f_k).
  bool real = false;

  SpectralCoefficients() = default;
  SpectralCoefficients(int degree, std::vector<std::complex<double>> coeffs);

  std::complex<double> operator[](int k) const { return values[static_cast<std::size_t>(k + N)]; }
  std::complex<double>& operator[](int k) { return values[static_cast<std::size_t>(k + N)]; }
};

/// 2N equidistant samples values[nu] = f(nu * pi / N).
struct GridSamples {
  int N = 0;
  std::vector<double> values;

  GridSamples() = default;
  GridSamples(int degree, std::vector<double> samples);

  double spacing() const;
  double node(int nu) const;
};

/// f_k = (1/2pi) int f(x) e^{-ikx} dx, piece by piece with adaptive composite
/// Simpson (panel doubling until successive results agree to 1e-13).
/// Throws NumericalError naming k and the piece on non-convergence.
SpectralCoefficients compute_coefficients(const PiecewiseSignal& sig, int N);

GridSamples sample_signal(const PiecewiseSignal& sig, int N);

/// D_p(y) = sin((p + 1/2) y) / (2 pi sin(y/2)), series value (2p+1)/(2pi) near y = 0 mod 2pi.
double dirichlet(int p, double y);

/// Re S_N f(x).
double eval_projection(const SpectralCoefficients& c, double x);

/// Re S_N f at many points; same summation as eval_projection.
std::vector<double> eval_projection(const SpectralCoefficients& c, const std::vector<double>& xs);

/// Discrete Fourier coefficients of 2N samples, with the aliased k = +-N modes halved
/// so that the trigonometric sum interpolates every sample.
SpectralCoefficients interpolant_coefficients(const GridSamples& g);

/// Closed-form Fourier coefficient of the periodic extension of y^r, r in 0..4.
std::complex<double> monomial_coefficient(int r, int k);

/// S_N applied to the periodic extension of y^r, r in 0..4.
double project_monomial(int r, int N, double y);

/// Precomputed real cosine/sine tables for repeated evaluation of S_N(y^r).
class MonomialProjection {
 public:
  MonomialProjection(int r, int N);
  double operator()(double y) const;

 private:
  int N_;
  double mean_;
  std::vector<double> cos_coeffs_;  // multiplies cos(ky), k = 1..N
  std::vector<double> sin_coeffs_;  // multiplies sin(ky), k = 1..N
};

}  // namespace mollify
