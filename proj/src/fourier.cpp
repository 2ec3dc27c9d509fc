#include "mollify/fourier.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "mollify/constants.hpp"
#include "mollify/errors.hpp"

namespace mollify {

using cplx = std::complex<double>;

SpectralCoefficients::SpectralCoefficients(int degree, std::vector<cplx> coeffs)
    : N(degree), values(std::move(coeffs)) {
  if (N < 0) throw ConfigError("coefficient degree must be nonnegative");
  if (values.size() != static_cast<std::size_t>(2 * N + 1))
    throw ConfigError("expected " + std::to_string(2 * N + 1) + " coefficients, got " +
                      std::to_string(values.size()));
}

GridSamples::GridSamples(int degree, std::vector<double> samples)
    : N(degree), values(std::move(samples)) {
  if (N < 1) throw ConfigError("sample degree must be >= 1");
  if (values.size() != static_cast<std::size_t>(2 * N))
    throw ConfigError("expected " + std::to_string(2 * N) + " samples, got " +
                      std::to_string(values.size()));
}

double GridSamples::spacing() const { return kPi / static_cast<double>(N); }
double GridSamples::node(int nu) const { return static_cast<double>(nu) * kPi / static_cast<double>(N); }

namespace {

constexpr double kCoeffTolerance = 1e-13;
constexpr std::size_t kMaxPanels = std::size_t{1} << 23;
constexpr int kReseed = 32;

// acc[k + N] += w * e^{-ikx} for k = -N..N.
void accumulate_modes(std::vector<cplx>& acc, int N, double x, double w) {
  const cplx step = std::polar(1.0, -x);
  cplx v;
  for (int k = -N; k <= N; ++k) {
    if ((k + N) % kReseed == 0) v = std::polar(1.0, -static_cast<double>(k) * x);
    acc[static_cast<std::size_t>(k + N)] += w * v;
    v *= step;
  }
}

// Sum of g(x_j) e^{-ikx_j} over the nodes a + (2j+1) h, j < count, in blocks.
void accumulate_nodes(std::vector<cplx>& total, const Piece& piece, int N, double a, double h,
                      std::size_t first, std::size_t stride, std::size_t count) {
  constexpr std::size_t kBlock = 512;
  std::vector<cplx> block(total.size());
  for (std::size_t j0 = 0; j0 < count; j0 += kBlock) {
    std::fill(block.begin(), block.end(), cplx{});
    const std::size_t j1 = std::min(count, j0 + kBlock);
    for (std::size_t j = j0; j < j1; ++j) {
      const double x = a + static_cast<double>(first + stride * j) * h;
      accumulate_modes(block, N, x, piece.eval(x));
    }
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += block[i];
  }
}

}  // namespace

SpectralCoefficients compute_coefficients(const PiecewiseSignal& sig, int N) {
  if (N < 1) throw ConfigError("compute_coefficients: N must be >= 1");
  const std::size_t modes = static_cast<std::size_t>(2 * N + 1);
  std::vector<cplx> result(modes);

  for (std::size_t pi = 0; pi < sig.pieces().size(); ++pi) {
    const Piece& piece = sig.pieces()[pi];
    const double a = piece.begin;
    const double b = piece.end;
    const double fa = piece.eval(a);
    const double fb = piece.eval(b);
    const double scale = std::max({1.0, std::abs(fa), std::abs(fb)});

    // Trapezoid bookkeeping: ends holds (g(a) + g(b)), interior the running interior sum.
    std::vector<cplx> ends(modes);
    accumulate_modes(ends, N, a, fa);
    accumulate_modes(ends, N, b, fb);
    std::size_t n = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(std::ceil((b - a) * (N + 1))));
    std::vector<cplx> interior(modes);
    accumulate_nodes(interior, piece, N, a, (b - a) / static_cast<double>(n), 1, 1, n - 1);

    auto trapezoid = [&](std::size_t panels) {
      std::vector<cplx> t(modes);
      const double h = (b - a) / static_cast<double>(panels);
      for (std::size_t i = 0; i < modes; ++i) t[i] = h * (0.5 * ends[i] + interior[i]);
      return t;
    };
    std::vector<cplx> trap_prev = trapezoid(n);
    std::vector<cplx> simpson_prev;
    bool converged = false;
    int worst_k = 0;
    while (!converged) {
      if (2 * n > kMaxPanels)
        throw NumericalError("compute_coefficients: quadrature did not converge for k = " +
                             std::to_string(worst_k) + " on piece " + std::to_string(pi) + " [" +
                             std::to_string(a) + ", " + std::to_string(b) + ") of signal '" +
                             sig.name() + "'");
      const double h_new = (b - a) / static_cast<double>(2 * n);
      accumulate_nodes(interior, piece, N, a, h_new, 1, 2, n);
      n *= 2;
      std::vector<cplx> trap_now = trapezoid(n);
      std::vector<cplx> simp(modes);
      for (std::size_t i = 0; i < modes; ++i) simp[i] = (4.0 * trap_now[i] - trap_prev[i]) / 3.0;
      if (!simpson_prev.empty()) {
        double diff = 0.0;
        for (std::size_t i = 0; i < modes; ++i) {
          const double d = std::abs(simp[i] - simpson_prev[i]) / kTwoPi;
          if (d > diff) { diff = d; worst_k = static_cast<int>(i) - N; }
        }
        converged = diff < kCoeffTolerance * scale;
      }
      simpson_prev = std::move(simp);
      trap_prev = std::move(trap_now);
    }
    for (std::size_t i = 0; i < modes; ++i) result[i] += simpson_prev[i] / kTwoPi;
  }
  SpectralCoefficients c(N, std::move(result));
  c.real = true;
  return c;
}

GridSamples sample_signal(const PiecewiseSignal& sig, int N) {
  if (N < 1) throw ConfigError("sample_signal: N must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(2 * N));
  for (int nu = 0; nu < 2 * N; ++nu) v[static_cast<std::size_t>(nu)] = sig(nu * kPi / N);
  return GridSamples(N, std::move(v));
}

double dirichlet(int p, double y) {
  const double s = std::sin(0.5 * y);
  if (std::abs(s) < 1e-8) return (2.0 * p + 1.0) / kTwoPi;
  return std::sin((p + 0.5) * y) / (kTwoPi * s);
}

namespace {

cplx projection_sum(const SpectralCoefficients& c, double x) {
  const int N = c.N;
  const cplx step = std::polar(1.0, x);
  cplx v;
  cplx sum;
  for (int k = -N; k <= N; ++k) {
    if ((k + N) % kReseed == 0) v = std::polar(1.0, static_cast<double>(k) * x);
    sum += c[k] * v;
    v *= step;
  }
  return sum;
}

}  // namespace

double eval_projection(const SpectralCoefficients& c, double x) {
  const cplx s = projection_sum(c, x);
#ifndef NDEBUG
  if (c.real) {
    double mag = 0.0;
    for (const cplx& v : c.values) mag += std::abs(v);
    assert(std::abs(s.imag()) <= 1e-10 * std::max(1.0, mag));
  }
#endif
  return s.real();
}

std::vector<double> eval_projection(const SpectralCoefficients& c, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_projection(c, xs[i]);
  return out;
}

SpectralCoefficients interpolant_coefficients(const GridSamples& g) {
  const int N = g.N;
  if (N < 1) throw ConfigError("interpolant_coefficients: N must be >= 1");
  const int M = 2 * N;
  std::vector<cplx> roots(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) roots[static_cast<std::size_t>(m)] = std::polar(1.0, -kPi * m / N);
  std::vector<cplx> coeffs(static_cast<std::size_t>(2 * N + 1));
  for (int k = -N; k <= N; ++k) {
    cplx sum;
    for (int nu = 0; nu < M; ++nu) {
      const int m = ((k * nu) % M + M) % M;
      sum += g.values[static_cast<std::size_t>(nu)] * roots[static_cast<std::size_t>(m)];
    }
    sum /= static_cast<double>(M);
    if (k == -N || k == N) sum *= 0.5;
    coeffs[static_cast<std::size_t>(k + N)] = sum;
  }
  SpectralCoefficients c(N, std::move(coeffs));
  c.real = true;
  return c;
}

cplx monomial_coefficient(int r, int k) {
  if (r < 0 || r > 4) throw ConfigError("project_monomial: unsupported order " + std::to_string(r));
  const double pi2 = kPi * kPi;
  if (k == 0) {
    switch (r) {
      case 0: return 1.0;
      case 2: return pi2 / 3.0;
      case 4: return pi2 * pi2 / 5.0;
      default: return 0.0;
    }
  }
  const double kk = static_cast<double>(k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  switch (r) {
    case 0: return 0.0;
    case 1: return {0.0, sign / kk};
    case 2: return 2.0 * sign / (kk * kk);
    case 3: return {0.0, sign * (pi2 / kk - 6.0 / (kk * kk * kk))};
    default: return sign * (4.0 * pi2 / (kk * kk) - 24.0 / (kk * kk * kk * kk));
  }
}

MonomialProjection::MonomialProjection(int r, int N)
    : N_(N), mean_(monomial_coefficient(r, 0).real()),
      cos_coeffs_(static_cast<std::size_t>(std::max(N, 0))),
      sin_coeffs_(static_cast<std::size_t>(std::max(N, 0))) {
  if (N < 0) throw ConfigError("project_monomial: N must be nonnegative");
  for (int k = 1; k <= N; ++k) {
    const cplx ck = monomial_coefficient(r, k);
    // c_k e^{iky} + c_{-k} e^{-iky} with c_{-k} = conj(c_k).
    cos_coeffs_[static_cast<std::size_t>(k - 1)] = 2.0 * ck.real();
    sin_coeffs_[static_cast<std::size_t>(k - 1)] = -2.0 * ck.imag();
  }
}

double MonomialProjection::operator()(double y) const {
  double sum = mean_;
  const cplx step = std::polar(1.0, y);
  cplx v = step;
  for (int k = 1; k <= N_; ++k) {
    if (k % kReseed == 0) v = std::polar(1.0, static_cast<double>(k) * y);
    sum += cos_coeffs_[static_cast<std::size_t>(k - 1)] * v.real() +
           sin_coeffs_[static_cast<std::size_t>(k - 1)] * v.imag();
    v *= step;
  }
  return sum;
}

double project_monomial(int r, int N, double y) { return MonomialProjection(r, N)(y); }

}  // namespace mollify
