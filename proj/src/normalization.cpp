#include "mollify/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mollify/errors.hpp"
#include "mollify/quadrature.hpp"

namespace mollify {

namespace {

constexpr double kMinMass = 1e-6;
constexpr double kMinQ2Denominator = 1e-12;
constexpr double kMaxCondition = 1e12;
constexpr double kMomentTolerance = 1e-10;

}  // namespace

double spectral_q0(const MollifierSpec& spec, const LocalizerConfig& cfg) {
  const double mass = raw_moment(cfg, spec.p, spec.theta, 0);
  if (std::abs(mass) < kMinMass)
    throw NumericalError("spectral_q0: degenerate kernel mass " + std::to_string(mass));
  return 1.0 / mass;
}

double spectral_q2(const MollifierSpec& spec, const LocalizerConfig& cfg, int N,
                   const QuadratureOptions& opts) {
  const MollifierKernel kernel(spec, cfg);
  const MonomialProjection square(2, N);
  const double r = kernel.radius();
  const std::size_t n = convolution_panels(kernel, opts);
  const double theta = spec.theta;
  const double num = quad::trapezoid([&](double z) { return square(z) * kernel.base(z); }, -r, r, n);
  const double den = quad::trapezoid([&](double z) {
    const double t = z / theta;
    return square(z) * t * t * kernel.base(z);
  }, -r, r, n);
  if (std::abs(den) < kMinQ2Denominator)
    throw NumericalError("spectral_q2: ill-conditioned normalization, denominator " +
                         std::to_string(den));
  return -num / den;
}

SpectralNormalization build_spectral_normalization(const MollifierSpec& spec,
                                                   const LocalizerConfig& cfg, int N, int r,
                                                   const QuadratureOptions& opts) {
  if (r != 0 && r != 2) throw ConfigError("spectral normalization supports order 0 or 2");
  SpectralNormalization out;
  out.requested_order = r;
  out.q0 = spectral_q0(spec, cfg);
  out.scale = out.q0;
  if (r == 0) return out;
  try {
    const double q2 = spectral_q2(spec, cfg, N, opts);
    const MollifierKernel shaped(spec, cfg, {0.0, q2}, 1.0);
    const double mass = kernel_mass(shaped, opts);
    if (std::abs(mass) < kMinMass)
      throw NumericalError("spectral normalization: reshaped kernel mass " + std::to_string(mass));
    out.order = 2;
    out.q2 = q2;
    out.scale = 1.0 / mass;
  } catch (const NumericalError& e) {
    out.note = std::string(e.what()) + "; using order 0";
  }
  return out;
}

MollifierKernel spectral_normalized_kernel(const MollifierSpec& spec, const LocalizerConfig& cfg,
                                           const SpectralNormalization& norm) {
  if (norm.order == 2) return MollifierKernel(spec, cfg, {0.0, norm.q2}, norm.scale);
  return MollifierKernel(spec, cfg, {}, norm.scale);
}

double mollify_spectral_normalized(const SpectralCoefficients& c, double x,
                                   const MollifierSpec& spec, const LocalizerConfig& cfg, int r,
                                   const QuadratureOptions& opts) {
  const SpectralNormalization norm = build_spectral_normalization(spec, cfg, c.N, r, opts);
  return mollify_spectral(c, x, spectral_normalized_kernel(spec, cfg, norm), opts);
}

DiscreteMoments discrete_moments(const MollifierSpec& spec, const LocalizerConfig& cfg, double x,
                                 int grid_N, int max_order) {
  if (max_order < 0) throw ConfigError("discrete_moments: order must be nonnegative");
  const MollifierKernel kernel(spec, cfg);
  const auto nodes = support_nodes(grid_N, x, kernel.radius());
  const double h = kPi / static_cast<double>(grid_N);
  DiscreteMoments m;
  m.plain.assign(static_cast<std::size_t>(max_order + 1), 0.0);
  m.scaled.assign(static_cast<std::size_t>(max_order + 1), 0.0);
  m.nodes = nodes.size();
  for (const SupportNode& nd : nodes) {
    const double w = kernel.base(nd.z) * h;
    const double t = nd.z / spec.theta;
    double zp = 1.0;
    double tp = 1.0;
    for (int s = 0; s <= max_order; ++s) {
      m.plain[static_cast<std::size_t>(s)] += zp * w;
      m.scaled[static_cast<std::size_t>(s)] += tp * w;
      zp *= nd.z;
      tp *= t;
    }
  }
  return m;
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                                double* condition) {
  const std::size_t n = b.size();
  double norm_a = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i][j]);
    norm_a = std::max(norm_a, col);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  // LU factorization in place.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw NumericalError("solve_dense: singular matrix");
    std::swap(a[k], a[piv]);
    std::swap(perm[k], perm[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      a[i][k] /= a[k][k];
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= a[i][k] * a[k][j];
    }
  }
  auto lu_solve = [&](const std::vector<double>& rhs) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = rhs[perm[i]];
      for (std::size_t j = 0; j < i; ++j) s -= a[i][j] * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * y[j];
      y[i] = s / a[i][i];
    }
    return y;
  };
  if (condition) {
    double norm_inv = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      const auto col = lu_solve(e);
      double s = 0.0;
      for (double v : col) s += std::abs(v);
      norm_inv = std::max(norm_inv, s);
    }
    *condition = norm_a * norm_inv;
  }
  return lu_solve(b);
}

namespace {

// Discrete moments of scale * q(t) psi in z-units, s = 0..order.
std::vector<double> normalized_moments(const MollifierKernel& kernel, double x, int grid_N,
                                       int order) {
  const auto nodes = support_nodes(grid_N, x, kernel.radius());
  const double h = kPi / static_cast<double>(grid_N);
  std::vector<double> m(static_cast<std::size_t>(order + 1), 0.0);
  for (const SupportNode& nd : nodes) {
    const double w = kernel(nd.z) * h;
    double zp = 1.0;
    for (int s = 0; s <= order; ++s) {
      m[static_cast<std::size_t>(s)] += zp * w;
      zp *= nd.z;
    }
  }
  return m;
}

}  // namespace

DiscreteNormalization solve_discrete_normalization(const MollifierSpec& spec,
                                                   const LocalizerConfig& cfg, double x,
                                                   int grid_N, int r) {
  if (r < 0) throw ConfigError("discrete normalization: order must be nonnegative");
  DiscreteNormalization out;
  out.x = x;
  out.requested_order = r;
  const DiscreteMoments mom = discrete_moments(spec, cfg, x, grid_N, 2 * r);
  auto add_note = [&](const std::string& s) {
    if (!out.note.empty()) out.note += "; ";
    out.note += s;
  };

  int order = r;
  if (mom.nodes < static_cast<std::size_t>(order + 1)) {
    order = std::max(0, static_cast<int>(mom.nodes) - 1);
    add_note("only " + std::to_string(mom.nodes) + " support nodes; order reduced to " +
             std::to_string(order));
  }
  for (; order >= 1; --order) {
    const auto n = static_cast<std::size_t>(order);
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    std::vector<double> b(n);
    for (std::size_t s = 1; s <= n; ++s) {
      for (std::size_t j = 1; j <= n; ++j) a[s - 1][j - 1] = mom.scaled[s + j];
      b[s - 1] = -mom.scaled[s];
    }
    double cond = 0.0;
    std::vector<double> q;
    try {
      q = solve_dense(a, b, &cond);
    } catch (const NumericalError&) {
      cond = INFINITY;
    }
    if (!(cond <= kMaxCondition)) {
      add_note("order " + std::to_string(order) + " system ill-conditioned (cond " +
               std::to_string(cond) + ")");
      continue;
    }
    const MollifierKernel shaped(spec, cfg, q, 1.0);
    const double mass = normalized_moments(shaped, x, grid_N, 0)[0];
    if (std::abs(mass) < kMinMass) {
      add_note("order " + std::to_string(order) + " reshaped mass degenerate");
      continue;
    }
    const MollifierKernel final_kernel(spec, cfg, q, 1.0 / mass);
    const auto check = normalized_moments(final_kernel, x, grid_N, order);
    bool ok = std::abs(check[0] - 1.0) <= kMomentTolerance;
    for (int s = 1; s <= order && ok; ++s) ok = std::abs(check[static_cast<std::size_t>(s)]) <= kMomentTolerance;
    if (!ok) {
      add_note("order " + std::to_string(order) + " moment check failed");
      continue;
    }
    out.order = order;
    out.q = std::move(q);
    out.scale = 1.0 / mass;
    out.condition = cond;
    return out;
  }
  // Order zero: unit discrete mass only.
  const double mass = mom.plain[0];
  if (std::abs(mass) < kMinMass)
    throw NumericalError("discrete normalization: degenerate kernel mass at x = " + std::to_string(x));
  out.order = 0;
  out.scale = 1.0 / mass;
  return out;
}

MollifierKernel discrete_normalized_kernel(const MollifierSpec& spec, const LocalizerConfig& cfg,
                                           const DiscreteNormalization& norm) {
  return MollifierKernel(spec, cfg, norm.q, norm.scale);
}

double mollify_discrete_normalized(const GridSamples& g, double x, const MollifierSpec& spec,
                                   const LocalizerConfig& cfg, int r) {
  const DiscreteNormalization norm = solve_discrete_normalization(spec, cfg, x, g.N, r);
  return mollify_discrete(g, x, discrete_normalized_kernel(spec, cfg, norm));
}

}  // namespace mollify
