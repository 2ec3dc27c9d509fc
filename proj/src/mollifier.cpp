#include "mollify/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "mollify/errors.hpp"
#include "mollify/quadrature.hpp"

namespace mollify {

void DegreePolicy::validate() const {
  if (kind == Kind::adaptive && !(value > 0.0 && value < 1.0))
    throw ConfigError("adaptive degree: kappa must lie in (0, 1)");
  if (kind == Kind::power && !(value > 0.0 && value <= 1.0))
    throw ConfigError("power degree: gamma must lie in (0, 1]");
}

const char* to_string(NormMode m) {
  switch (m) {
    case NormMode::spectral: return "spectral";
    case NormMode::discrete: return "discrete";
    default: return "none";
  }
}

int degree_for(const DegreePolicy& policy, double theta, int N) {
  const double raw = policy.kind == DegreePolicy::Kind::adaptive
                         ? policy.value * theta * static_cast<double>(N)
                         : std::pow(static_cast<double>(N), policy.value);
  const long p = std::lround(raw);
  return static_cast<int>(std::clamp<long>(p, 1, std::max(1, N)));
}

namespace {

MollifierSpec finish_spec(double theta, double distance, int N, const ParamPolicy& policy) {
  MollifierSpec spec;
  spec.theta = theta;
  spec.distance = distance;
  spec.p_policy = policy.degree;
  spec.p = degree_for(policy.degree, theta, N);
  const NormalizationPolicy& norm = policy.normalization;
  spec.switch_radius = norm.switch_radius;
  if (norm.mode != NormMode::none && norm.order > 0 &&
      distance <= norm.switch_radius * kPi / static_cast<double>(N)) {
    spec.norm_mode = norm.mode;
    spec.norm_order = norm.order;
    if (norm.adaptive_order) {
      const long r = std::lround(static_cast<double>(N) * distance / kPi);
      spec.norm_order = static_cast<int>(std::clamp<long>(r, 1, norm.order));
    }
  }
  return spec;
}

}  // namespace

MollifierSpec choose_params(double x, int N, const PiecewiseSignal& sig, const ParamPolicy& policy) {
  policy.degree.validate();
  return finish_spec(theta_of(policy.theta, sig, x, N), distance_to_edge(sig.edges(), x), N, policy);
}

MollifierSpec choose_params(double x, int N, std::span<const double> edges,
                            const ParamPolicy& policy) {
  policy.degree.validate();
  return finish_spec(theta_of(policy.theta, edges, x, N), distance_to_edge(edges, x), N, policy);
}

double psi_eval(const MollifierSpec& spec, const LocalizerConfig& cfg, double y) {
  return localized_dirichlet(cfg, spec.p, spec.theta, y);
}

MollifierKernel::MollifierKernel(const MollifierSpec& spec, const LocalizerConfig& cfg)
    : cfg_(cfg), p_(spec.p), theta_(spec.theta), radius_(spec.radius()) {
  cfg_.validate();
  if (!(theta_ > 0.0) || theta_ > 1.0) throw ConfigError("mollifier: theta must lie in (0, 1]");
  if (p_ < 0) throw ConfigError("mollifier: p must be nonnegative");
}

MollifierKernel::MollifierKernel(const MollifierSpec& spec, const LocalizerConfig& cfg,
                                 std::vector<double> q, double scale)
    : MollifierKernel(spec, cfg) {
  q_ = std::move(q);
  scale_ = scale;
}

double MollifierKernel::base(double z) const { return localized_dirichlet(cfg_, p_, theta_, z); }

double MollifierKernel::prefactor(double z) const {
  if (q_.empty()) return 1.0;
  const double t = z / theta_;
  double acc = 0.0;
  for (auto it = q_.rbegin(); it != q_.rend(); ++it) acc = (acc + *it) * t;
  return 1.0 + acc;
}

double MollifierKernel::operator()(double z) const {
  const double b = base(z);
  if (b == 0.0) return 0.0;
  return scale_ * prefactor(z) * b;
}

std::size_t convolution_panels(const MollifierKernel& kernel, const QuadratureOptions& opts) {
  if (!(opts.max_spacing > 0.0)) throw ConfigError("quadrature spacing must be positive");
  return quad::even_panels(2.0 * kernel.radius(), opts.max_spacing,
                           static_cast<std::size_t>(support_panels(kernel.p(), 64)));
}

namespace {

// Re S_N f(y) using conjugate symmetry when the data is real.
class ProjectionSampler {
 public:
  explicit ProjectionSampler(const SpectralCoefficients& c) : c_(c) {}

  double operator()(double y) const {
    if (!c_.real) return eval_projection(c_, y);
    const std::complex<double> step = std::polar(1.0, y);
    std::complex<double> v = step;
    double sum = c_[0].real();
    for (int k = 1; k <= c_.N; ++k) {
      if (k % 32 == 0) v = std::polar(1.0, static_cast<double>(k) * y);
      const std::complex<double> ck = c_[k];
      sum += 2.0 * (ck.real() * v.real() - ck.imag() * v.imag());
      v *= step;
    }
    return sum;
  }

 private:
  const SpectralCoefficients& c_;
};

}  // namespace

double mollify_spectral(const SpectralCoefficients& c, double x, const MollifierKernel& kernel,
                        const QuadratureOptions& opts) {
  const ProjectionSampler sample(c);
  const double r = kernel.radius();
  const std::size_t n = convolution_panels(kernel, opts);
  return quad::simpson([&](double y) {
    const double w = kernel(x - y);
    return w == 0.0 ? 0.0 : w * sample(y);
  }, x - r, x + r, n);
}

double mollify_spectral(const SpectralCoefficients& c, double x, const MollifierSpec& spec,
                        const LocalizerConfig& cfg, const QuadratureOptions& opts) {
  return mollify_spectral(c, x, MollifierKernel(spec, cfg), opts);
}

double kernel_mass(const MollifierKernel& kernel, const QuadratureOptions& opts) {
  const double r = kernel.radius();
  return quad::simpson(kernel, -r, r, convolution_panels(kernel, opts));
}

std::vector<SupportNode> support_nodes(int N, double x, double radius) {
  if (N < 1) throw ConfigError("support_nodes: N must be >= 1");
  const double h = kPi / static_cast<double>(N);
  const int M = 2 * N;
  const double xr = reduce_angle(x);
  std::vector<SupportNode> nodes;
  const auto lo = static_cast<long>(std::floor((xr - radius) / h));
  const auto hi = static_cast<long>(std::ceil((xr + radius) / h));
  for (long m = lo; m <= hi; ++m) {
    const double z = xr - static_cast<double>(m) * h;
    if (std::abs(z) >= radius) continue;
    const int idx = static_cast<int>(((m % M) + M) % M);
    nodes.push_back({idx, z});
  }
  return nodes;
}

double mollify_discrete(const GridSamples& g, double x, const MollifierKernel& kernel) {
  const auto nodes = support_nodes(g.N, x, kernel.radius());
  if (nodes.size() < 2)
    throw NumericalError("mollify_discrete: degenerate window with " + std::to_string(nodes.size()) +
                         " node(s) at x = " + std::to_string(x));
  const double h = g.spacing();
  double sum = 0.0;
  for (const SupportNode& nd : nodes) sum += g.values[static_cast<std::size_t>(nd.index)] * kernel(nd.z);
  return h * sum;
}

double mollify_discrete(const GridSamples& g, double x, const MollifierSpec& spec,
                        const LocalizerConfig& cfg) {
  return mollify_discrete(g, x, MollifierKernel(spec, cfg));
}

}  // namespace mollify
