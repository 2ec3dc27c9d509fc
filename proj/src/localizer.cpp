#include "mollify/localizer.hpp"

#include <cmath>
#include <limits>

#include "mollify/constants.hpp"
#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"
#include "mollify/quadrature.hpp"

namespace mollify {

void LocalizerConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("localizer: c must be a positive finite number");
}

double rho_c(const LocalizerConfig& cfg, double y) {
  const double y2 = y * y;
  const double gap = y2 - kPi * kPi;
  if (gap >= 0.0) return 0.0;
  const double exponent = cfg.c * y2 / gap;
  // Below this exp() is subnormal or zero; cutting it off keeps rho monotone on [0, pi].
  static const double kMinExponent = std::log(std::numeric_limits<double>::min());
  if (exponent < kMinExponent) return 0.0;
  return std::exp(exponent);
}

double localized_dirichlet(const LocalizerConfig& cfg, int p, double theta, double y) {
  const double t = y / theta;
  if (std::abs(t) >= kPi) return 0.0;
  return rho_c(cfg, t) * dirichlet(p, t) / theta;
}

int support_panels(int p, int min_panels) {
  int n = 32 * (2 * p + 1);
  if (n < min_panels) n = min_panels;
  return n + (n % 2);
}

double raw_moment(const LocalizerConfig& cfg, int p, double theta, int s) {
  if (p < 0) throw ConfigError("raw_moment: p must be nonnegative");
  if (!(theta > 0.0) || theta > 1.0) throw ConfigError("raw_moment: theta must lie in (0, 1]");
  const double r = kPi * theta;
  auto integrand = [&](double y) {
    return std::pow(y, s) * localized_dirichlet(cfg, p, theta, y);
  };
  return quad::simpson(integrand, -r, r, static_cast<std::size_t>(support_panels(p)));
}

}  // namespace mollify
