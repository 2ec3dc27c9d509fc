#pragma once

namespace mollify {

/// Gevrey-2 cut-off rho_c(y) = exp(c y^2 / (y^2 - pi^2)) on (-pi, pi).
struct LocalizerConfig {
  double c = 10.0;

  void validate() const;
};

double rho_c(const LocalizerConfig& cfg, double y);

/// psi_{p,theta}(y) = (1/theta) rho_c(y/theta) D_p(y/theta); zero for |y| >= pi theta.
double localized_dirichlet(const LocalizerConfig& cfg, int p, double theta, double y);

/// Panel count over the support [-pi theta, pi theta] that resolves degree p
/// (at least 32 panels per Dirichlet period), never fewer than min_panels.
int support_panels(int p, int min_panels = 1024);

/// int y^s psi_{p,theta}(y) dy over [-pi theta, pi theta] by composite Simpson.
double raw_moment(const LocalizerConfig& cfg, int p, double theta, int s);

}  // namespace mollify
