#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "mollify/constants.hpp"
#include "mollify/errors.hpp"
#include "mollify/normalization.hpp"
#include "mollify/quadrature.hpp"

using namespace mollify;

namespace {

const LocalizerConfig kCfg;

MollifierSpec make_spec(double theta, int p) {
  MollifierSpec s;
  s.theta = theta;
  s.p = p;
  return s;
}

ParamPolicy discrete_policy(int r) {
  ParamPolicy pol;
  pol.theta = ThetaPolicy::discrete_default();
  pol.normalization = NormalizationPolicy::discrete(r);
  return pol;
}

ParamPolicy spectral_policy() {
  ParamPolicy pol;
  pol.normalization = NormalizationPolicy::spectral();
  return pol;
}

// Independent evaluation of psi for the oracle.
double psi_ref(int p, double theta, double z) {
  const double y = z / theta;
  if (std::abs(y) >= kPi) return 0.0;
  const double rho = std::exp(10.0 * y * y / (y * y - kPi * kPi));
  const double s = std::sin(0.5 * y);
  const double d = std::abs(s) < 1e-8 ? (2 * p + 1) / kTwoPi : std::sin((p + 0.5) * y) / (kTwoPi * s);
  return rho * d / theta;
}

// Least-squares solution of sum_nu t^s (1 + sum_j q_j t^j) w_nu = 0, s = 1..r.
Eigen::VectorXd oracle_q(int N, double x, double theta, int p, int r) {
  const double h = kPi / N;
  std::vector<double> t, w;
  for (int m = -4 * N; m <= 4 * N; ++m) {
    const double z = x - m * h;
    if (std::abs(z) < kPi * theta) {
      t.push_back(z / theta);
      w.push_back(psi_ref(p, theta, z) * h);
    }
  }
  Eigen::MatrixXd A(r, r);
  Eigen::VectorXd b(r);
  for (int s = 1; s <= r; ++s) {
    b(s - 1) = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) b(s - 1) -= std::pow(t[i], s) * w[i];
    for (int j = 1; j <= r; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) acc += std::pow(t[i], s + j) * w[i];
      A(s - 1, j - 1) = acc;
    }
  }
  return A.colPivHouseholderQr().solve(b);
}

std::vector<double> delivered_moments(const GridSamples& shape, const MollifierKernel& k, double x, int order) {
  const auto nodes = support_nodes(shape.N, x, k.radius());
  std::vector<double> m(static_cast<std::size_t>(order + 1), 0.0);
  for (const auto& n : nodes)
    for (int s = 0; s <= order; ++s) m[static_cast<std::size_t>(s)] += std::pow(n.z, s) * k(n.z) * shape.spacing();
  return m;
}

// int y^2 (S_N kernel)(y) dy, through the Fourier coefficients of the kernel.
double projected_second_moment(const MollifierKernel& k, int N) {
  const double r = k.radius();
  double total = 0.0;
  for (int kk = -N; kk <= N; ++kk) {
    const double ck =
        quad::simpson([&](double z) { return k(z) * std::cos(kk * z); }, -r, r, 40000) / kTwoPi;
    total += kTwoPi * monomial_coefficient(2, kk).real() * ck;
  }
  return total;
}

}  // namespace

TEST_CASE("q0 against high-precision references") {
  const double q0_64 = spectral_q0(make_spec(0.5, 64), kCfg);
  const double q0_8 = spectral_q0(make_spec(0.5, 8), kCfg);
  CHECK(std::abs(q0_64 - 1.0) < 1e-14);
  CHECK(q0_8 == doctest::Approx(1.00000129305762523).epsilon(1e-12));
  CHECK(std::abs(q0_64 - 1.0) < std::abs(q0_8 - 1.0));
  const MollifierKernel scaled(make_spec(0.5, 8), kCfg, {}, q0_8);
  CHECK(kernel_mass(scaled) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("q2 against high-precision reference") {
  const double q2 = spectral_q2(make_spec(1.0 / 32, 2), kCfg, 128);
  CHECK(q2 == doctest::Approx(-4.36349941931389719).epsilon(1e-8));
}

TEST_CASE("spectral normalization makes the projected second moment vanish") {
  const auto f1 = make_f1();
  for (double j : {1.0, 2.5, 4.0, 6.0}) {
    const double x = kPi - j * kPi / 128;
    const auto spec = choose_params(x, 128, f1, spectral_policy());
    const auto norm = build_spectral_normalization(spec, kCfg, 128, 2);
    REQUIRE(norm.order == 2);
    const auto k = spectral_normalized_kernel(spec, kCfg, norm);
    CHECK(std::abs(projected_second_moment(k, 128)) <= 1e-8);
    CHECK(kernel_mass(k) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("spectral normalization: constant signal and inertness") {
  std::vector<std::complex<double>> v(2 * 128 + 1, 0.0);
  v[128] = 1.0;
  SpectralCoefficients one(128, v);
  one.real = true;
  const auto f1 = make_f1();
  const auto near = choose_params(kPi - 2 * kPi / 128, 128, f1, spectral_policy());
  CHECK(mollify_spectral_normalized(one, 1.0, near, kCfg, 2) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mollify_spectral_normalized(one, 1.0, near, kCfg, 0) == doctest::Approx(1.0).epsilon(1e-10));

  const auto c = compute_coefficients(f1, 128);
  const auto mid = choose_params(kPi / 2, 128, f1, spectral_policy());
  const double raw = mollify_spectral(c, kPi / 2, mid, kCfg);
  CHECK(std::abs(mollify_spectral_normalized(c, kPi / 2, mid, kCfg, 2) - raw) < 1e-6);
  CHECK(std::abs(mollify_spectral_normalized(c, kPi / 2, mid, kCfg, 0) - raw) < 1e-6);
}

TEST_CASE("spectral normalization improves f1 at two grid spacings from the jump") {
  const auto f1 = make_f1();
  const auto c = compute_coefficients(f1, 128);
  const double x = kPi - 2 * kPi / 128;
  const auto spec = choose_params(x, 128, f1, spectral_policy());
  const double raw = std::abs(mollify_spectral(c, x, spec, kCfg) - f1(x));
  const double norm = std::abs(mollify_spectral_normalized(c, x, spec, kCfg, 2) - f1(x));
  CHECK(norm < raw);
}

TEST_CASE("spectral orders other than 0 and 2 are rejected") {
  CHECK_THROWS_AS(build_spectral_normalization(make_spec(0.5, 8), kCfg, 32, 1), ConfigError);
}

TEST_CASE("discrete moments: symmetry and a pinned asymmetric value") {
  const int N = 128;
  const double h = kPi / N;
  const auto spec = make_spec(1.0 / 32, 2);
  const auto on = discrete_moments(spec, kCfg, 10 * h, N, 2);
  CHECK(std::abs(on.plain[1]) < 1e-12);
  const auto half = discrete_moments(spec, kCfg, 10.5 * h, N, 2);
  CHECK(std::abs(half.plain[1]) < 1e-12);
  const auto third = discrete_moments(spec, kCfg, (10.0 + 1.0 / 3.0) * h, N, 2);
  CHECK(third.plain[1] == doctest::Approx(-3.13591359431431205e-5).epsilon(1e-10));
  CHECK(third.scaled[1] == doctest::Approx(third.plain[1] * 32).epsilon(1e-12));
}

TEST_CASE("discrete s=0 moment is close to one in a smooth region") {
  const auto f1 = make_f1();
  ParamPolicy pol;
  pol.theta = ThetaPolicy::discrete_default();
  const double x = 40 * kPi / 128;
  const auto m = discrete_moments(choose_params(x, 128, f1, pol), kCfg, x, 128, 0);
  CHECK(m.plain[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("r = 1 on a grid point gives q1 = 0") {
  const int N = 128;
  const double x = 10 * kPi / N;
  const auto norm = solve_discrete_normalization(make_spec(1.0 / 32, 2), kCfg, x, N, 1);
  REQUIRE(norm.order == 1);
  CHECK(std::abs(norm.q[0]) < 1e-12);
}

TEST_CASE("r = 4 coefficients agree with an independent least-squares solve") {
  const int N = 128;
  const auto f1 = make_f1();
  const double h = kPi / N;

  SUBCASE("two spacings from the jump on the grid") {
    const double x = kPi - 2 * h;
    const auto spec = choose_params(x, N, f1, discrete_policy(4));
    const auto norm = solve_discrete_normalization(spec, kCfg, x, N, 4);
    CHECK(norm.order < 4);
    CHECK_FALSE(norm.note.empty());
    const auto q = oracle_q(N, x, spec.theta, spec.p, norm.order);
    for (int j = 0; j < norm.order; ++j)
      CHECK(norm.q[static_cast<std::size_t>(j)] == doctest::Approx(q(j)).epsilon(1e-8).scale(1.0));
  }
  SUBCASE("wider window off the grid") {
    const double x = kPi - 2 * h - h / 3;
    ParamPolicy pol = discrete_policy(4);
    pol.theta.floor_scale = 4.0;
    const auto spec = choose_params(x, N, f1, pol);
    const auto norm = solve_discrete_normalization(spec, kCfg, x, N, 4);
    REQUIRE(norm.order == 4);
    const auto q = oracle_q(N, x, spec.theta, spec.p, 4);
    for (int j = 0; j < 4; ++j)
      CHECK(norm.q[static_cast<std::size_t>(j)] == doctest::Approx(q(j)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("delivered discrete kernels satisfy their moment conditions near the jump") {
  const auto f1 = make_f1();
  std::mt19937_64 rng(2024);
  for (int N : {32, 128}) {
    const GridSamples shape(N, std::vector<double>(static_cast<std::size_t>(2 * N), 0.0));
    std::uniform_real_distribution<double> U(1.0, 4.0);
    std::bernoulli_distribution side(0.5);
    for (int r = 1; r <= 4; ++r) {
      for (int i = 0; i < 20; ++i) {
        const double d = U(rng) * kPi / N;
        const double x = side(rng) ? kPi - d : kPi + d;
        const auto spec = choose_params(x, N, f1, discrete_policy(r));
        const auto norm = solve_discrete_normalization(spec, kCfg, x, N, r);
        CHECK(norm.order >= 1);
        const auto m = delivered_moments(shape, discrete_normalized_kernel(spec, kCfg, norm), x, norm.order);
        CHECK(std::abs(m[0] - 1.0) <= 1e-12);
        for (int s = 1; s <= norm.order; ++s) CHECK(std::abs(m[static_cast<std::size_t>(s)]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("orders 1 and 2 are always attained in the near-jump band") {
  const auto f1 = make_f1();
  std::mt19937_64 rng(77);
  for (int N : {32, 128}) {
    std::uniform_real_distribution<double> U(1.0, 4.0);
    for (int r = 1; r <= 2; ++r)
      for (int i = 0; i < 20; ++i) {
        const double x = kPi + U(rng) * kPi / N;
        const auto spec = choose_params(x, N, f1, discrete_policy(r));
        CHECK(solve_discrete_normalization(spec, kCfg, x, N, r).order == r);
      }
  }
}

TEST_CASE("discrete normalization: constants, linear data and polynomials") {
  const int N = 64;
  GridSamples ones(N, std::vector<double>(2 * N, 1.0));
  const auto f1 = make_f1();
  const double x_near = kPi - 1.7 * kPi / N;
  const auto spec_near = choose_params(x_near, N, f1, discrete_policy(4));
  CHECK(mollify_discrete_normalized(ones, x_near, spec_near, kCfg, 4) == doctest::Approx(1.0).epsilon(1e-12));

  // Smooth window around x0 with no wrap-around.
  const double x0 = 2.0 + 0.37 * kPi / N;
  MollifierSpec spec = make_spec(8.0 / N, static_cast<int>(std::lround(0.6065 * 8)));
  for (int r = 1; r <= 4; ++r) {
    std::vector<double> coeffs{0.4, -1.3, 0.8, 0.25, -0.6};
    coeffs.resize(static_cast<std::size_t>(r + 1));
    auto P = [&](double y) {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
      return acc;
    };
    std::vector<double> v(2 * N);
    double scale = 0.0;
    for (int nu = 0; nu < 2 * N; ++nu) {
      v[static_cast<std::size_t>(nu)] = P(nu * kPi / N);
      if (std::abs(nu * kPi / N - x0) < spec.radius()) scale = std::max(scale, std::abs(P(nu * kPi / N)));
    }
    const double got = mollify_discrete_normalized(GridSamples(N, v), x0, spec, kCfg, r);
    CHECK(std::abs(got - P(x0)) <= 1e-8 * scale);
  }
}

TEST_CASE("discrete normalization is inert away from the jumps") {
  const auto f1 = make_f1();
  const auto g = sample_signal(f1, 128);
  ParamPolicy pol;
  pol.theta = ThetaPolicy::discrete_default();
  const double x = kPi / 2;
  const auto spec = choose_params(x, 128, f1, pol);
  const double raw = mollify_discrete(g, x, spec, kCfg);
  for (int r = 1; r <= 4; ++r)
    CHECK(std::abs(mollify_discrete_normalized(g, x, spec, kCfg, r) - raw) < 1e-6);
}

TEST_CASE("discrete normalization improves f1 at two grid spacings from the jump") {
  const auto f1 = make_f1();
  const auto g = sample_signal(f1, 128);
  const double x = kPi + 2 * kPi / 128;
  const auto spec = choose_params(x, 128, f1, discrete_policy(4));
  const double raw = std::abs(mollify_discrete(g, x, spec, kCfg) - f1(x));
  const double norm = std::abs(mollify_discrete_normalized(g, x, spec, kCfg, 4) - f1(x));
  CHECK(norm < raw);
}

TEST_CASE("dense solver") {
  double cond = 0.0;
  const auto x = solve_dense({{4.0, 1.0}, {2.0, 3.0}}, {1.0, 2.0}, &cond);
  CHECK(x[0] == doctest::Approx(0.1));
  CHECK(x[1] == doctest::Approx(0.6));
  CHECK(cond == doctest::Approx(5.0 * 0.6));
  CHECK_THROWS_AS(solve_dense({{1.0, 2.0}, {2.0, 4.0}}, {1.0, 1.0}), NumericalError);
}
