#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mollify/constants.hpp"
#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"
#include "mollify/quadrature.hpp"

using namespace mollify;
using cd = std::complex<double>;

namespace {

bool near(cd a, cd b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("f1 coefficients against high-precision references") {
  const auto c = compute_coefficients(make_f1(), 16);
  // Reference values from tests/oracles/freeze_values.py.
  CHECK(near(c[1], cd(0.0, -0.424413181578387562), 1e-13));
  CHECK(near(c[5], cd(0.0, -0.0643050275118769033), 1e-13));
  CHECK(near(c[1], cd(0.0, -4.0 / (3.0 * kPi)), 1e-13));
  CHECK(std::abs(c[0]) < 1e-12);
  CHECK(c.real);
}

TEST_CASE("f2 coefficients against high-precision references") {
  const auto c = compute_coefficients(make_f2(), 8);
  CHECK(near(c[0], cd(-0.590892738865632729, 0.0), 1e-13));
  CHECK(near(c[3], cd(-0.00874006218750244174, 0.118110414201255483), 1e-13));
}

TEST_CASE("f1 coefficient k=1 agrees with a fine trapezoid sum") {
  const auto f1 = make_f1();
  const std::size_t n = 1u << 16;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    im -= f1(x) * std::sin(x);
  }
  im /= static_cast<double>(n);
  CHECK(compute_coefficients(f1, 4)[1].imag() == doctest::Approx(im).epsilon(1e-8));
}

TEST_CASE("coefficients of real signals are conjugate symmetric") {
  for (const char* name : {"f1", "f2", "smooth"}) {
    const auto c = compute_coefficients(*builtin_signal(name), 64);
    for (int k = 1; k <= 64; ++k) CHECK(near(c[-k], std::conj(c[k]), 1e-14));
  }
}

TEST_CASE("sin is band limited") {
  const auto c = compute_coefficients(*builtin_signal("sin"), 8);
  for (int k = -8; k <= 8; ++k) {
    const cd expect = k == 1 ? cd(0.0, -0.5) : k == -1 ? cd(0.0, 0.5) : cd(0.0, 0.0);
    CHECK(near(c[k], expect, 1e-14));
  }
  CHECK(eval_projection(c, 0.7) == doctest::Approx(std::sin(0.7)).epsilon(1e-14));
}

TEST_CASE("monomial closed forms match quadrature of the periodic extension") {
  for (int r = 0; r <= 4; ++r) {
    const auto c = compute_coefficients(make_monomial(r), 6);
    for (int k = -6; k <= 6; ++k) CHECK(near(c[k], monomial_coefficient(r, k), 1e-11));
  }
  CHECK(near(monomial_coefficient(2, 3), cd(-2.0 / 9.0, 0.0), 1e-16));
  CHECK(near(monomial_coefficient(2, 0), cd(kPi * kPi / 3.0, 0.0), 1e-15));
  CHECK_THROWS_AS(monomial_coefficient(5, 1), ConfigError);
}

TEST_CASE("project_monomial equals the generic projection") {
  for (int r = 1; r <= 3; ++r) {
    const auto c = compute_coefficients(make_monomial(r), 32);
    const MonomialProjection P(r, 32);
    for (double y : {-2.9, -0.4, 0.0, 0.3, 1.7}) {
      CHECK(P(y) == doctest::Approx(eval_projection(c, y)).epsilon(1e-10).scale(1.0));
      CHECK(project_monomial(r, 32, y) == doctest::Approx(P(y)).epsilon(1e-14).scale(1.0));
    }
  }
}

TEST_CASE("Dirichlet kernel") {
  CHECK(dirichlet(0, 0.3) == doctest::Approx(1.0 / kTwoPi));
  CHECK(dirichlet(7, 0.0) == doctest::Approx(15.0 / kTwoPi));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const double y = U(rng);
    double direct = 1.0;
    for (int k = 1; k <= 9; ++k) direct += 2.0 * std::cos(k * y);
    CHECK(dirichlet(9, y) == doctest::Approx(direct / kTwoPi).epsilon(1e-12).scale(1.0));
    CHECK(dirichlet(9, -y) == doctest::Approx(dirichlet(9, y)).epsilon(1e-14));
  }
  const double mass = quad::simpson([](double y) { return dirichlet(12, y); }, -kPi, kPi, 4000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Fourier interpolant reproduces the samples") {
  const auto f1 = make_f1();
  const auto g = sample_signal(f1, 16);
  const auto c = interpolant_coefficients(g);
  for (int nu = 0; nu < 32; ++nu)
    CHECK(eval_projection(c, g.node(nu)) == doctest::Approx(g.values[static_cast<std::size_t>(nu)]).epsilon(1e-13).scale(1.0));
}

TEST_CASE("interpolant splits the highest mode evenly") {
  const int N = 8;
  std::vector<double> v(2 * N);
  for (int nu = 0; nu < 2 * N; ++nu) v[static_cast<std::size_t>(nu)] = std::cos(N * nu * kPi / N);
  const auto c = interpolant_coefficients(GridSamples(N, v));
  CHECK(near(c[N], cd(0.5, 0.0), 1e-14));
  CHECK(near(c[-N], cd(0.5, 0.0), 1e-14));
  for (int k = -N + 1; k < N; ++k) CHECK(std::abs(c[k]) < 1e-14);
}

TEST_CASE("interpolant of a band-limited signal equals its projection") {
  const auto s = make_smooth("trig", [](double x) { return 0.3 + std::sin(3 * x) - 2 * std::cos(2 * x); });
  const auto ci = interpolant_coefficients(sample_signal(s, 8));
  const auto cp = compute_coefficients(s, 8);
  for (int k = -8; k <= 8; ++k) CHECK(near(ci[k], cp[k], 1e-13));
}

TEST_CASE("container validation") {
  CHECK_THROWS_AS(SpectralCoefficients(2, std::vector<cd>(4)), ConfigError);
  CHECK_THROWS_AS(GridSamples(2, std::vector<double>(3)), ConfigError);
  CHECK_THROWS_AS(compute_coefficients(make_f1(), 0), ConfigError);
  const GridSamples g(4, std::vector<double>(8, 1.0));
  CHECK(g.spacing() == doctest::Approx(kPi / 4));
  CHECK(g.node(3) == doctest::Approx(3 * kPi / 4));
}

TEST_CASE("documented projection and interpolation examples") {
  CHECK(dirichlet(1, kPi) == doctest::Approx(-1.0 / kTwoPi).epsilon(1e-14));
  for (int p : {4, 16, 64})
    CHECK(quad::simpson([p](double y) { return dirichlet(p, y); }, -kPi, kPi, 20000) == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<cd> one(2 * 8 + 1, 0.0);
  one[8] = 1.0;
  CHECK(eval_projection(SpectralCoefficients(8, one), 2.3) == doctest::Approx(1.0));
  CHECK(eval_projection(compute_coefficients(*builtin_signal("sin"), 1), kPi / 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(eval_projection(compute_coefficients(make_f1(), 128), kPi)) < 0.05);

  const auto ci = interpolant_coefficients(GridSamples(6, std::vector<double>(12, 1.0)));
  for (int k = -6; k <= 6; ++k) CHECK(near(ci[k], k == 0 ? cd(1.0, 0.0) : cd(0.0, 0.0), 1e-15));
  const auto cs = interpolant_coefficients(sample_signal(*builtin_signal("sin"), 4));
  CHECK(near(cs[1], cd(0.0, -0.5), 1e-12));
  CHECK(near(cs[-1], cd(0.0, 0.5), 1e-12));
  const auto g = sample_signal(make_f1(), 32);
  const auto c32 = interpolant_coefficients(g);
  for (int nu = 0; nu < 64; ++nu)
    CHECK(std::abs(eval_projection(c32, g.node(nu)) - g.values[static_cast<std::size_t>(nu)]) <= 1e-10);
}

TEST_CASE("projected monomial examples") {
  CHECK(project_monomial(0, 7, 1.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(project_monomial(1, 16, 0.0)) < 1e-15);
  const double v = project_monomial(2, 16, 0.0);
  double closed = kPi * kPi / 3.0;
  for (int k = 1; k <= 16; ++k) closed += 4.0 * ((k % 2) ? -1.0 : 1.0) / (double(k) * k);
  CHECK(v == doctest::Approx(closed).epsilon(1e-12));
  CHECK(std::abs(v) < 1e-2);
  CHECK(v == doctest::Approx(eval_projection(compute_coefficients(make_monomial(2), 16), 0.0)).epsilon(1e-10).scale(1.0));
  CHECK_THROWS_AS(project_monomial(5, 16, 0.0), ConfigError);
}

TEST_CASE("projection of an analytic signal converges spectrally") {
  const auto s = *builtin_signal("smooth");
  auto max_err = [&](int N) {
    const auto c = compute_coefficients(s, N);
    double m = 0.0;
    for (int j = 0; j < 400; ++j) {
      const double x = kTwoPi * j / 400.0;
      m = std::max(m, std::abs(eval_projection(c, x) - s(x)));
    }
    return m;
  };
  CHECK(max_err(16) * 10.0 <= max_err(8));
}
