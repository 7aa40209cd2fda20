#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "imbq/illposedness.hpp"
#include "imbq/norms.hpp"
#include "imbq/transform.hpp"
#include "support/corpus.hpp"

using namespace imbq;
using imbq::testing::relative_l2;
constexpr double pi = std::numbers::pi;

namespace {

// int_0^t sin(alpha (t - tau)) exp(i beta tau) dtau by adaptive Gauss-Kronrod.
cplx quadrature_term(double alpha, double beta, double t) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto re = [&](double s) { return std::sin(alpha * (t - s)) * std::cos(beta * s); };
  auto im = [&](double s) { return std::sin(alpha * (t - s)) * std::sin(beta * s); };
  return {GK::integrate(re, 0.0, t, 20, 1e-14), GK::integrate(im, 0.0, t, 20, 1e-14)};
}

FrequencyGrid experiment_grid(int p, int N, double spacing = 1.0 / 64) {
  return grid_with_spacing(spacing, p * (N + 2) + 2.0);
}

}  // namespace

TEST_CASE("box data") {
  const auto g = experiment_grid(2, 16);
  const auto d = make_ip_data(16, g);
  double mass = 0.0;
  for (const auto& v : d.data.u0.amplitudes()) mass += std::norm(v) * g.spacing();
  CHECK(mass == 2.0);
  CHECK(d.box_end - d.box_begin == 64);
  CHECK(g.node(d.box_begin) == 16.0);
  CHECK(g.node(d.box_end - 1) == 16.0 + 63.0 / 64);
  CHECK(d.data.u0.hermitian_defect() == 0.0);
  CHECK(d.data.u1.hermitian_defect() < 1e-15);

  for (std::size_t k = 0; k < g.size(); ++k) {
    const double a = std::abs(g.node(k));
    const bool in = a >= 16.0 && a < 17.0;
    CHECK(std::abs(d.data.u0[k]) == (in ? 1.0 : 0.0));
  }

  const auto pos = to_position(d.data.u0);
  double imag = 0.0, mag = 0.0;
  for (const auto& v : pos.samples) {
    imag = std::max(imag, std::abs(v.imag()));
    mag = std::max(mag, std::abs(v));
  }
  CHECK(imag < 1e-10 * mag);

  CHECK_THROWS_AS(make_ip_data(40, g), std::invalid_argument);
  CHECK_THROWS_AS(make_ip_data(0, g), std::invalid_argument);
  CHECK_THROWS_AS(make_ip_data(2, make_grid(10.0, 64)), std::invalid_argument);
}

TEST_CASE("box data norms scale like N^s") {
  const auto g = experiment_grid(1, 128, 1.0 / 16);
  for (int N : {16, 32, 64, 128}) {
    const auto d = make_ip_data(N, g);
    const double c = (sobolev_norm(d.data.u0, -0.5) + sobolev_norm(d.data.u1, -0.5)) / std::pow(N, -0.5);
    CHECK(c >= 0.5);
    CHECK(c <= 4.0);
  }
}

TEST_CASE("free evolution of box data") {
  const auto g = experiment_grid(2, 8, 1.0 / 32);
  const auto d = make_ip_data(8, g);
  CHECK(free_evolution_hat(d, 0.0).values() == d.data.u0.values());
  for (double t : {0.3, 1.0, 7.5}) {
    const auto f = free_evolution_hat(d, t);
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(std::abs(std::abs(f[k]) - std::abs(d.data.u0[k])) < 1e-15);
    const auto L = free_propagator(d.data, t);
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k] - L[k]));
    CHECK(m <= 1e-12);
  }
}

TEST_CASE("generic term") {
  CHECK(generic_term_real(1.0, 1.0, pi / 2) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(generic_term_real(1.0, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(generic_term_real(0.5, 0.2, 0.0) == 0.0);
  CHECK(generic_term_real(0.0, 0.7, 3.0) == 0.0);

  for (double t : {0.3, 0.7}) {
    const double q = quadrature_term(1.0, 1.0 + 1e-9, t).real();
    CHECK(std::abs(generic_term_real(1.0, 1.0 + 1e-9, t) - q) < 1e-10);
  }

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0), tt(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = i % 4 == 0 ? a * (1 + 1e-9 * u(rng)) : u(rng), t = tt(rng);
    const cplx q = quadrature_term(a, b, t);
    CHECK(std::abs(generic_term_real(a, b, t) - q.real()) < 1e-12);
    CHECK(std::abs(generic_term(a, b, t) - q) < 1e-12);
  }
}

TEST_CASE("generic term is continuous across the degenerate branch") {
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    for (double a : {0.3, 0.9, -0.6}) {
      // |a^2 - b^2| straddles 1e-8 max(a^2, b^2, 1)
      const double d1 = 0.49e-8 / std::abs(a), d2 = 0.51e-8 / std::abs(a);
      CHECK(std::abs(generic_term_real(a, a + d1, t) - generic_term_real(a, a + d2, t)) < 1e-9);
      CHECK(std::abs(generic_term_real(a, -a, t) - generic_term_real(a, a, t)) < 1e-15);
    }
  }
}

TEST_CASE("support and phase arithmetic of the box") {
  for (int N : {4, 16, 64, 128}) {
    const double n = N;
    for (double a = n; a < n + 1; a += 1.0 / 64) {
      // 1 - lambda(a) = 1 / (<a>(<a> + a)), cancellation-free
      const double gap = 1.0 / (bracket(a) * (bracket(a) + a));
      CHECK(gap >= 1.0 / (2 * (n + 2) * (n + 2)));
      CHECK(gap <= 1.0 / (2 * n * n));
    }
  }

  std::mt19937_64 rng(7);
  for (int p : {2, 4, 6}) {
    for (int N : {16, 32, 64}) {
      std::uniform_real_distribution<double> box(N, N + 1);
      double worst = 0.0;
      for (int trial = 0; trial < 2000; ++trial) {
        double beta = 0.0;
        for (int j = 0; j < p; ++j) beta += (j % 2 ? -1.0 : 1.0) * lambda_symbol(box(rng));
        worst = std::max(worst, std::abs(beta));
      }
      CHECK(worst <= 2.0 * p / (double(N) * N * N));
    }
  }
}

TEST_CASE("compute_Ap basic properties") {
  const int N = 8;
  const auto g = experiment_grid(3, N, 1.0 / 32);
  const auto d = make_ip_data(N, g);

  CHECK(sobolev_norm(compute_Ap(d, 2, 1.0, 0.0), 0.0) == 0.0);

  for (int p : {2, 3}) {
    const auto A = compute_Ap(d, p, 1.0, 0.5);
    CHECK(A.real_valued());
    CHECK(A.hermitian_defect() < 1e-10);
    const double total = sobolev_norm(A, 0.0);
    CHECK(total > 0.0);
    double outside = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (std::abs(g.node(k)) > p * (N + 1)) outside = std::max(outside, std::abs(A[k]));
    CHECK(outside < 1e-12 * total);
    // sign flips the whole field
    CHECK(relative_l2(compute_Ap(d, p, -1.0, 0.5), -1.0 * A) < 1e-15);
  }

  const auto A3 = compute_Ap(d, 3, 1.0, 0.5);
  CHECK(restricted_norm(A3, BandWindow(0.25, 0.5), 0.0).value < 1e-12 * sobolev_norm(A3, 0.0));

  CHECK_THROWS_AS(compute_Ap(d, 1, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(compute_Ap(d, 2, 1.0, -0.5), std::invalid_argument);
  QuadratureConfig q;
  q.tau_nodes = 64;
  CHECK_THROWS_AS(compute_Ap(d, 2, 1.0, 0.5, q), std::invalid_argument);
  // Grid too narrow for a fourth power of the box.
  CHECK_THROWS_AS(compute_Ap(d, 6, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("compute_Ap converges in tau") {
  const auto g = experiment_grid(2, 16);
  const auto d = make_ip_data(16, g);
  QuadratureConfig q;
  q.check_convergence = false;
  const auto a = compute_Ap(d, 2, 1.0, 0.5, q);
  q.tau_nodes = 129;
  const auto b = compute_Ap(d, 2, 1.0, 0.5, q);
  CHECK(relative_l2(a, b) < 1e-6);
}

TEST_CASE("compute_Ap against the direct sum") {
  SUBCASE("p = 2, N = 16 on the experiment grid, band [1/4, 1/2]") {
    const auto d = make_ip_data(16, experiment_grid(2, 16));
    const auto A = compute_Ap(d, 2, 1.0, 0.5);
    const auto B = brute_force_Ap(d, 2, 1.0, 0.5);
    const BandWindow band(0.25, 0.5);
    const double diff = restricted_norm(A - B, band, 0.0).value;
    CHECK(diff < 1e-6 * restricted_norm(B, band, 0.0).value);
  }
  SUBCASE("coarse grid, whole line") {
    const auto d = make_ip_data(8, grid_with_spacing(1.0 / 16, 40.0));
    for (int p : {2, 3}) {
      const auto A = compute_Ap(d, p, -1.0, 0.5);
      const auto B = brute_force_Ap(d, p, -1.0, 0.5);
      CHECK(relative_l2(A, B) < 1e-8);
    }
    CHECK(sobolev_norm(brute_force_Ap(d, 2, 1.0, 0.0), 0.0) == 0.0);
    CHECK_THROWS_AS(brute_force_Ap(d, 4, 1.0, 0.5), std::invalid_argument);
  }
  SUBCASE("small-t sign on the low band") {
    const auto d = make_ip_data(8, grid_with_spacing(1.0 / 16, 40.0));
    for (double sign : {1.0, -1.0}) {
      const auto B = brute_force_Ap(d, 2, sign, 0.05);
      for (std::size_t k = 0; k < B.size(); ++k) {
        const double xi = d.grid().node(k);
        if (xi > 0.25 && xi < 0.5) CHECK(B[k].real() * sign < 0.0);
      }
    }
  }
}

TEST_CASE("inflation ratio") {
  const auto d = make_ip_data(16, experiment_grid(2, 16));
  const auto zero = inflation_ratio(d, 2, 1.0, -0.5, 0.0);
  CHECK(zero.ratio == 0.0);

  const auto row = inflation_ratio(d, 2, 1.0, -0.5, 0.5);
  CHECK(row.band_lo == 0.25);
  CHECK(row.band_hi == 0.5);
  CHECK(row.ratio == doctest::Approx(row.numerator / row.denominator));
  const double den = sobolev_norm(d.data.u0, -0.5) + sobolev_norm(d.data.u1, -0.5);
  CHECK(row.denominator == doctest::Approx(den * den));

  const auto band = inflation_band(3, 16);
  CHECK(band.lo == 16.0);
  CHECK(band.hi == 17.0);
}

TEST_CASE("log-log fit") {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.5));
  const auto f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(f.residual < 1e-14);
  CHECK_THROWS_AS(fit_loglog({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, -1.0}), std::invalid_argument);
  CHECK(expected_slope(2, -0.5) == 1.0);
  CHECK(expected_slope(3, -0.5) == 1.0);
  CHECK(expected_slope(4, -0.25) == 1.0);
}

TEST_CASE("ratio sweep") {
  SUBCASE("doubling N doubles the ratio") {
    const auto r = ratio_sweep({16, 32, 64}, 2, 1.0, -0.5, 0.5);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.monotone);
    for (std::size_t i = 1; i < r.rows.size(); ++i)
      CHECK(r.rows[i].ratio / r.rows[i - 1].ratio == doctest::Approx(2.0).epsilon(0.25));
    REQUIRE(r.fit);
    CHECK(r.pass);
  }
  SUBCASE("no inflation above L^2") {
    const auto r = ratio_sweep({16, 32, 64}, 2, 1.0, 0.5, 0.5);
    REQUIRE(r.fit);
    CHECK(r.fit->slope == doctest::Approx(-1.0).epsilon(0.2));
    CHECK_FALSE(r.monotone);
  }
  SUBCASE("two rows give no fit") {
    const auto r = ratio_sweep({16, 32}, 2, 1.0, -0.5, 0.5);
    CHECK_FALSE(r.fit.has_value());
    CHECK_FALSE(r.pass);
  }
  CHECK_THROWS_AS(ratio_sweep({32, 16}, 2, 1.0, -0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ratio_sweep({}, 2, 1.0, -0.5, 0.5), std::invalid_argument);
}

TEST_CASE("flow-map expansion") {
  SUBCASE("second derivative") {
    const auto c = flowmap_derivative_check(8, 2, 1.0, 0.3, 1e-3);
    CHECK(c.relative_error <= 5e-3);
    CHECK(c.halving_ratio >= 1.5);
    CHECK(c.halving_ratio <= 2.5);
  }
  SUBCASE("lower derivatives vanish for p = 3") {
    const auto c = lower_order_check(4, 1.0, 0.3, 1e-2);
    CHECK(c.cubic_norm > 0.0);
    CHECK(c.ratio <= 1e-3);
  }
  CHECK_THROWS_AS(flowmap_derivative_check(8, 2, 1.0, 0.3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(flowmap_derivative_check(8, 2, 1.0, 0.0, 1e-3), std::invalid_argument);
}
