#include <doctest.h>

#include <cmath>
#include <numbers>

#include "imbq/dispersion.hpp"
#include "imbq/illposedness.hpp"
#include "imbq/norms.hpp"
#include "imbq/solver.hpp"
#include "support/corpus.hpp"

using namespace imbq;
using imbq::testing::gaussian;
using imbq::testing::relative_l2;
constexpr double pi = std::numbers::pi;

namespace {

FrequencyGrid small_grid() { return grid_with_spacing(1.0 / 8, 16.0); }

CauchyData smooth_data(const FrequencyGrid& g, double scale = 1.0) {
  return {gaussian(g, 0.3 * scale, 2.0, 0.0, false), gaussian(g, 0.2 * scale, 1.5, 1.0, true)};
}

Trajectory free_trajectory(const CauchyData& d, const std::vector<double>& times) {
  Trajectory tr;
  tr.times = times;
  for (double t : times) {
    tr.u.push_back(free_propagator(d, t));
    tr.ut.push_back(free_velocity(d, t));
  }
  return tr;
}

// max over nodes of ||a - b||_{L^2} + ||a - b||_inf
double trajectory_distance(const Trajectory& a, const Trajectory& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto diff = a.u[i] - b.u[i];
    m = std::max(m, sobolev_norm(diff, 0.0) + sup_norm(diff));
  }
  return m;
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = [](auto mutate) {
    SolverConfig x;
    mutate(x);
    CHECK_THROWS_AS(x.validate(), std::invalid_argument);
  };
  bad([](SolverConfig& x) { x.p = 1; });
  bad([](SolverConfig& x) { x.sign = 0.5; });
  bad([](SolverConfig& x) { x.horizon = 0.0; });
  bad([](SolverConfig& x) { x.quadrature_nodes = 32; });
  bad([](SolverConfig& x) { x.quadrature_nodes = 3; });
  bad([](SolverConfig& x) { x.max_iterations = 0; });
  bad([](SolverConfig& x) { x.dealias_factor = 1.2; });
  bad([](SolverConfig& x) { x.window = -1.0; });
  CHECK(c.dealias() == 1.5);
}

TEST_CASE("Cauchy data checks") {
  const auto g = small_grid();
  CHECK_THROWS_AS(CauchyData(SpectralField::zeros(g), SpectralField::zeros(make_grid(4.0, 64))), GridMismatch);
  CHECK_THROWS_AS(CauchyData(SpectralField::zeros(g), SpectralField::zeros(g, false)), std::invalid_argument);
}

TEST_CASE("free propagator") {
  const auto g = small_grid();
  const auto d = smooth_data(g);
  CHECK(free_propagator(d, 0.0).values() == d.u0.values());
  CHECK(free_velocity(d, 0.0).values() == d.u1.values());

  const double k = 2.0, t = 1.3;
  const CauchyData mode(cosine_mode(g, k), SpectralField::zeros(g));
  const auto u = free_propagator(mode, t);
  CHECK(relative_l2(u, cosine_mode(g, k, std::cos(t * lambda_symbol(k)))) < 1e-15);
  const auto v = free_velocity(mode, t);
  const double lk = lambda_symbol(k);
  CHECK(relative_l2(v, cosine_mode(g, k, -lk * std::sin(t * lk))) < 1e-15);

  // xi = 0 rule: u^(0) = u0^(0) + t u1^(0)
  auto u0 = SpectralField::zeros(g).values();
  auto u1 = u0;
  u0[g.zero_index()] = 2.0;
  u1[g.zero_index()] = 3.0;
  const CauchyData flat(SpectralField(g, u0, true), SpectralField(g, u1, true));
  CHECK(free_propagator(flat, 0.5)[g.zero_index()] == cplx(3.5));

  // Box data keeps unit modulus on B_N and -B_N.
  const auto ip = make_ip_data(4, grid_with_spacing(1.0 / 16, 8.0));
  const auto w = free_propagator(ip.data, 0.8);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(std::abs(std::abs(w[i]) - std::abs(ip.data.u0[i])) < 1e-14);
}

TEST_CASE("free velocity matches central differences") {
  const auto g = small_grid();
  const auto d = smooth_data(g);
  const double t = 0.7;
  double prev = 0.0;
  for (double h : {1e-2, 5e-3}) {
    auto fd = free_propagator(d, t + h) - free_propagator(d, t - h);
    fd *= 1.0 / (2 * h);
    const double err = relative_l2(fd, free_velocity(d, t));
    CHECK(err < 1e-4);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.01));
    prev = err;
  }
}

TEST_CASE("time reversal of the free evolution") {
  const auto g = small_grid();
  const auto d = smooth_data(g);
  const double t = 2.3;
  const CauchyData later(free_propagator(d, t), free_velocity(d, t));
  CHECK(relative_l2(free_propagator(later, -t), d.u0) < 1e-10);
  CHECK(relative_l2(free_velocity(later, -t), d.u1) < 1e-10);
}

TEST_CASE("window quadrature integrates cubics exactly") {
  for (int n : {5, 7, 33}) {
    const double T = 0.37;
    const auto q = window_quadrature(T, n);
    REQUIRE(q.times.size() == static_cast<std::size_t>(n));
    CHECK(q.times.front() == 0.0);
    CHECK(q.times.back() == doctest::Approx(T));
    for (int i = 0; i < n; ++i) {
      const double ti = q.times[i];
      double s0 = 0, s3 = 0;
      for (int j = 0; j < n; ++j) {
        const double w = q.weights[i * n + j];
        // row 1 borrows node 2 for its quadratic
        if (j > i && !(i == 1 && j == 2)) CHECK(w == 0.0);
        s0 += w;
        s3 += w * std::pow(q.times[j], 3);
      }
      CHECK(s0 == doctest::Approx(ti).epsilon(1e-13));
      if (i != 1) CHECK(s3 == doctest::Approx(std::pow(ti, 4) / 4).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(window_quadrature(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(window_quadrature(0.0, 5), std::invalid_argument);
}

TEST_CASE("duhamel functional") {
  const auto g = small_grid();
  const auto d = smooth_data(g);
  SolverConfig cfg;
  const auto q = window_quadrature(0.1, cfg.quadrature_nodes);

  SUBCASE("zero forcing gives the free evolution") {
    Trajectory zero;
    zero.times = q.times;
    for (std::size_t i = 0; i < q.times.size(); ++i) {
      zero.u.push_back(SpectralField::zeros(g));
      zero.ut.push_back(SpectralField::zeros(g));
    }
    const auto z = duhamel_functional(d, zero, cfg);
    for (std::size_t i = 0; i < z.size(); ++i)
      CHECK(relative_l2(z.u[i], free_propagator(d, q.times[i])) < 1e-15);
  }
  SUBCASE("first node is u0") {
    const auto z = duhamel_functional(d, free_trajectory(d, q.times), cfg);
    CHECK(z.u.front().values() == d.u0.values());
  }
  SUBCASE("agrees with a 10x refined rule") {
    const double T = 0.3;
    const auto coarse = window_quadrature(T, 33);
    const auto fine = window_quadrature(T, 321);
    const auto a = duhamel_functional(d, free_trajectory(d, coarse.times), cfg);
    SolverConfig fcfg = cfg;
    fcfg.quadrature_nodes = 321;
    const auto b = duhamel_functional(d, free_trajectory(d, fine.times), fcfg);
    CHECK(relative_l2(a.final_u(), b.final_u()) < 1e-8);
    // The forcing part itself is resolved well beyond that.
    const auto fa = a.final_u() - free_propagator(d, T);
    const auto fb = b.final_u() - free_propagator(d, T);
    CHECK(relative_l2(fa, fb) < 1e-8);
  }
  SUBCASE("rejects foreign sampling") {
    auto tr = free_trajectory(d, q.times);
    tr.times[3] += 1e-3;
    CHECK_THROWS_AS(duhamel_functional(d, tr, cfg), std::invalid_argument);
  }
}

TEST_CASE("picard window") {
  const auto g = small_grid();
  const auto d = smooth_data(g);
  SolverConfig cfg;

  SUBCASE("linear problem converges in one iteration") {
    cfg.nonlinear = false;
    const auto r = picard_window(d, 0.2, cfg);
    CHECK(r.report.iterations == 1);
  }
  SUBCASE("geometric contraction") {
    const auto r = picard_window(d, 0.1, cfg);
    CHECK(r.report.ratios.size() >= 2);
    for (double x : r.report.ratios) CHECK(x < 1.0);
    const auto half = picard_window(d, 0.05, cfg);
    const double shrink = r.report.contraction() / half.report.contraction();
    CHECK(shrink >= 3.0);
    CHECK(shrink <= 5.0);
  }
  SUBCASE("limit is a fixed point") {
    const auto r = picard_window(d, 0.1, cfg);
    const auto again = duhamel_functional(d, r.trajectory, cfg);
    CHECK(trajectory_distance(again, r.trajectory) < 10 * cfg.picard_tol * std::max(1.0, ball_radius(d, cfg)));
  }
  SUBCASE("too long a window fails with its history") {
    cfg.max_iterations = 4;
    const CauchyData big = smooth_data(g, 30.0);
    try {
      picard_window(big, 1.0, cfg);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK_FALSE(e.history().empty());
    }
  }
}

TEST_CASE("window sizing") {
  const auto g = small_grid();
  const auto d = smooth_data(g);
  SolverConfig cfg;
  const double R = sobolev_norm(d.u0, 0) + sup_norm(d.u0) + sobolev_norm(d.u1, 0) + sup_norm(d.u1);
  CHECK(ball_radius(d, cfg) == doctest::Approx(R));
  CHECK(window_length(d, cfg) == doctest::Approx(0.1 / std::sqrt(R)));
  cfg.p = 3;
  CHECK(window_length(d, cfg) == doctest::Approx(0.1 / R));
  cfg.window = 0.05;
  CHECK(window_length(d, cfg) == 0.05);
}

TEST_CASE("solve") {
  const auto g = small_grid();

  SUBCASE("zero data stays zero") {
    const CauchyData z(SpectralField::zeros(g), SpectralField::zeros(g));
    SolverConfig cfg;
    cfg.horizon = 0.3;
    const auto tr = solve(z, cfg);
    for (const auto& u : tr.u) CHECK(sobolev_norm(u, 0.0) == 0.0);
  }
  SUBCASE("linear single mode across two windows") {
    const double k = 2.0, T = 1.3;
    const CauchyData d(cosine_mode(g, k), SpectralField::zeros(g));
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.horizon = T;
    cfg.window = T / 2;
    const auto tr = solve(d, cfg);
    CHECK(tr.windows.size() == 2);
    const auto expect = cosine_mode(g, k, std::cos(T * lambda_symbol(k)));
    CHECK(l2_distance(tr.final_u(), expect) < 1e-10 * sobolev_norm(d.u0, 0.0));
    CHECK(tr.times.back() == doctest::Approx(T));
    for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
  }
  SUBCASE("agrees with rk4") {
    const auto d = smooth_data(g);
    SolverConfig cfg;
    cfg.horizon = 0.25;
    const auto a = solve(d, cfg);
    const auto b = rk4_solve(d, cfg, 1e-3, 250);
    CHECK(relative_l2(a.final_u(), b.final_u()) < 1e-6);
    for (const auto& w : a.windows)
      for (double r : w.ratios) CHECK(r < 1.0);
  }
  SUBCASE("tiny data follows the free evolution") {
    const double eps = 1e-4;
    const auto d = smooth_data(g, eps / 0.3);
    SolverConfig cfg;
    cfg.horizon = 1.0;
    const auto tr = solve(d, cfg);
    for (std::size_t i = 0; i < tr.size(); i += 7)
      CHECK(sup_norm(tr.u[i] - free_propagator(d, tr.times[i])) <= 2 * eps);
  }
  SUBCASE("grid converged") {
    const auto g2 = grid_with_spacing(1.0 / 8, 32.0);
    auto data = [](const FrequencyGrid& gg) {
      return CauchyData(gaussian(gg, 0.3, 1.0, 0.0, false), gaussian(gg, 0.2, 1.0, 1.0, true));
    };
    SolverConfig cfg;
    cfg.horizon = 0.25;
    const double a = sobolev_norm(solve(data(g), cfg).final_u(), 0.0);
    const double b = sobolev_norm(solve(data(g2), cfg).final_u(), 0.0);
    CHECK(std::abs(a - b) < 1e-6 * b);
  }
  SUBCASE("non-convergence names the window") {
    SolverConfig cfg;
    cfg.horizon = 0.5;
    cfg.window = 0.25;
    cfg.max_iterations = 2;
    try {
      solve(smooth_data(g), cfg);
      FAIL("expected SolveError");
    } catch (const SolveError& e) {
      CHECK(e.window() == 0);
      CHECK(std::string(e.what()).find("window 0") != std::string::npos);
    }
  }
}

TEST_CASE("rk4") {
  const auto g = small_grid();
  SUBCASE("fourth order on a linear mode") {
    const double k = 1.0, T = 1.0;
    const CauchyData d(cosine_mode(g, k), SpectralField::zeros(g));
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.horizon = T;
    const auto expect = cosine_mode(g, k, std::cos(T * lambda_symbol(k)));
    const double e1 = relative_l2(rk4_solve(d, cfg, 0.1, 100).final_u(), expect);
    const double e2 = relative_l2(rk4_solve(d, cfg, 0.05, 100).final_u(), expect);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
  }
  SUBCASE("zero data") {
    SolverConfig cfg;
    cfg.horizon = 0.1;
    const auto tr = rk4_solve(CauchyData(SpectralField::zeros(g), SpectralField::zeros(g)), cfg, 0.01);
    CHECK(sobolev_norm(tr.final_u(), 0.0) == 0.0);
  }
  SUBCASE("instability is reported") {
    SolverConfig cfg;
    cfg.horizon = 5.0;
    cfg.sign = -1.0;
    CHECK_THROWS_AS(rk4_solve(smooth_data(g, 40.0), cfg, 0.05), ConvergenceError);
  }
  CHECK_THROWS_AS(rk4_solve(smooth_data(g), SolverConfig{}, 0.0), std::invalid_argument);
}

TEST_CASE("energy") {
  const auto g = small_grid();
  CHECK(energy(SpectralField::zeros(g), SpectralField::zeros(g), 2, 1.0) == 0.0);

  auto ut = SpectralField::zeros(g).values();
  ut[g.zero_index()] = 1.0;
  CHECK_THROWS_AS(energy(SpectralField::zeros(g), SpectralField(g, ut, true), 2, 1.0), std::invalid_argument);

  SUBCASE("linear mode") {
    const CauchyData d(cosine_mode(g, 1.5), SpectralField::zeros(g));
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.horizon = 2.0;
    CHECK(energy_drift(rk4_solve(d, cfg, 1e-2), 2, 1.0) < 1e-10);
  }
  SUBCASE("nonlinear drift is fourth order in dt") {
    const auto gg = grid_with_spacing(1.0 / 8, 40.0);
    const CauchyData d(gaussian(gg, 3.0, 4.0, 0.0, false), gaussian(gg, 3.0, 4.0, 1.0, true));
    SolverConfig cfg;
    cfg.horizon = 0.5;
    const double a = energy_drift(rk4_solve(d, cfg, 1e-3), 2, 1.0);
    const double b = energy_drift(rk4_solve(d, cfg, 5e-4), 2, 1.0);
    CHECK(a <= 1e-8);
    CHECK(a / b >= 8.0);
  }
}

TEST_CASE("dispersion") {
  for (double k : {1.0, 100.0}) {
    const double w = k / std::sqrt(1 + k * k);
    const auto f = dispersion_check(k, 10 * 2 * pi / w);
    CHECK(f.omega == doctest::Approx(w).epsilon(1e-8));
  }
  CHECK(dispersion_check(1.0, 100.0).omega == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(dispersion_check(100.0, 70.0).omega == doctest::Approx(0.99995).epsilon(1e-6));
  const double k = 1.0 / 256;
  CHECK(dispersion_check(k, 20 * 2 * pi / k).omega / k == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(dispersion_check(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(dispersion_check(1.0, -1.0), std::invalid_argument);
}
