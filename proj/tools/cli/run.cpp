#include "cli/run.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cli/output.hpp"
#include "cli/plot.hpp"
#include "imbq/besov.hpp"
#include "imbq/data.hpp"
#include "imbq/dispersion.hpp"
#include "imbq/illposedness.hpp"
#include "imbq/kernel_check.hpp"
#include "imbq/norms.hpp"
#include "imbq/solver.hpp"
#include "imbq/symbols.hpp"
#include "imbq/transform.hpp"

namespace imbq::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

SpectralField build_field(const FieldSpec& f, const FrequencyGrid& g, std::uint64_t seed) {
  if (f.type == "gaussian") return gaussian_bump(g, f.amplitude, f.width, f.shift, f.mean_zero);
  if (f.type == "mode") return cosine_mode(g, f.k, f.amplitude);
  if (f.type == "random") return random_real_field(g, seed, f.band, f.amplitude);
  return SpectralField::zeros(g);
}

json window_json(const WindowReport& w) {
  return {{"start", w.start},     {"length", w.length},           {"iterations", w.iterations},
          {"halvings", w.halvings}, {"differences", w.differences}, {"ratios", w.ratios}};
}

int run_solve(const RunConfig& cfg, const SolveParams& p, std::ostream& log) {
  const auto grid = grid_with_spacing(p.spacing, p.extent);
  const CauchyData d(build_field(p.u0, grid, cfg.seed), build_field(p.u1, grid, cfg.seed + 1));

  SolverConfig sc;
  sc.p = p.p;
  sc.sign = p.sign;
  sc.horizon = p.horizon;
  sc.s = p.s;
  sc.picard_tol = p.picard_tol;
  sc.max_iterations = p.max_iterations;
  sc.quadrature_nodes = p.quadrature_nodes;
  sc.window_safety = p.window_safety;
  sc.ball_constant = p.ball_constant;
  sc.dealias_factor = p.dealias_factor;
  sc.window = p.window;
  sc.max_window_halvings = p.max_window_halvings;
  sc.nonlinear = p.nonlinear;

  const auto tr = solve(d, sc);

  // Export the window boundaries and the final time.
  std::vector<std::size_t> picks;
  for (const auto& w : tr.windows) {
    std::size_t i = 0;
    while (i < tr.size() && tr.times[i] < w.start) ++i;
    if (i < tr.size() && (picks.empty() || picks.back() != i)) picks.push_back(i);
  }
  if (picks.empty() || picks.back() != tr.size() - 1) picks.push_back(tr.size() - 1);

  std::string csv = "t,x,u\n";
  json times = json::array(), energies = json::array();
  const bool mean_zero = d.u1[grid.zero_index()] == cplx{};
  for (std::size_t i : picks) {
    const auto pos = to_position(tr.u[i]);
    for (std::size_t j = 0; j < grid.size(); ++j)
      csv += num(tr.times[i]) + "," + num(grid.position(j)) + "," + num(pos.samples[j].real()) + "\n";
    times.push_back(tr.times[i]);
    if (mean_zero) energies.push_back(energy(tr.u[i], tr.ut[i], p.p, p.sign));
  }

  json windows = json::array(), iterations = json::array(), ratios = json::array();
  for (std::size_t w = 0; w < tr.windows.size(); ++w) {
    const auto& win = tr.windows[w];
    windows.push_back(window_json(win));
    iterations.push_back(win.iterations);
    ratios.push_back(win.contraction());
    log << "window " << w << ": start=" << num(win.start) << " length=" << num(win.length)
        << " iterations=" << win.iterations << " contraction=" << num(win.contraction()) << "\n";
  }

  json side{{"config", cfg.resolved},
            {"times", times},
            {"windows", windows},
            {"iterations", iterations},
            {"ratios", ratios},
            {"energy", mean_zero ? json(energies) : json(nullptr)},
            {"energy_note", mean_zero ? "energy at the exported times" : "not defined: velocity has nonzero mean"},
            {"provenance", provenance({{"u", "imbq::solve then imbq::to_position"},
                                       {"windows", "imbq::solve (WindowReport)"},
                                       {"energy", "imbq::energy"}})}};
  atomic_write(fs::path(cfg.out) / "trajectory.csv", csv);
  atomic_write(fs::path(cfg.out) / "trajectory.json", dump(side));
  log << "solve: " << tr.windows.size() << " windows, final time " << num(tr.times.back()) << "\n";
  return ok;
}

int run_inflate(const RunConfig& cfg, const InflateParams& p, std::ostream& log) {
  SweepOptions opt;
  opt.spacing = p.spacing;
  opt.slope_tolerance = p.slope_tolerance;
  opt.quadrature.tau_nodes = p.tau_nodes;
  opt.quadrature.padding = p.padding;
  const auto rep = ratio_sweep(p.N, p.p, p.sign, p.s, p.t, opt);

  std::string csv = "N,t,p,s,sign,band_lo,band_hi,numerator,denominator,ratio\n";
  for (const auto& r : rep.rows) {
    csv += std::to_string(r.N) + "," + num(r.t) + "," + std::to_string(r.p) + "," + num(r.s) + "," + num(r.sign) +
           "," + num(r.band_lo) + "," + num(r.band_hi) + "," + num(r.numerator) + "," + num(r.denominator) + "," +
           num(r.ratio) + "\n";
    log << "N=" << r.N << " numerator=" << num(r.numerator) << " denominator=" << num(r.denominator)
        << " ratio=" << num(r.ratio) << "\n";
  }

  json summary{{"config", cfg.resolved},
               {"slope", rep.fit ? json(rep.fit->slope) : json(nullptr)},
               {"intercept", rep.fit ? json(rep.fit->intercept) : json(nullptr)},
               {"residual", rep.fit ? json(rep.fit->residual) : json(nullptr)},
               {"expected_slope", rep.expected_slope},
               {"slope_tolerance", rep.slope_tolerance},
               {"monotone", rep.monotone},
               {"pass", rep.pass},
               {"rows", rep.rows.size()},
               {"denominator", "(||u0||_{H^s} + ||u1||_{H^s})^p, sum of the two norms"},
               {"provenance", provenance({{"numerator", "imbq::restricted_norm of imbq::compute_Ap"},
                                          {"denominator", "imbq::sobolev_norm"},
                                          {"ratio", "imbq::inflation_ratio"},
                                          {"slope", "imbq::fit_loglog via imbq::ratio_sweep"},
                                          {"expected_slope", "imbq::expected_slope"}})}};
  atomic_write(fs::path(cfg.out) / "inflation.csv", csv);
  atomic_write(fs::path(cfg.out) / "inflation.json", dump(summary));
  if (cfg.plot) emit_plot(rep, fs::path(cfg.out) / "inflation.svg");
  if (rep.fit)
    log << "slope=" << num(rep.fit->slope) << " expected=" << num(rep.expected_slope)
        << " pass=" << (rep.pass ? "true" : "false") << "\n";
  else
    log << "fewer than 3 rows: no slope fit\n";
  return ok;
}

bool depends_on_t(const Symbol& s) {
  return s.kind != SymbolKind::m1 && s.kind != SymbolKind::P && s.kind != SymbolKind::lambda;
}

int run_lemma(const RunConfig& cfg, const LemmaParams& p, std::ostream& log, std::ostream& err) {
  BesovOptions bo;
  bo.h_min = p.h_min;
  bo.h_max = p.h_max;
  bo.resolution = p.resolution;
  bo.xi_extent = p.xi_extent;

  std::string csv = "symbol,t,seminorm,resolution,converged\n";
  bool all_converged = true;
  for (const auto& name : p.symbols) {
    const auto base = parse_symbol(name);
    const std::vector<double> ts = depends_on_t(base) ? p.t : std::vector<double>{0.0};
    for (double t : ts) {
      const auto e = besov_seminorm(parse_symbol(name, t), bo);
      all_converged = all_converged && e.converged;
      csv += e.symbol + "," + num(t) + "," + num(e.value) + "," + std::to_string(e.resolution) + "," +
             (e.converged ? "true" : "false") + "\n";
      log << e.symbol << " t=" << num(t) << " seminorm=" << num(e.value) << (e.converged ? "" : " (not converged)")
          << "\n";
    }
  }

  // Nodewise H^s bounds for P, Q_t, R_t on a seeded random corpus.
  int violations = 0;
  for (int i = 0; i < p.corpus; ++i) {
    const auto g = make_grid(4.0 + i % 9, 128);
    const auto v = random_real_field(g, cfg.seed + static_cast<std::uint64_t>(i));
    const double s = -1.0 + 2.0 * i / std::max(1, p.corpus), t = 0.1 + 7.0 * i / std::max(1, p.corpus);
    const double n = sobolev_norm(v, s), slack = 1e-14 * n;
    if (sobolev_norm(apply({SymbolKind::P, t}, v), s) > n + slack) ++violations;
    if (sobolev_norm(apply({SymbolKind::Q, t}, v), s) > n + slack) ++violations;
    if (sobolev_norm(apply({SymbolKind::R, t}, v), s) > t * (n + slack)) ++violations;
  }
  log << "H^s bounds: " << violations << " violations over " << p.corpus << " fields\n";

  const auto sweep = kernel_sweep(p.kernel_lo, p.kernel_hi, p.kernel_stride);
  log << "kernel ratio in [" << num(sweep.min_ratio) << ", " << num(sweep.max_ratio) << "] over " << sweep.rows.size()
      << " pairs\n";

  json summary{{"config", cfg.resolved},
               {"hs_bound_violations", violations},
               {"corpus_size", p.corpus},
               {"kernel", {{"pairs", sweep.rows.size()},
                           {"min_ratio", sweep.min_ratio},
                           {"max_ratio", sweep.max_ratio},
                           {"spread", sweep.max_ratio / sweep.min_ratio}}},
               {"besov_converged", all_converged},
               {"provenance", provenance({{"seminorm", "imbq::besov_seminorm"},
                                          {"hs_bound_violations", "imbq::apply and imbq::sobolev_norm"},
                                          {"kernel", "imbq::kernel_sweep"}})}};
  atomic_write(fs::path(cfg.out) / "multipliers.csv", csv);
  atomic_write(fs::path(cfg.out) / "lemma.json", dump(summary));
  if (!all_converged) {
    err << "besov seminorm did not stabilise under resolution doubling (see multipliers.csv)\n";
    return non_convergence;
  }
  return ok;
}

int run_dispersion(const RunConfig& cfg, const DispersionParams& p, std::ostream& log) {
  std::vector<DispersionFit> fits;
  std::string csv = "k,omega,expected,relative_error\n";
  json series = json::array();
  for (double k : p.k) {
    // Horizon covering the requested number of periods of the expected frequency.
    const double horizon = p.periods * 2.0 * std::numbers::pi * std::sqrt(1.0 + k * k) / k;
    auto fit = dispersion_check(k, horizon);
    csv += num(fit.k) + "," + num(fit.omega) + "," + num(fit.expected) + "," + num(fit.relative_error) + "\n";
    series.push_back({{"k", fit.k}, {"times", fit.times}, {"amplitudes", fit.amplitudes}});
    log << "k=" << num(k) << " omega=" << num(fit.omega) << " expected=" << num(fit.expected)
        << " relative_error=" << num(fit.relative_error) << "\n";
    fits.push_back(std::move(fit));
  }
  json summary{{"config", cfg.resolved},
               {"series", series},
               {"provenance", provenance({{"omega", "imbq::dispersion_check"},
                                          {"expected", "imbq::dispersion_check (k/sqrt(1+k^2))"},
                                          {"amplitudes", "imbq::solve via imbq::dispersion_check"}})}};
  atomic_write(fs::path(cfg.out) / "dispersion.csv", csv);
  atomic_write(fs::path(cfg.out) / "dispersion.json", dump(summary));
  if (cfg.plot) emit_plot(fits, fs::path(cfg.out) / "dispersion.svg");
  return ok;
}

int run_derivative(const RunConfig& cfg, const DerivativeParams& p, std::ostream& log) {
  const auto c = flowmap_derivative_check(p.N, p.p, p.sign, p.t, p.eps, p.spacing);
  // After dividing by eps^p the first neglected term is O(eps^(p-1)).
  const double order = p.p - 1;
  const double expected_ratio = std::pow(2.0, order);
  const bool pass = c.relative_error <= 5.0 * std::pow(p.eps, order) && c.halving_ratio >= 0.75 * expected_ratio &&
                    c.halving_ratio <= 1.25 * expected_ratio;
  log << "relative_error=" << num(c.relative_error) << " at eps, " << num(c.relative_error_half)
      << " at eps/2, halving ratio " << num(c.halving_ratio) << "\n";
  json summary{{"config", cfg.resolved},
               {"relative_error", c.relative_error},
               {"relative_error_half", c.relative_error_half},
               {"halving_ratio", c.halving_ratio},
               {"expected_halving_ratio", expected_ratio},
               {"pass", pass}};
  json prov{{"relative_error", "imbq::flowmap_derivative_check"}};
  if (p.p == 3) {
    const auto lo = lower_order_check(p.N, p.sign, p.t, p.eps, p.spacing);
    summary["lower_order"] = {{"quadratic_norm", lo.quadratic_norm},
                              {"cubic_norm", lo.cubic_norm},
                              {"ratio", lo.ratio},
                              {"pass", lo.ratio <= 1e-3}};
    prov["lower_order"] = "imbq::lower_order_check";
    log << "eps^2 coefficient / eps^3 coefficient = " << num(lo.ratio) << "\n";
  }
  summary["provenance"] = provenance(prov);
  atomic_write(fs::path(cfg.out) / "derivative.json", dump(summary));
  return ok;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  if (cfg.jobs > 0) kernels::set_threads(cfg.jobs);
  try {
    return std::visit(
        [&](const auto& p) -> int {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, SolveParams>) return run_solve(cfg, p, log);
          if constexpr (std::is_same_v<P, InflateParams>) return run_inflate(cfg, p, log);
          if constexpr (std::is_same_v<P, LemmaParams>) return run_lemma(cfg, p, log, err);
          if constexpr (std::is_same_v<P, DispersionParams>) return run_dispersion(cfg, p, log);
          if constexpr (std::is_same_v<P, DerivativeParams>) return run_derivative(cfg, p, log);
        },
        cfg.params);
  } catch (const ConvergenceError& e) {
    err << "non-convergence: " << e.what() << "\n";
    if (!e.history().empty()) {
      err << "history:";
      for (double h : e.history()) err << ' ' << num(h);
      err << "\n";
    }
    return non_convergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace imbq::cli
