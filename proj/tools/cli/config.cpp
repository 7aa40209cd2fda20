#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "imbq/symbols.hpp"

namespace imbq::cli {
namespace {

using nlohmann::json;

// Reads keys from one JSON object and remembers which were used, so the
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(prefix_, "expected an object");
  }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(path(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) throw ConfigError(path(key), "must be finite");
    return x;
  }

  long integer(const std::string& key, long fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v->get<long>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(path(key), "expected a string");
    return v->get<std::string>();
  }

  template <class T>
  std::vector<T> list(const std::string& key, std::vector<T> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) throw ConfigError(path(key), "expected a non-empty array");
    std::vector<T> out;
    for (const auto& e : *v) {
      if constexpr (std::is_same_v<T, std::string>) {
        if (!e.is_string()) throw ConfigError(path(key), "expected an array of strings");
      } else if constexpr (std::is_integral_v<T>) {
        if (!e.is_number_integer()) throw ConfigError(path(key), "expected an array of integers");
      } else {
        if (!e.is_number()) throw ConfigError(path(key), "expected an array of numbers");
      }
      out.push_back(e.get<T>());
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items())
      if (!seen_.count(key)) throw ConfigError(path(key), "unknown key");
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw ConfigError(field, msg);
}

int power(Reader& r, int fallback) {
  const long p = r.integer("p", fallback);
  require(p > 1 && p <= 12, r.path("p"), "p must be an integer > 1 (at most 12)");
  return static_cast<int>(p);
}

double sign(Reader& r) {
  const double s = r.number("sign", 1.0);
  require(s == 1.0 || s == -1.0, r.path("sign"), "sign must be +1 or -1");
  return s;
}

void unit_divisor(double spacing, const std::string& field) {
  require(spacing > 0.0, field, "spacing must be positive");
  const double per = 1.0 / spacing;
  require(std::abs(per - std::round(per)) < 1e-9 * per, field, "spacing must be 1/L for a positive integer L");
}

FieldSpec field_spec(const json& doc, const std::string& name, FieldSpec fallback) {
  Reader r(doc, name);
  FieldSpec f;
  f.type = r.string("type", fallback.type);
  if (f.type == "gaussian") {
    f.amplitude = r.number("amplitude", f.type == fallback.type ? fallback.amplitude : 1.0);
    f.width = r.number("width", f.type == fallback.type ? fallback.width : 1.0);
    f.shift = r.number("shift", f.type == fallback.type ? fallback.shift : 0.0);
    f.mean_zero = r.boolean("mean_zero", f.type == fallback.type ? fallback.mean_zero : false);
    require(f.width > 0.0, r.path("width"), "width must be positive");
  } else if (f.type == "mode") {
    f.k = r.number("k", 1.0);
    f.amplitude = r.number("amplitude", 1.0);
  } else if (f.type == "random") {
    f.amplitude = r.number("amplitude", 1.0);
    f.band = r.integer("band", -1);
  } else {
    require(f.type == "zero", r.path("type"), "expected zero, gaussian, mode or random");
  }
  r.reject_unknown();
  return f;
}

json to_json(const FieldSpec& f) {
  json j{{"type", f.type}};
  if (f.type == "gaussian")
    j.update({{"amplitude", f.amplitude}, {"width", f.width}, {"shift", f.shift}, {"mean_zero", f.mean_zero}});
  else if (f.type == "mode")
    j.update({{"k", f.k}, {"amplitude", f.amplitude}});
  else if (f.type == "random")
    j.update({{"amplitude", f.amplitude}, {"band", f.band}});
  return j;
}

SolveParams solve_params(Reader& r, json& out) {
  SolveParams p;
  p.p = power(r, p.p);
  p.sign = sign(r);
  p.horizon = r.number("horizon", p.horizon);
  p.s = r.number("s", p.s);
  p.picard_tol = r.number("picard_tol", p.picard_tol);
  p.max_iterations = static_cast<int>(r.integer("max_iterations", p.max_iterations));
  p.quadrature_nodes = static_cast<int>(r.integer("quadrature_nodes", p.quadrature_nodes));
  p.window_safety = r.number("window_safety", p.window_safety);
  p.ball_constant = r.number("ball_constant", p.ball_constant);
  p.dealias_factor = r.number("dealias_factor", p.dealias_factor);
  if (r.find("window")) p.window = r.number("window", 0.0);
  p.max_window_halvings = static_cast<int>(r.integer("max_window_halvings", p.max_window_halvings));
  p.nonlinear = r.boolean("nonlinear", p.nonlinear);
  p.spacing = r.number("spacing", p.spacing);
  p.extent = r.number("extent", p.extent);
  if (const json* v = r.find("u0")) p.u0 = field_spec(*v, "u0", p.u0);
  if (const json* v = r.find("u1")) p.u1 = field_spec(*v, "u1", p.u1);

  require(p.s >= 0.0, r.path("s"), "solving needs s >= 0");
  require(p.horizon > 0.0, r.path("horizon"), "horizon must be positive");
  require(p.picard_tol > 0.0, r.path("picard_tol"), "must be positive");
  require(p.max_iterations >= 1, r.path("max_iterations"), "must be positive");
  require(p.quadrature_nodes >= 5 && p.quadrature_nodes % 2 == 1, r.path("quadrature_nodes"), "must be odd and >= 5");
  require(p.window_safety > 0.0, r.path("window_safety"), "must be positive");
  require(p.ball_constant > 0.0, r.path("ball_constant"), "must be positive");
  require(p.dealias_factor == 0.0 || p.dealias_factor >= 0.5 * (p.p + 1), r.path("dealias_factor"),
          "must be 0 (automatic) or at least (p+1)/2");
  require(!p.window || *p.window > 0.0, r.path("window"), "must be positive");
  require(p.max_window_halvings >= 0, r.path("max_window_halvings"), "must be nonnegative");
  require(p.spacing > 0.0, r.path("spacing"), "must be positive");
  require(p.extent >= 4.0 * p.spacing, r.path("extent"), "must cover at least four nodes");

  out.update({{"p", p.p},
              {"sign", p.sign},
              {"horizon", p.horizon},
              {"s", p.s},
              {"picard_tol", p.picard_tol},
              {"max_iterations", p.max_iterations},
              {"quadrature_nodes", p.quadrature_nodes},
              {"window_safety", p.window_safety},
              {"ball_constant", p.ball_constant},
              {"dealias_factor", p.dealias_factor},
              {"max_window_halvings", p.max_window_halvings},
              {"nonlinear", p.nonlinear},
              {"spacing", p.spacing},
              {"extent", p.extent},
              {"u0", to_json(p.u0)},
              {"u1", to_json(p.u1)}});
  if (p.window) out["window"] = *p.window;
  return p;
}

InflateParams inflate_params(Reader& r, json& out) {
  InflateParams p;
  p.p = power(r, p.p);
  p.sign = sign(r);
  p.s = r.number("s", p.s);
  p.t = r.number("t", p.t);
  p.N = r.list<int>("N", p.N);
  p.spacing = r.number("spacing", p.spacing);
  p.tau_nodes = static_cast<int>(r.integer("tau_nodes", p.tau_nodes));
  p.padding = r.number("padding", p.padding);
  p.slope_tolerance = r.number("slope_tolerance", p.slope_tolerance);

  require(p.t > 0.0, r.path("t"), "t must be positive");
  for (std::size_t i = 0; i < p.N.size(); ++i) {
    require(p.N[i] >= 1, r.path("N"), "entries must be >= 1");
    require(i == 0 || p.N[i] > p.N[i - 1], r.path("N"), "entries must be strictly increasing");
  }
  unit_divisor(p.spacing, r.path("spacing"));
  require(p.tau_nodes >= 3 && p.tau_nodes % 2 == 1, r.path("tau_nodes"), "must be odd and >= 3");
  require(p.padding == 0.0 || p.padding >= 1.0, r.path("padding"), "must be 0 (automatic) or >= 1");
  require(p.slope_tolerance > 0.0, r.path("slope_tolerance"), "must be positive");

  out.update({{"p", p.p},
              {"sign", p.sign},
              {"s", p.s},
              {"t", p.t},
              {"N", p.N},
              {"spacing", p.spacing},
              {"tau_nodes", p.tau_nodes},
              {"padding", p.padding},
              {"slope_tolerance", p.slope_tolerance}});
  return p;
}

LemmaParams lemma_params(Reader& r, json& out) {
  LemmaParams p;
  p.symbols = r.list<std::string>("symbols", p.symbols);
  p.t = r.list<double>("t", p.t);
  p.h_min = r.number("h_min", p.h_min);
  p.h_max = r.number("h_max", p.h_max);
  p.resolution = static_cast<int>(r.integer("resolution", p.resolution));
  p.xi_extent = r.number("xi_extent", p.xi_extent);
  p.kernel_lo = static_cast<int>(r.integer("kernel_lo", p.kernel_lo));
  p.kernel_hi = static_cast<int>(r.integer("kernel_hi", p.kernel_hi));
  p.kernel_stride = static_cast<int>(r.integer("kernel_stride", p.kernel_stride));
  p.corpus = static_cast<int>(r.integer("corpus", p.corpus));

  for (const auto& s : p.symbols) {
    try {
      parse_symbol(s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(r.path("symbols"), e.what());
    }
  }
  require(p.h_min > 0.0 && p.h_min < p.h_max, r.path("h_min"), "need 0 < h_min < h_max");
  require(p.resolution >= 1, r.path("resolution"), "must be positive");
  require(p.xi_extent > 2.0 * p.h_max, r.path("xi_extent"), "must exceed 2 h_max");
  require(p.kernel_lo <= p.kernel_hi, r.path("kernel_lo"), "must not exceed kernel_hi");
  require(p.kernel_stride >= 1, r.path("kernel_stride"), "must be positive");
  require(p.corpus >= 0, r.path("corpus"), "must be nonnegative");

  out.update({{"symbols", p.symbols},
              {"t", p.t},
              {"h_min", p.h_min},
              {"h_max", p.h_max},
              {"resolution", p.resolution},
              {"xi_extent", p.xi_extent},
              {"kernel_lo", p.kernel_lo},
              {"kernel_hi", p.kernel_hi},
              {"kernel_stride", p.kernel_stride},
              {"corpus", p.corpus}});
  return p;
}

DispersionParams dispersion_params(Reader& r, json& out) {
  DispersionParams p;
  p.k = r.list<double>("k", p.k);
  p.periods = r.number("periods", p.periods);
  for (double k : p.k) require(k > 0.0, r.path("k"), "wavenumbers must be positive");
  require(p.periods >= 2.0, r.path("periods"), "need at least two periods for the fit");
  out.update({{"k", p.k}, {"periods", p.periods}});
  return p;
}

DerivativeParams derivative_params(Reader& r, json& out) {
  DerivativeParams p;
  p.N = static_cast<int>(r.integer("N", p.N));
  p.p = power(r, p.p);
  p.sign = sign(r);
  p.t = r.number("t", p.t);
  p.eps = r.number("eps", p.eps);
  p.spacing = r.number("spacing", p.spacing);
  require(p.N > p.p, r.path("N"), "N must exceed p");
  require(p.t > 0.0, r.path("t"), "t must be positive");
  require(p.eps > 0.0 && p.eps < 1.0, r.path("eps"), "eps must lie in (0, 1)");
  unit_divisor(p.spacing, r.path("spacing"));
  out.update({{"N", p.N}, {"p", p.p}, {"sign", p.sign}, {"t", p.t}, {"eps", p.eps}, {"spacing", p.spacing}});
  return p;
}

}  // namespace

RunConfig parse_config(const json& doc, const Overrides& flags) {
  Reader r(doc, "");
  RunConfig cfg;
  cfg.command = r.string("command", "");
  if (flags.command) cfg.command = *flags.command;
  if (cfg.command.empty()) throw ConfigError("command", "missing command");
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    throw ConfigError("command", "unknown command '" + cfg.command + "'");

  cfg.out = r.string("out", cfg.out);
  if (flags.out) cfg.out = *flags.out;
  require(!cfg.out.empty(), "out", "output directory must not be empty");
  cfg.jobs = static_cast<int>(r.integer("jobs", 0));
  if (flags.jobs) cfg.jobs = *flags.jobs;
  require(cfg.jobs >= 0, "jobs", "must be nonnegative");
  const long seed = r.integer("seed", 0);
  require(seed >= 0, "seed", "must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.plot = r.boolean("plot", false) || flags.plot;

  json params = json::object();
  if (cfg.command == "solve")
    cfg.params = solve_params(r, params);
  else if (cfg.command == "inflate")
    cfg.params = inflate_params(r, params);
  else if (cfg.command == "lemma-check")
    cfg.params = lemma_params(r, params);
  else if (cfg.command == "dispersion")
    cfg.params = dispersion_params(r, params);
  else
    cfg.params = derivative_params(r, params);
  r.reject_unknown();

  // jobs and out only affect where and how fast, never the numbers, so the
  // echoed configuration leaves them out and outputs stay byte-identical.
  cfg.resolved = {{"command", cfg.command}, {"seed", cfg.seed}, {"parameters", params}};
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const Overrides& flags) {
  if (path.empty()) return parse_config(json::object(), flags);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ConfigError("", path + ":" + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
  return parse_config(doc, flags);
}

}  // namespace imbq::cli
