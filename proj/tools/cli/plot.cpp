#include "cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "cli/output.hpp"

namespace imbq::cli {
namespace {

constexpr double W = 640, H = 420, L = 70, R = 20, T = 30, B = 50;

std::string f3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Maps data ranges onto the plot area.
struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return L + (x - x0) / (x1 - x0) * (W - L - R); }
  double py(double y) const { return H - B - (y - y0) / (y1 - y0) * (H - T - B); }
};

void pad(double& lo, double& hi) {
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double m = 0.05 * (hi - lo);
  lo -= m;
  hi += m;
}

void header(std::ostringstream& s, const std::string& title, const std::string& xl, const std::string& yl) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xl << "</text>\n";
  s << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (T + H - B) / 2 << ")\">" << yl << "</text>\n";
}

void ticks(std::ostringstream& s, const Frame& f, bool log_axes) {
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4, y = f.y0 + (f.y1 - f.y0) * i / 4;
    const double xv = log_axes ? std::exp(x) : x, yv = log_axes ? std::exp(y) : y;
    s << "<text x=\"" << f3(f.px(x)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << label(xv)
      << "</text>\n";
    s << "<text x=\"" << L - 6 << "\" y=\"" << f3(f.py(y) + 4) << "\" text-anchor=\"end\">" << label(yv)
      << "</text>\n";
  }
}

}  // namespace

std::string inflation_svg(const InflationReport& report) {
  if (report.rows.empty()) throw std::invalid_argument("cannot plot an empty inflation report");
  Frame f{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& r : report.rows) {
    if (!(r.ratio > 0.0)) throw std::invalid_argument("log-log plot needs positive ratios");
    f.x0 = std::min(f.x0, std::log(double(r.N)));
    f.x1 = std::max(f.x1, std::log(double(r.N)));
    f.y0 = std::min(f.y0, std::log(r.ratio));
    f.y1 = std::max(f.y1, std::log(r.ratio));
  }
  pad(f.x0, f.x1);
  pad(f.y0, f.y1);

  std::ostringstream s;
  header(s, "inflation ratio, p=" + std::to_string(report.p) + ", s=" + label(report.s) + ", t=" + label(report.t), "N",
         "ratio");
  ticks(s, f, true);
  if (report.fit) {
    const double a = f.x0, b = f.x1;
    const double ya = report.fit->intercept + report.fit->slope * a;
    const double yb = report.fit->intercept + report.fit->slope * b;
    s << "<line class=\"fit\" x1=\"" << f3(f.px(a)) << "\" y1=\"" << f3(f.py(ya)) << "\" x2=\"" << f3(f.px(b))
      << "\" y2=\"" << f3(f.py(yb)) << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
    s << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 << "\" text-anchor=\"end\">slope " << f3(report.fit->slope)
      << " (expected " << f3(report.expected_slope) << ")</text>\n";
  }
  for (const auto& r : report.rows)
    s << "<circle class=\"marker\" cx=\"" << f3(f.px(std::log(double(r.N)))) << "\" cy=\""
      << f3(f.py(std::log(r.ratio))) << "\" r=\"4\" fill=\"#2c3e50\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string dispersion_svg(const std::vector<DispersionFit>& fits) {
  std::size_t points = 0;
  for (const auto& fit : fits) points += fit.times.size();
  if (points == 0) throw std::invalid_argument("cannot plot an empty dispersion report");
  Frame f{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& fit : fits)
    for (std::size_t i = 0; i < fit.times.size(); ++i) {
      f.x0 = std::min(f.x0, fit.times[i]);
      f.x1 = std::max(f.x1, fit.times[i]);
      f.y0 = std::min(f.y0, fit.amplitudes[i]);
      f.y1 = std::max(f.y1, fit.amplitudes[i]);
    }
  pad(f.x0, f.x1);
  pad(f.y0, f.y1);

  static const char* colours[] = {"#2c3e50", "#c0392b", "#27ae60", "#8e44ad", "#d35400"};
  std::ostringstream s;
  header(s, "mode amplitude", "t", "amplitude");
  ticks(s, f, false);
  for (std::size_t j = 0; j < fits.size(); ++j) {
    const auto& fit = fits[j];
    s << "<polyline class=\"series\" fill=\"none\" stroke=\"" << colours[j % 5] << "\" points=\"";
    for (std::size_t i = 0; i < fit.times.size(); ++i)
      s << (i ? " " : "") << f3(f.px(fit.times[i])) << ',' << f3(f.py(fit.amplitudes[i]));
    s << "\"/>\n";
    s << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 + 14 * j << "\" text-anchor=\"end\" fill=\""
      << colours[j % 5] << "\">k=" << label(fit.k) << " omega=" << label(fit.omega) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void emit_plot(const InflationReport& report, const std::filesystem::path& path) {
  atomic_write(path, inflation_svg(report));
}

void emit_plot(const std::vector<DispersionFit>& fits, const std::filesystem::path& path) {
  atomic_write(path, dispersion_svg(fits));
}

}  // namespace imbq::cli
