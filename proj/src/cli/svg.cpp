#include "qkd/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qkd::cli {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log_scale) {
  char buf[32];
  if (log_scale) {
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(std::log10(v))));
  } else {
    std::snprintf(buf, sizeof buf, "%g", v);
  }
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log_scale = false;
  double px0 = 0.0;
  double px1 = 1.0;

  double map(double v) const {
    const double a = log_scale ? std::log10(lo) : lo;
    const double b = log_scale ? std::log10(hi) : hi;
    const double x = log_scale ? std::log10(v) : v;
    return px0 + (x - a) / (b - a) * (px1 - px0);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log_scale) {
      const int a = static_cast<int>(std::lround(std::log10(lo)));
      const int b = static_cast<int>(std::lround(std::log10(hi)));
      const int step = std::max(1, (b - a + 9) / 10);
      for (int e = a; e <= b; e += step) out.push_back(std::pow(10.0, e));
      return out;
    }
    const double raw = (hi - lo) / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
    return out;
  }
};

void fit(Axis& ax, double lo, double hi) {
  if (!(lo <= hi)) {
    lo = ax.log_scale ? 1e-1 : 0.0;
    hi = 1.0;
  }
  if (ax.log_scale) {
    ax.lo = std::pow(10.0, std::floor(std::log10(lo)));
    ax.hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (ax.hi <= ax.lo) ax.hi = ax.lo * 10.0;
  } else {
    ax.lo = lo;
    ax.hi = hi > lo ? hi : lo + 1.0;
  }
}

}  // namespace

std::string render_svg(const Table& table, const PlotSpec& spec) {
  if (table.columns.empty()) throw std::invalid_argument("table has no columns");
  const std::string x_name = spec.x_column.empty() ? table.columns.front() : spec.x_column;
  std::size_t xi = 0;
  try {
    xi = table.column_index(x_name);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("missing x column '" + x_name + "'");
  }
  std::vector<std::string> names = spec.columns;
  if (names.empty()) {
    for (const auto& c : table.columns)
      if (c != x_name && c.find('.') == std::string::npos) names.push_back(c);
  }
  if (names.empty()) throw std::invalid_argument("no columns to plot");
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), n);
    if (it == table.columns.end()) throw std::invalid_argument("missing column '" + n + "'");
    idx.push_back(static_cast<std::size_t>(it - table.columns.begin()));
  }

  auto usable_x = [&](const std::optional<double>& v) { return v && std::isfinite(*v) && (!spec.x_log || *v > 0.0); };
  auto usable_y = [&](const std::optional<double>& v) { return v && std::isfinite(*v) && (!spec.y_log || *v > 0.0); };

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  std::vector<bool> has_points(idx.size(), false);
  for (const auto& row : table.rows) {
    if (!usable_x(row[xi])) continue;
    xlo = std::min(xlo, *row[xi]);
    xhi = std::max(xhi, *row[xi]);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& v = row[idx[k]];
      if (!usable_y(v) || *v <= 0.0) continue;
      has_points[k] = true;
      ylo = std::min(ylo, *v);
      yhi = std::max(yhi, *v);
    }
  }

  const double left = 80, right = 170, top = 40, bottom = 60;
  Axis ax{0, 1, spec.x_log, left, spec.width - right};
  Axis ay{0, 1, spec.y_log, spec.height - bottom, top};
  fit(ax, xlo, xhi);
  fit(ay, ylo, yhi);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
       std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
       std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    s += "<text x=\"" + fixed(spec.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(spec.title) + "</text>\n";

  s += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double v : ax.ticks())
    s += "<line x1=\"" + fixed(ax.map(v)) + "\" y1=\"" + fixed(ay.px0) + "\" x2=\"" + fixed(ax.map(v)) + "\" y2=\"" +
         fixed(ay.px1) + "\"/>\n";
  for (double v : ay.ticks())
    s += "<line x1=\"" + fixed(ax.px0) + "\" y1=\"" + fixed(ay.map(v)) + "\" x2=\"" + fixed(ax.px1) + "\" y2=\"" +
         fixed(ay.map(v)) + "\"/>\n";
  s += "</g>\n";
  s += "<rect x=\"" + fixed(ax.px0) + "\" y=\"" + fixed(ay.px1) + "\" width=\"" + fixed(ax.px1 - ax.px0) +
       "\" height=\"" + fixed(ay.px0 - ay.px1) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : ax.ticks())
    s += "<text x=\"" + fixed(ax.map(v)) + "\" y=\"" + fixed(ay.px0 + 16) + "\" text-anchor=\"middle\">" +
         tick_label(v, ax.log_scale) + "</text>\n";
  for (double v : ay.ticks())
    s += "<text x=\"" + fixed(ax.px0 - 6) + "\" y=\"" + fixed(ay.map(v) + 4) + "\" text-anchor=\"end\">" +
         tick_label(v, ay.log_scale) + "</text>\n";
  s += "<text x=\"" + fixed((ax.px0 + ax.px1) / 2) + "\" y=\"" + fixed(spec.height - 18.0) +
       "\" text-anchor=\"middle\">" + escape(spec.x_label.empty() ? x_name : spec.x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + fixed((ay.px0 + ay.px1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       fixed((ay.px0 + ay.px1) / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (!has_points[k]) continue;
    const std::string color = kPalette[k % std::size(kPalette)];
    s += "<g class=\"series\" data-name=\"" + escape(names[k]) + "\" fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"1.5\">\n";
    std::string path;
    for (const auto& row : table.rows) {
      const auto& v = row[idx[k]];
      if (!usable_x(row[xi]) || !usable_y(v) || *v <= 0.0) {
        if (!path.empty()) s += "<polyline points=\"" + path + "\"/>\n";
        path.clear();
        continue;
      }
      if (!path.empty()) path += ' ';
      path += fixed(ax.map(*row[xi])) + "," + fixed(ay.map(*v));
    }
    if (!path.empty()) s += "<polyline points=\"" + path + "\"/>\n";
    s += "</g>\n";
  }

  const double lx = ax.px1 + 12;
  double ly = ay.px1 + 10;
  for (std::size_t k = 0; k < idx.size(); ++k, ly += 18) {
    if (has_points[k]) {
      const std::string color = kPalette[k % std::size(kPalette)];
      s += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 20) + "\" y2=\"" + fixed(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
      s += "<text x=\"" + fixed(lx + 26) + "\" y=\"" + fixed(ly + 4) + "\">" + escape(names[k]) + "</text>\n";
    } else {
      s += "<text class=\"omitted\" x=\"" + fixed(lx) + "\" y=\"" + fixed(ly + 4) + "\" fill=\"#888888\">" +
           escape(names[k]) + " (no key)</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace qkd::cli
