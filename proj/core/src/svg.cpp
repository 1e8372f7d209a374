#include "axionkit/svg.hpp"

#include "axionkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace axionkit::svg {

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Scale {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;
  double pix_lo = 0.0;
  double pix_hi = 1.0;

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    return pix_lo + (a - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
  double value_at(double frac) const {
    const double a = lo + frac * (hi - lo);
    return log ? std::pow(10.0, a) : a;
  }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

} // namespace

std::string render(const Axes &axes, std::span<const Series> series, int width, int height) {
  const double left = 80.0;
  const double right = static_cast<double>(width) - 20.0;
  const double top = 40.0;
  const double bottom = static_cast<double>(height) - 50.0;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto &s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], axes.log_x) || !usable(s.y[i], axes.log_y)) {
        continue;
      }
      const double x = axes.log_x ? std::log10(s.x[i]) : s.x[i];
      const double y = axes.log_y ? std::log10(s.y[i]) : s.y[i];
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = y_lo = 0.0;
    x_hi = y_hi = 1.0;
  }
  if (x_hi == x_lo) {
    x_hi = x_lo + 1.0;
  }
  if (y_hi == y_lo) {
    y_hi = y_lo + 1.0;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  const Scale sx{axes.log_x, x_lo, x_hi, left, right};
  const Scale sy{axes.log_y, y_lo - pad, y_hi + pad, bottom, top};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(0.5 * (left + right)) << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << escape(axes.title) << "</text>\n";
  os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\""
     << fixed(right - left) << "\" height=\"" << fixed(bottom - top)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double frac = i / 4.0;
    const double px = left + frac * (right - left);
    const double py = bottom - frac * (bottom - top);
    os << "<text x=\"" << fixed(px) << "\" y=\"" << fixed(bottom + 16)
       << "\" text-anchor=\"middle\">" << tick_label(sx.value_at(frac)) << "</text>\n";
    os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py + 4)
       << "\" text-anchor=\"end\">" << tick_label(sy.value_at(frac)) << "</text>\n";
  }
  os << "<text x=\"" << fixed(0.5 * (left + right)) << "\" y=\"" << fixed(bottom + 36)
     << "\" text-anchor=\"middle\">" << escape(axes.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << fixed(0.5 * (top + bottom))
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(axes.y_label) << "</text>\n";

  double legend_y = top + 16.0;
  for (const auto &s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.style == Style::line) {
      os << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" points=\"";
      for (std::size_t i = 0; i < n; ++i) {
        if (usable(s.x[i], axes.log_x) && usable(s.y[i], axes.log_y)) {
          os << fixed(sx.map(s.x[i])) << ',' << fixed(sy.map(s.y[i])) << ' ';
        }
      }
      os << "\"/>\n";
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (usable(s.x[i], axes.log_x) && usable(s.y[i], axes.log_y)) {
          os << "<circle cx=\"" << fixed(sx.map(s.x[i])) << "\" cy=\"" << fixed(sy.map(s.y[i]))
             << "\" r=\"1.6\" fill=\"" << escape(s.color) << "\"/>\n";
        }
      }
    }
    if (!s.label.empty()) {
      os << "<text x=\"" << fixed(right - 8) << "\" y=\"" << fixed(legend_y)
         << "\" text-anchor=\"end\" fill=\"" << escape(s.color) << "\">" << escape(s.label)
         << "</text>\n";
      legend_y += 16.0;
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write(const std::filesystem::path &path, const Axes &axes, std::span<const Series> series) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  os << render(axes, series);
}

} // namespace axionkit::svg
