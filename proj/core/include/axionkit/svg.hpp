#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

// Minimal static SVG line/marker plots. The CSV next to each figure is the
// data of record; these are inspection aids.
namespace axionkit::svg {

enum class Style { line, markers };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::line;
  std::string color = "#1f77b4";
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

//! Non-finite points, and non-positive points on log axes, are skipped.
std::string render(const Axes &axes, std::span<const Series> series, int width = 720,
                   int height = 440);

void write(const std::filesystem::path &path, const Axes &axes, std::span<const Series> series);

} // namespace axionkit::svg
