// Copyright 2026 The wavefprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WAVEFPRINT_PLOT_H_
#define WAVEFPRINT_PLOT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wavefprint {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 960;
  int height = 540;
};

// Line chart of one or more series with labeled linear axes, written as PNG.
void write_line_plot(const std::filesystem::path& path, const std::vector<Series>& series,
                     const LinePlotOptions& options);

struct HeatmapOptions {
  std::string title;
  std::string x_label = "frame";
  std::string y_label = "frequency (Hz)";
  double y_min = 0;      // value of row 0
  double y_max = 11025;  // value past the last row
  bool symmetric = false;  // color range centered on zero
  int width = 960;
  int height = 540;
};

// rows x cols grid, row 0 drawn at the bottom.
void write_heatmap(const std::filesystem::path& path, const std::vector<double>& values, std::size_t rows,
                   std::size_t cols, const HeatmapOptions& options);

// RGB raster used by the writers above; exposed for tests.
class Canvas {
 public:
  Canvas(int width, int height);
  int width() const { return width_; }
  int height() const { return height_; }
  void set(int x, int y, std::array<std::uint8_t, 3> rgb);
  std::array<std::uint8_t, 3> get(int x, int y) const;
  void line(int x0, int y0, int x1, int y1, std::array<std::uint8_t, 3> rgb);
  void rect(int x0, int y0, int x1, int y1, std::array<std::uint8_t, 3> rgb);
  // 5x7 glyphs scaled by `scale`; lowercase renders as uppercase.
  void text(int x, int y, const std::string& s, int scale, std::array<std::uint8_t, 3> rgb);
  void text_vertical(int x, int y, const std::string& s, int scale, std::array<std::uint8_t, 3> rgb);
  static int text_width(const std::string& s, int scale);
  void save_png(const std::filesystem::path& path) const;

 private:
  int width_, height_;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace wavefprint

#endif  // WAVEFPRINT_PLOT_H_
