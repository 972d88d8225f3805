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

#include "wavefprint/plot.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "wavefprint/errors.h"

namespace wavefprint {

namespace {

using Rgb = std::array<std::uint8_t, 3>;

constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGrid{225, 225, 225};
constexpr Rgb kPalette[] = {{31, 119, 180}, {214, 39, 40}, {44, 160, 44}, {255, 127, 14}, {148, 103, 189}};

// Rows of five bits, most significant bit leftmost.
const std::map<char, std::array<std::uint8_t, 7>>& glyphs() {
  static const std::map<char, std::array<std::uint8_t, 7>> table = {
      {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}}, {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}}, {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
      {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}}, {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
      {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}}, {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
      {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}}, {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
      {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}}, {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
      {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}}, {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
      {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}}, {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
      {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}}, {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
      {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
      {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}}, {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
      {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}}, {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
      {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
      {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}}, {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
      {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}}, {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
      {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
      {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}}, {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
      {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}}, {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
      {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}}, {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
      {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}}, {':', {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00}},
      {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}}, {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}},
      {'/', {0x00, 0x01, 0x02, 0x04, 0x08, 0x10, 0x00}}, {',', {0x00, 0x00, 0x00, 0x00, 0x0C, 0x04, 0x08}},
      {'=', {0x00, 0x00, 0x1F, 0x00, 0x1F, 0x00, 0x00}}, {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F}},
      {'%', {0x18, 0x19, 0x02, 0x04, 0x08, 0x13, 0x03}},
  };
  return table;
}

std::string tick_label(double v) {
  char buf[32];
  const double a = std::abs(v);
  if (a != 0 && (a >= 1e5 || a < 1e-3)) {
    std::snprintf(buf, sizeof buf, "%.1e", v);
  } else if (a >= 100 || v == std::round(v)) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.2f", v);
  }
  return buf;
}

// Roughly five round tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0)) return {lo};
  const double raw = span / 5;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

// Blue-white-red for signed data, dark-to-yellow otherwise.
Rgb colormap(double t, bool diverging) {
  t = std::clamp(t, 0.0, 1.0);
  auto lerp = [](Rgb a, Rgb b, double u) {
    Rgb out;
    for (int i = 0; i < 3; ++i) out[i] = static_cast<std::uint8_t>(std::lround(a[i] + (b[i] - a[i]) * u));
    return out;
  };
  if (diverging) {
    return t < 0.5 ? lerp({33, 102, 172}, {247, 247, 247}, t * 2) : lerp({247, 247, 247}, {178, 24, 43}, t * 2 - 1);
  }
  const Rgb stops[] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  const double s = t * 4;
  const int i = std::min(3, static_cast<int>(s));
  return lerp(stops[i], stops[i + 1], s - i);
}

struct Frame {
  int left, right, top, bottom;
};

Frame draw_axes(Canvas& c, const std::string& title, const std::string& xl, const std::string& yl, double x0,
                double x1, double y0, double y1, int right_margin) {
  Frame f{90, c.width() - right_margin, 40, c.height() - 60};
  c.text((c.width() - Canvas::text_width(title, 2)) / 2, 12, title, 2, kBlack);
  for (double t : ticks(x0, x1)) {
    const int px = f.left + static_cast<int>(std::lround((t - x0) / (x1 - x0) * (f.right - f.left)));
    c.line(px, f.top, px, f.bottom, kGrid);
    c.line(px, f.bottom, px, f.bottom + 5, kBlack);
    const std::string s = tick_label(t);
    c.text(px - Canvas::text_width(s, 1) / 2, f.bottom + 9, s, 1, kBlack);
  }
  for (double t : ticks(y0, y1)) {
    const int py = f.bottom - static_cast<int>(std::lround((t - y0) / (y1 - y0) * (f.bottom - f.top)));
    c.line(f.left, py, f.right, py, kGrid);
    c.line(f.left - 5, py, f.left, py, kBlack);
    const std::string s = tick_label(t);
    c.text(f.left - 8 - Canvas::text_width(s, 1), py - 3, s, 1, kBlack);
  }
  c.line(f.left, f.top, f.left, f.bottom, kBlack);
  c.line(f.left, f.bottom, f.right, f.bottom, kBlack);
  c.text((f.left + f.right - Canvas::text_width(xl, 1)) / 2, c.height() - 25, xl, 1, kBlack);
  c.text_vertical(15, (f.top + f.bottom + Canvas::text_width(yl, 1)) / 2, yl, 1, kBlack);
  return f;
}

}  // namespace

Canvas::Canvas(int width, int height) : width_(width), height_(height) {
  if (width < 16 || height < 16) throw Error(Errc::invalid_config, "canvas too small");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3, 255);
}

void Canvas::set(int x, int y, Rgb rgb) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  std::copy(rgb.begin(), rgb.end(), pixels_.begin() + (static_cast<std::ptrdiff_t>(y) * width_ + x) * 3);
}

Rgb Canvas::get(int x, int y) const {
  const auto* p = pixels_.data() + (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  return {p[0], p[1], p[2]};
}

void Canvas::line(int x0, int y0, int x1, int y1, Rgb rgb) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    set(x0, y0, rgb);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void Canvas::rect(int x0, int y0, int x1, int y1, Rgb rgb) {
  for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y) {
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) set(x, y, rgb);
  }
}

int Canvas::text_width(const std::string& s, int scale) { return static_cast<int>(s.size()) * 6 * scale; }

void Canvas::text(int x, int y, const std::string& s, int scale, Rgb rgb) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
    auto it = glyphs().find(ch);
    if (it == glyphs().end()) continue;
    const int gx = x + static_cast<int>(i) * 6 * scale;
    for (int r = 0; r < 7; ++r) {
      for (int col = 0; col < 5; ++col) {
        if (it->second[r] & (0x10 >> col)) rect(gx + col * scale, y + r * scale, gx + col * scale + scale - 1, y + r * scale + scale - 1, rgb);
      }
    }
  }
}

void Canvas::text_vertical(int x, int y, const std::string& s, int scale, Rgb rgb) {
  // Reads bottom to top.
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
    auto it = glyphs().find(ch);
    if (it == glyphs().end()) continue;
    const int gy = y - static_cast<int>(i) * 6 * scale;
    for (int r = 0; r < 7; ++r) {
      for (int col = 0; col < 5; ++col) {
        if (it->second[r] & (0x10 >> col)) {
          const int px = x + r * scale, py = gy - col * scale;
          rect(px, py, px + scale - 1, py - scale + 1, rgb);
        }
      }
    }
  }
}

void Canvas::save_png(const std::filesystem::path& path) const {
  FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw Error(Errc::io, "cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw Error(Errc::io, "PNG encoding failed for " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width_), static_cast<png_uint_32>(height_), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height_; ++y) {
    png_write_row(png, const_cast<png_bytep>(pixels_.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) * 3));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(fp) != 0) throw Error(Errc::io, "cannot finish " + path.string());
}

void write_line_plot(const std::filesystem::path& path, const std::vector<Series>& series,
                     const LinePlotOptions& options) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw Error(Errc::shape, "series '" + s.name + "' has mismatched x/y");
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw Error(Errc::empty_data, "nothing to plot");
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  Canvas c(options.width, options.height);
  const Frame f = draw_axes(c, options.title, options.x_label, options.y_label, x0, x1, y0, y1, 30);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Rgb color = kPalette[k % std::size(kPalette)];
    const auto& s = series[k];
    int px_prev = 0, py_prev = 0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const int px = f.left + static_cast<int>(std::lround((s.x[i] - x0) / (x1 - x0) * (f.right - f.left)));
      const int py = f.bottom - static_cast<int>(std::lround((s.y[i] - y0) / (y1 - y0) * (f.bottom - f.top)));
      if (i > 0) c.line(px_prev, py_prev, px, py, color);
      px_prev = px;
      py_prev = py;
    }
    const int ly = f.top + 8 + static_cast<int>(k) * 14;
    c.rect(f.right - 150, ly, f.right - 138, ly + 6, color);
    c.text(f.right - 132, ly, s.name, 1, kBlack);
  }
  c.save_png(path);
}

void write_heatmap(const std::filesystem::path& path, const std::vector<double>& values, std::size_t rows,
                   std::size_t cols, const HeatmapOptions& options) {
  if (rows == 0 || cols == 0 || values.size() != rows * cols) throw Error(Errc::shape, "heatmap shape mismatch");
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (options.symmetric) {
    const double m = std::max(std::abs(lo), std::abs(hi));
    lo = -m;
    hi = m;
  }
  if (hi == lo) hi = lo + 1;

  Canvas c(options.width, options.height);
  const Frame f = draw_axes(c, options.title, options.x_label, options.y_label, 0, static_cast<double>(cols),
                            options.y_min, options.y_max, 110);
  const int w = f.right - f.left, h = f.bottom - f.top;
  for (int py = 0; py < h; ++py) {
    const auto r = std::min(rows - 1, static_cast<std::size_t>((h - 1 - py) * static_cast<double>(rows) / h));
    for (int px = 0; px < w; ++px) {
      const auto col = std::min(cols - 1, static_cast<std::size_t>(px * static_cast<double>(cols) / w));
      c.set(f.left + 1 + px, f.top + py, colormap((values[r * cols + col] - lo) / (hi - lo), options.symmetric));
    }
  }
  // Color bar.
  const int bx = f.right + 20;
  for (int py = 0; py <= h; ++py) {
    c.rect(bx, f.bottom - py, bx + 15, f.bottom - py, colormap(static_cast<double>(py) / h, options.symmetric));
  }
  c.text(bx + 20, f.top, tick_label(hi), 1, kBlack);
  c.text(bx + 20, f.bottom - 7, tick_label(lo), 1, kBlack);
  c.save_png(path);
}

}  // namespace wavefprint
