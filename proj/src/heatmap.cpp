#include "mtgb/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mtgb/error.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

void check_layer_range(const HeadMatrix& matrix, LayerRange range) {
  if (range.first > range.last || range.last >= matrix.n_layers) {
    throw ValidationError("layer range " + std::to_string(range.first) + "-" + std::to_string(range.last) +
                          " is outside 0-" + std::to_string(matrix.n_layers == 0 ? 0 : matrix.n_layers - 1));
  }
}

std::string heatmap_csv(const HeadMatrix& matrix, LayerRange range) {
  check_layer_range(matrix, range);
  std::string out;
  char buf[32];
  for (std::size_t l = range.last + 1; l-- > range.first;) {
    for (std::size_t h = 0; h < matrix.n_heads; ++h) {
      std::snprintf(buf, sizeof buf, "%.4f", matrix.at(l, h));
      if (h > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::array<std::uint8_t, 3> heat_color(double value, ColorScale scale) {
  double t = 0.0;
  if (scale.hi > scale.lo) t = std::clamp((value - scale.lo) / (scale.hi - scale.lo), 0.0, 1.0);
  // white (255,255,255) -> dark blue (8,48,107)
  auto mix = [t](double a, double b) { return static_cast<std::uint8_t>(std::lround(a + (b - a) * t)); };
  return {mix(255, 8), mix(255, 48), mix(255, 107)};
}

RgbImage render_heatmap(const HeadMatrix& matrix, LayerRange range, std::optional<ColorScale> anchor,
                        std::size_t cell_px) {
  check_layer_range(matrix, range);
  if (cell_px == 0) throw ValidationError("cell size must be positive");
  ColorScale scale;
  if (anchor) {
    scale = *anchor;
  } else {
    scale = {1.0, 0.0};
    for (auto l = range.first; l <= range.last; ++l) {
      for (std::size_t h = 0; h < matrix.n_heads; ++h) {
        scale.lo = std::min(scale.lo, matrix.at(l, h));
        scale.hi = std::max(scale.hi, matrix.at(l, h));
      }
    }
  }
  RgbImage img;
  img.width = matrix.n_heads * cell_px;
  img.height = range.size() * cell_px;
  img.pixels.resize(img.width * img.height * 3);
  for (std::size_t y = 0; y < img.height; ++y) {
    const auto layer = range.last - y / cell_px;
    for (std::size_t x = 0; x < img.width; ++x) {
      const auto c = heat_color(matrix.at(layer, x / cell_px), scale);
      std::copy(c.begin(), c.end(), img.pixels.begin() + static_cast<std::ptrdiff_t>((y * img.width + x) * 3));
    }
  }
  return img;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  text::write_file(path, out);
}

RgbImage read_ppm(const std::filesystem::path& path) {
  const auto raw = text::read_file(path);
  std::istringstream in(raw);
  std::string magic;
  std::size_t w = 0;
  std::size_t h = 0;
  int maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (!in || magic != "P6" || maxval != 255) throw ValidationError(path.string() + ": not a binary 8-bit PPM");
  const auto header = static_cast<std::size_t>(in.tellg()) + 1;  // single whitespace byte
  RgbImage img{w, h, {}};
  if (raw.size() != header + w * h * 3) throw ValidationError(path.string() + ": truncated PPM");
  img.pixels.assign(raw.begin() + static_cast<std::ptrdiff_t>(header), raw.end());
  return img;
}

void export_heatmap(const HeadMatrix& matrix, LayerRange range, std::optional<ColorScale> anchor,
                    const std::filesystem::path& stem) {
  auto csv = stem;
  csv += ".csv";
  auto ppm = stem;
  ppm += ".ppm";
  text::write_file(csv, heatmap_csv(matrix, range));
  write_ppm(ppm, render_heatmap(matrix, range, anchor));
}

}  // namespace mtgb
