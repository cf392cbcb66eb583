#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtgb/attention.hpp"

namespace mtgb {

/// Inclusive layer bounds.
struct LayerRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const { return last - first + 1; }
};

/// Value interval mapped onto the color ramp. Values outside are clamped.
struct ColorScale {
  double lo = 0.0;
  double hi = 1.0;
};

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // RGB, row-major
};

/// Throws ValidationError when the range is empty or exceeds the matrix.
void check_layer_range(const HeadMatrix& matrix, LayerRange range);

/// One line per layer, highest layer first; one column per head; 4 decimals.
std::string heatmap_csv(const HeadMatrix& matrix, LayerRange range);

/// White (lo) to dark blue (hi).
std::array<std::uint8_t, 3> heat_color(double value, ColorScale scale);

/// Cells of `cell_px` square pixels laid out like the CSV. Without an anchor
/// the scale spans the min and max of the displayed cells.
RgbImage render_heatmap(const HeadMatrix& matrix, LayerRange range, std::optional<ColorScale> anchor,
                        std::size_t cell_px = 16);

void write_ppm(const std::filesystem::path& path, const RgbImage& image);
RgbImage read_ppm(const std::filesystem::path& path);

/// Writes <stem>.csv and <stem>.ppm.
void export_heatmap(const HeadMatrix& matrix, LayerRange range, std::optional<ColorScale> anchor,
                    const std::filesystem::path& stem);

}  // namespace mtgb
