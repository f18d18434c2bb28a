#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace crackhash {

// Row-major 8-bit luminance image.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height values

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: empty dimensions");
  }

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

// Row-major 8-bit RGB image, interleaved triples.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 3 * width * height values

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {
    if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: empty dimensions");
  }

  const std::uint8_t* pixel(int x, int y) const {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  std::uint8_t* pixel(int x, int y) {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
};

namespace detail {

// Half-up rounding, clamped to the byte range. Used everywhere a luminance
// value is produced so results are bit-exact across platforms.
inline std::uint8_t round_to_byte(double v) {
  double r = std::floor(v + 0.5);
  if (r < 0.0) return 0;
  if (r > 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

}  // namespace detail

// ITU-R BT.601 luma conversion.
inline GrayImage to_grayscale(const RgbImage& img) {
  GrayImage out(img.width, img.height);
  const std::uint8_t* src = img.data.data();
  for (std::size_t i = 0, n = out.data.size(); i < n; ++i, src += 3) {
    double luma = 0.299 * src[0] + 0.587 * src[1] + 0.114 * src[2];
    out.data[i] = detail::round_to_byte(luma);
  }
  return out;
}

// Area-weighted (box) downscale/upscale. Output pixel (ox, oy) is the mean
// of the source rectangle [ox*W/w, (ox+1)*W/w) x [oy*H/h, (oy+1)*H/h),
// with partially covered source pixels weighted by overlap area.
inline GrayImage resize_box(const GrayImage& img, int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("resize_box: target size must be >= 1");
  GrayImage out(w, h);
  for (int oy = 0; oy < h; ++oy) {
    const double y0 = static_cast<double>(oy) * img.height / h;
    const double y1 = static_cast<double>(oy + 1) * img.height / h;
    const int iy0 = static_cast<int>(std::floor(y0));
    const int iy1 = std::min(static_cast<int>(std::ceil(y1)), img.height);
    for (int ox = 0; ox < w; ++ox) {
      const double x0 = static_cast<double>(ox) * img.width / w;
      const double x1 = static_cast<double>(ox + 1) * img.width / w;
      const int ix0 = static_cast<int>(std::floor(x0));
      const int ix1 = std::min(static_cast<int>(std::ceil(x1)), img.width);
      double acc = 0.0, wsum = 0.0;
      for (int iy = iy0; iy < iy1; ++iy) {
        const double wy = std::min<double>(iy + 1, y1) - std::max<double>(iy, y0);
        if (wy <= 0.0) continue;
        for (int ix = ix0; ix < ix1; ++ix) {
          const double wx = std::min<double>(ix + 1, x1) - std::max<double>(ix, x0);
          if (wx <= 0.0) continue;
          acc += wx * wy * img.at(ix, iy);
          wsum += wx * wy;
        }
      }
      out.at(ox, oy) = detail::round_to_byte(acc / wsum);
    }
  }
  return out;
}

// Bilinear interpolation with pixel-center alignment; source coordinates
// are clamped at the borders.
inline GrayImage resize_bilinear(const GrayImage& img, int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("resize_bilinear: target size must be >= 1");
  GrayImage out(w, h);
  for (int oy = 0; oy < h; ++oy) {
    double sy = (oy + 0.5) * img.height / h - 0.5;
    if (sy < 0.0) sy = 0.0;
    if (sy > img.height - 1) sy = img.height - 1;
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fy = sy - y0;
    for (int ox = 0; ox < w; ++ox) {
      double sx = (ox + 0.5) * img.width / w - 0.5;
      if (sx < 0.0) sx = 0.0;
      if (sx > img.width - 1) sx = img.width - 1;
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double fx = sx - x0;
      const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
      const double bot = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
      out.at(ox, oy) = detail::round_to_byte((1.0 - fy) * top + fy * bot);
    }
  }
  return out;
}

inline constexpr double kDefaultOmega = std::numbers::pi / 4.0;

// Parameters of the Z-transform scale reduction. omega is the evaluation
// angle of z1 = z2 = e^{i*omega} on the unit circle; levels is the number
// of 2x halving steps applied by z_reduce.
struct ZReduceParams {
  double omega = kDefaultOmega;
  int levels = 3;
};

// Halves both dimensions by replacing each 2x2 block x[m][n] with the
// magnitude of its 2D Z-transform X = sum x[m][n] z1^-m z2^-n evaluated at
// z1 = z2 = e^{i*omega}, normalized by N = |1 + e^{-i*omega}|^2 so constant
// blocks map to their own value. With omega = 0 this degenerates to plain
// 2x2 box averaging (N = 4, |X| = block sum).
inline GrayImage z_halve(const GrayImage& img, double omega) {
  if (img.width % 2 != 0 || img.height % 2 != 0) {
    throw std::invalid_argument("z_halve: image dimensions must be even");
  }
  const double c1 = std::cos(omega), s1 = std::sin(omega);
  const double c2 = std::cos(2.0 * omega), s2 = std::sin(2.0 * omega);
  const double norm = 2.0 + 2.0 * c1;  // |1 + e^{-iw}|^2
  GrayImage out(img.width / 2, img.height / 2);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const double p00 = img.at(2 * x, 2 * y);
      const double p01 = img.at(2 * x + 1, 2 * y);
      const double p10 = img.at(2 * x, 2 * y + 1);
      const double p11 = img.at(2 * x + 1, 2 * y + 1);
      const double re = p00 + (p01 + p10) * c1 + p11 * c2;
      const double im = -(p01 + p10) * s1 - p11 * s2;
      out.at(x, y) = detail::round_to_byte(std::sqrt(re * re + im * im) / norm);
    }
  }
  return out;
}

// Scale reduction to an arbitrary target: bilinear resize to
// (target * 2^levels), then `levels` rounds of z_halve. The bilinear stage
// is needed because typical inputs (227x227) are not dyadic multiples of
// the hash grids.
inline GrayImage z_reduce(const GrayImage& img, int target_w, int target_h,
                          const ZReduceParams& params = {}) {
  if (target_w < 1 || target_h < 1) {
    throw std::invalid_argument("z_reduce: target size must be >= 1");
  }
  if (!(params.omega > 0.0 && params.omega < std::numbers::pi)) {
    throw std::invalid_argument("z_reduce: omega must lie in (0, pi)");
  }
  if (params.levels < 1) throw std::invalid_argument("z_reduce: levels must be >= 1");
  const int scale = 1 << params.levels;
  GrayImage cur = resize_bilinear(img, target_w * scale, target_h * scale);
  for (int i = 0; i < params.levels; ++i) cur = z_halve(cur, params.omega);
  return cur;
}

}  // namespace crackhash
