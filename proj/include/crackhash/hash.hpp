#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "crackhash/dct.hpp"
#include "crackhash/dwt.hpp"
#include "crackhash/image.hpp"
#include "crackhash/matrix.hpp"

namespace crackhash {

enum class HashAlgo { AHash, DHash, PHash, WHashHaar, WHashDb4 };

// How an image is brought down to the hash grid: plain box averaging or the
// Z-transform reduction.
enum class Reducer { Box, ZTransform };

struct Hash64 {
  std::uint64_t bits = 0;
  HashAlgo algo = HashAlgo::AHash;
  bool z_variant = false;
};

struct BitMatrix {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // row-major, one byte per bit
};

// bit = 1 iff value is strictly greater than the threshold.
inline BitMatrix binarize_gt(const Matrix& m, double threshold) {
  if (m.v.empty()) throw std::invalid_argument("binarize_gt: empty matrix");
  BitMatrix b{m.width, m.height, {}};
  b.bits.reserve(m.v.size());
  for (double x : m.v) b.bits.push_back(x > threshold ? 1 : 0);
  return b;
}

// Packs an 8x8 bit matrix MSB-first: bit (r, c) lands at integer bit
// position 63 - (8r + c), i.e. pixel (0,0) is the most significant bit.
inline std::uint64_t pack_bits(const BitMatrix& b) {
  if (b.width != 8 || b.height != 8) {
    throw std::invalid_argument("pack_bits: expected an 8x8 bit matrix");
  }
  std::uint64_t out = 0;
  for (std::uint8_t bit : b.bits) out = (out << 1) | (bit ? 1u : 0u);
  return out;
}

inline BitMatrix unpack_bits(std::uint64_t bits) {
  BitMatrix b{8, 8, std::vector<std::uint8_t>(64)};
  for (int i = 0; i < 64; ++i) {
    b.bits[i] = static_cast<std::uint8_t>((bits >> (63 - i)) & 1u);
  }
  return b;
}

// Hashes are fed to classifiers as plain doubles; values above 2^53 take
// the nearest representable (round-to-nearest-even) as usual.
inline double hash_to_float(const Hash64& h) { return static_cast<double>(h.bits); }

inline int hamming(const Hash64& a, const Hash64& b) {
  if (a.algo != b.algo || a.z_variant != b.z_variant) {
    throw std::invalid_argument("hamming: mismatched hash algorithms");
  }
  return std::popcount(a.bits ^ b.bits);
}

namespace detail {

// Z-reduction depth per hash grid: 3 halvings for the 8x8/9x8 grids
// (start 64x64 / 72x64), 2 for the 32x32/64x64 planes (start 128x128 /
// 256x256) to bound cost.
inline GrayImage reduce(const GrayImage& img, int w, int h, Reducer reducer,
                        int z_levels) {
  if (reducer == Reducer::Box) return resize_box(img, w, h);
  return z_reduce(img, w, h, ZReduceParams{kDefaultOmega, z_levels});
}

// Median as the mean of the two middle order statistics (even count).
inline double median(std::vector<double> vals) {
  std::sort(vals.begin(), vals.end());
  const std::size_t n = vals.size();
  return n % 2 != 0 ? vals[n / 2] : (vals[n / 2 - 1] + vals[n / 2]) / 2.0;
}

}  // namespace detail

// Average hash: reduce to 8x8, threshold at the arithmetic mean of the 64
// pixels, bit = 1 iff pixel is strictly larger than the mean.
inline Hash64 ahash(const GrayImage& img, Reducer reducer = Reducer::Box) {
  GrayImage r = detail::reduce(img, 8, 8, reducer, 3);
  int sum = 0;
  for (std::uint8_t p : r.data) sum += p;
  const double mean = sum / 64.0;
  BitMatrix b{8, 8, {}};
  b.bits.reserve(64);
  for (std::uint8_t p : r.data) b.bits.push_back(p > mean ? 1 : 0);
  return {pack_bits(b), HashAlgo::AHash, reducer == Reducer::ZTransform};
}

// Difference hash: reduce to 9 wide x 8 tall, compare each of the first 8
// pixels of a row with its right neighbor; bit = 1 unless the pixel is
// strictly smaller (equality assigns 1).
inline Hash64 dhash(const GrayImage& img, Reducer reducer = Reducer::Box) {
  GrayImage r = detail::reduce(img, 9, 8, reducer, 3);
  BitMatrix b{8, 8, {}};
  b.bits.reserve(64);
  for (int row = 0; row < 8; ++row) {
    for (int c = 0; c < 8; ++c) {
      b.bits.push_back(r.at(c, row) >= r.at(c + 1, row) ? 1 : 0);
    }
  }
  return {pack_bits(b), HashAlgo::DHash, reducer == Reducer::ZTransform};
}

// Perceptual hash: reduce to 32x32 (scaling factor 4), take the 2D DCT,
// crop the top-left 8x8 coefficient block and threshold it at its median
// (DC included).
inline Hash64 phash(const GrayImage& img, Reducer reducer = Reducer::Box) {
  GrayImage r = detail::reduce(img, 32, 32, reducer, 2);
  Matrix coeffs = dct2d(matrix_from_gray(r));
  Matrix block(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) block.at(x, y) = coeffs.at(x, y);
  }
  const double med = detail::median(block.v);
  return {pack_bits(binarize_gt(block, med)), HashAlgo::PHash,
          reducer == Reducer::ZTransform};
}

// Wavelet hash: reduce to 64x64, take three rounds of 2D analysis keeping
// the approximation band (8x8), threshold at its median.
inline Hash64 whash(const GrayImage& img, Wavelet wavelet,
                    Reducer reducer = Reducer::Box) {
  GrayImage r = detail::reduce(img, 64, 64, reducer, 2);
  Matrix ll = dwt2d_ll(matrix_from_gray(r), wavelet, 3);
  const double med = detail::median(ll.v);
  return {pack_bits(binarize_gt(ll, med)),
          wavelet == Wavelet::Haar ? HashAlgo::WHashHaar : HashAlgo::WHashDb4,
          reducer == Reducer::ZTransform};
}

inline constexpr int kFeatureCount = 10;

// Fixed feature order: the five plain hashes, then their Z-transform
// variants.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "ahash",   "dhash",   "phash",   "whash_haar",   "whash_db4",
    "z_ahash", "z_dhash", "z_phash", "z_whash_haar", "z_whash_db4",
};

using FeatureVector = std::array<double, kFeatureCount>;

inline std::array<Hash64, kFeatureCount> compute_hashes(const GrayImage& g) {
  return {
      ahash(g, Reducer::Box),
      dhash(g, Reducer::Box),
      phash(g, Reducer::Box),
      whash(g, Wavelet::Haar, Reducer::Box),
      whash(g, Wavelet::Db4, Reducer::Box),
      ahash(g, Reducer::ZTransform),
      dhash(g, Reducer::ZTransform),
      phash(g, Reducer::ZTransform),
      whash(g, Wavelet::Haar, Reducer::ZTransform),
      whash(g, Wavelet::Db4, Reducer::ZTransform),
  };
}

// The 10-value feature vector of an image, in the fixed order above.
inline FeatureVector extract_features(const RgbImage& img) {
  const GrayImage g = to_grayscale(img);
  const auto hashes = compute_hashes(g);
  FeatureVector f{};
  for (int i = 0; i < kFeatureCount; ++i) f[i] = hash_to_float(hashes[i]);
  return f;
}

}  // namespace crackhash
