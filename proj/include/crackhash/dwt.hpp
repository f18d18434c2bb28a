#pragma once

#include <numbers>
#include <stdexcept>
#include <vector>

#include "crackhash/matrix.hpp"

namespace crackhash {

enum class Wavelet { Haar, Db4 };

namespace detail {

// Orthonormal scaling (low-pass analysis) coefficients. Haar is Daubechies 1;
// Db4 is the 8-tap Daubechies filter with four vanishing moments.
inline const std::vector<double>& scaling_coeffs(Wavelet w) {
  static const std::vector<double> haar = {
      1.0 / std::numbers::sqrt2,
      1.0 / std::numbers::sqrt2,
  };
  static const std::vector<double> db4 = {
      0.23037781330885523,   0.7148465705525415,   0.6308807679295904,
      -0.02798376941698385,  -0.18703481171888114, 0.030841381835986965,
      0.032883011666982945,  -0.010597401784997278,
  };
  return w == Wavelet::Haar ? haar : db4;
}

// Quadrature mirror high-pass: g[j] = (-1)^j * h[L-1-j].
inline std::vector<double> wavelet_coeffs(Wavelet w) {
  const std::vector<double>& h = scaling_coeffs(w);
  std::vector<double> g(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    g[j] = (j % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - j];
  }
  return g;
}

// One analysis half-band of `n` strided values with periodic extension:
// out[k] = sum_j f[j] * in[(2k + j) mod n].
inline void filter_downsample(const double* in, std::size_t stride, int n,
                              const std::vector<double>& f, std::vector<double>& out) {
  const int half = n / 2;
  out.resize(half);
  for (int k = 0; k < half; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const int idx = (2 * k + static_cast<int>(j)) % n;
      acc += f[j] * in[idx * stride];
    }
    out[k] = acc;
  }
}

}  // namespace detail

// One level of separable 2D analysis: rows split into low/high halves, then
// every column of each half split again.
struct DwtBands {
  Matrix ll, lh, hl, hh;
};

inline DwtBands dwt2d_analyze(const Matrix& m, Wavelet wavelet) {
  if (m.width != m.height) throw std::invalid_argument("dwt2d: matrix must be square");
  const int n = m.width;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("dwt2d: side must be even");
  const std::vector<double>& lo = detail::scaling_coeffs(wavelet);
  const std::vector<double> hi = detail::wavelet_coeffs(wavelet);
  const int half = n / 2;

  Matrix row_lo(half, n), row_hi(half, n);
  std::vector<double> buf;
  for (int y = 0; y < n; ++y) {
    const double* row = m.v.data() + static_cast<std::size_t>(y) * n;
    detail::filter_downsample(row, 1, n, lo, buf);
    for (int k = 0; k < half; ++k) row_lo.at(k, y) = buf[k];
    detail::filter_downsample(row, 1, n, hi, buf);
    for (int k = 0; k < half; ++k) row_hi.at(k, y) = buf[k];
  }

  DwtBands bands{Matrix(half, half), Matrix(half, half), Matrix(half, half),
                 Matrix(half, half)};
  for (int x = 0; x < half; ++x) {
    detail::filter_downsample(row_lo.v.data() + x, half, n, lo, buf);
    for (int k = 0; k < half; ++k) bands.ll.at(x, k) = buf[k];
    detail::filter_downsample(row_lo.v.data() + x, half, n, hi, buf);
    for (int k = 0; k < half; ++k) bands.lh.at(x, k) = buf[k];
    detail::filter_downsample(row_hi.v.data() + x, half, n, lo, buf);
    for (int k = 0; k < half; ++k) bands.hl.at(x, k) = buf[k];
    detail::filter_downsample(row_hi.v.data() + x, half, n, hi, buf);
    for (int k = 0; k < half; ++k) bands.hh.at(x, k) = buf[k];
  }
  return bands;
}

// LL approximation band after `levels` rounds of 2D analysis. Only the
// low/low branch is carried between rounds. Orthonormal filters give the
// band a gain of 2^levels on constant inputs.
inline Matrix dwt2d_ll(const Matrix& m, Wavelet wavelet, int levels) {
  if (levels < 0) throw std::invalid_argument("dwt2d_ll: levels must be >= 0");
  if (m.width != m.height) throw std::invalid_argument("dwt2d_ll: matrix must be square");
  if (levels > 0 && m.width % (1 << levels) != 0) {
    throw std::invalid_argument("dwt2d_ll: side must be divisible by 2^levels");
  }
  Matrix cur = m;
  for (int l = 0; l < levels; ++l) {
    cur = dwt2d_analyze(cur, wavelet).ll;
  }
  return cur;
}

}  // namespace crackhash
