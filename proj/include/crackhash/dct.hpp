#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "crackhash/matrix.hpp"

namespace crackhash {

namespace detail {

// Orthonormal DCT-II basis: basis[k*n + i] = s_k * cos(pi*(2i+1)*k / (2n)),
// s_0 = sqrt(1/n), s_k = sqrt(2/n) for k > 0.
inline std::vector<double> dct_basis(int n) {
  std::vector<double> basis(static_cast<std::size_t>(n) * n);
  const double s0 = std::sqrt(1.0 / n);
  const double sk = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      basis[static_cast<std::size_t>(k) * n + i] =
          (k == 0 ? s0 : sk) *
          std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
    }
  }
  return basis;
}

// 1D orthonormal DCT-II of `n` strided values. The AC coefficients are
// computed on mean-removed samples; this is algebraically identical (the AC
// basis vectors are orthogonal to the constant) and makes constant inputs
// transform to exact zeros instead of accumulated rounding residue.
inline void dct_1d(const double* in, std::size_t in_stride, double* out,
                   std::size_t out_stride, int n, const std::vector<double>& basis) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += in[i * in_stride];
  const double mean = sum / n;
  out[0] = basis[0] * sum;
  for (int k = 1; k < n; ++k) {
    const double* row = basis.data() + static_cast<std::size_t>(k) * n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += (in[i * in_stride] - mean) * row[i];
    out[k * out_stride] = acc;
  }
}

}  // namespace detail

// 2D orthonormal DCT-II: transform every row, then every column of the
// row-transformed plane. Input must be square with side >= 2.
inline Matrix dct2d(const Matrix& m) {
  if (m.width != m.height) throw std::invalid_argument("dct2d: matrix must be square");
  const int n = m.width;
  if (n < 2) throw std::invalid_argument("dct2d: side must be >= 2");
  const std::vector<double> basis = detail::dct_basis(n);
  Matrix tmp(n, n), out(n, n);
  for (int y = 0; y < n; ++y) {
    detail::dct_1d(m.v.data() + static_cast<std::size_t>(y) * n, 1,
                   tmp.v.data() + static_cast<std::size_t>(y) * n, 1, n, basis);
  }
  for (int x = 0; x < n; ++x) {
    detail::dct_1d(tmp.v.data() + x, n, out.v.data() + x, n, n, basis);
  }
  return out;
}

}  // namespace crackhash
