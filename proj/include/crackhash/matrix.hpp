#pragma once

#include <stdexcept>
#include <vector>

#include "crackhash/image.hpp"

namespace crackhash {

// Dense row-major matrix of doubles (DCT/DWT coefficient planes).
struct Matrix {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(int w, int h, double fill = 0.0)
      : width(w), height(h), v(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("Matrix: empty dimensions");
  }

  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
};

inline Matrix matrix_from_gray(const GrayImage& img) {
  Matrix m(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i) m.v[i] = img.data[i];
  return m;
}

}  // namespace crackhash
