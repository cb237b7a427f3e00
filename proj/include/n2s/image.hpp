// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "n2s/vec.hpp"

namespace n2s {

// Interleaved RGB, row-major, values in [0,1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  Image() = default;
  Image(int w, int h, float fill = 0.0f) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, fill) {}

  size_t index(int x, int y, int c) const { return (static_cast<size_t>(y) * width + x) * 3 + c; }
  float& at(int x, int y, int c) { return data[index(x, y, c)]; }
  float at(int x, int y, int c) const { return data[index(x, y, c)]; }

  Vec3f pixel(int x, int y) const {
    size_t i = index(x, y, 0);
    return {data[i], data[i + 1], data[i + 2]};
  }
  void set_pixel(int x, int y, Vec3f v) {
    size_t i = index(x, y, 0);
    data[i] = v.x;
    data[i + 1] = v.y;
    data[i + 2] = v.z;
  }
};

// Loads PNG or binary PPM (P6), decided by file magic. 8-bit channels are
// mapped to [0,1] by dividing by 255.
Image load_image(const std::string& path);

void save_png(const std::string& path, const Image& image);
Image load_png(const std::string& path);

void save_ppm(const std::string& path, const Image& image);
Image load_ppm(const std::string& path);

// Single-channel 32-bit float PFM (little-endian, bottom-up rows).
void save_pfm(const std::string& path, const std::vector<float>& values, int width, int height);
std::vector<float> load_pfm(const std::string& path, int& width, int& height);

// Separable Gaussian blur, kernel truncated at 3*sigma and renormalized,
// reflect padding at the borders. sigma <= 0 returns the input unchanged.
Image gaussian_blur(const Image& image, float sigma);

}  // namespace n2s
