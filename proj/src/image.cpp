// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "n2s/image.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "n2s/errors.hpp"

namespace n2s {

namespace {

uint8_t to_byte(float v) {
  float s = clamp(v, 0.0f, 1.0f) * 255.0f;
  return static_cast<uint8_t>(std::lround(s));
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Mirror index about the edge pixel: -1 -> 1, n -> n-2.
int reflect(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * n - 2 - i;
  }
  return i;
}

}  // namespace

Image load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  in.close();
  if (magic[0] == 'P' && magic[1] == '6') return load_ppm(path);
  return load_png(path);
}

void save_png(const std::string& path, const Image& image) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw DataError("cannot open for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw DataError("png write failed: " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<uint8_t> row(static_cast<size_t>(image.width) * 3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x)
      for (int c = 0; c < 3; ++c) row[x * 3 + c] = to_byte(image.at(x, y, c));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Image load_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw DataError("cannot open image file: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("png read failed: " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  if (png_get_channels(png, info) != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("unsupported png channel layout: " + path);
  }

  Image image(w, h);
  std::vector<uint8_t> row(static_cast<size_t>(w) * 3);
  for (int y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) image.at(x, y, c) = row[x * 3 + c] / 255.0f;
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

void save_ppm(const std::string& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  std::vector<uint8_t> row(static_cast<size_t>(image.width) * 3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x)
      for (int c = 0; c < 3; ++c) row[x * 3 + c] = to_byte(image.at(x, y, c));
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
}

Image load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw DataError("not a binary ppm: " + path);
  auto next_token = [&in, &path]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw DataError("truncated ppm header: " + path);
  };
  int w = std::stoi(next_token());
  int h = std::stoi(next_token());
  int maxval = std::stoi(next_token());
  if (w <= 0 || h <= 0 || maxval != 255) throw DataError("unsupported ppm header: " + path);
  in.get();  // single whitespace after maxval

  Image image(w, h);
  std::vector<uint8_t> buf(static_cast<size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw DataError("truncated ppm payload: " + path);
  for (size_t i = 0; i < buf.size(); ++i) image.data[i] = buf[i] / 255.0f;
  return image;
}

void save_pfm(const std::string& path, const std::vector<float>& values, int width, int height) {
  if (values.size() != static_cast<size_t>(width) * height)
    throw DataError("pfm size mismatch: " + path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "Pf\n" << width << " " << height << "\n-1.0\n";  // -1: little-endian
  for (int y = height - 1; y >= 0; --y)
    out.write(reinterpret_cast<const char*>(values.data() + static_cast<size_t>(y) * width),
              static_cast<std::streamsize>(width) * 4);
}

std::vector<float> load_pfm(const std::string& path, int& width, int& height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path);
  std::string magic;
  double scale;
  in >> magic >> width >> height >> scale;
  if (magic != "Pf" || scale >= 0) throw DataError("unsupported pfm header: " + path);
  in.get();
  std::vector<float> values(static_cast<size_t>(width) * height);
  for (int y = height - 1; y >= 0; --y)
    in.read(reinterpret_cast<char*>(values.data() + static_cast<size_t>(y) * width),
            static_cast<std::streamsize>(width) * 4);
  if (!in) throw DataError("truncated pfm payload: " + path);
  return values;
}

Image gaussian_blur(const Image& image, float sigma) {
  if (sigma <= 0.0f) return image;
  const int radius = static_cast<int>(std::ceil(3.0f * sigma));
  std::vector<float> kernel(2 * radius + 1);
  float sum = 0.0f;
  for (int i = -radius; i <= radius; ++i) {
    float v = std::exp(-0.5f * (i * i) / (sigma * sigma));
    kernel[i + radius] = v;
    sum += v;
  }
  for (float& v : kernel) v /= sum;

  const int w = image.width, h = image.height;
  Image tmp(w, h), out(w, h);
  // Horizontal pass.
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float acc[3] = {0, 0, 0};
      for (int k = -radius; k <= radius; ++k) {
        int xi = reflect(x + k, w);
        float kv = kernel[k + radius];
        for (int c = 0; c < 3; ++c) acc[c] += kv * image.at(xi, y, c);
      }
      for (int c = 0; c < 3; ++c) tmp.at(x, y, c) = acc[c];
    }
  // Vertical pass.
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float acc[3] = {0, 0, 0};
      for (int k = -radius; k <= radius; ++k) {
        int yi = reflect(y + k, h);
        float kv = kernel[k + radius];
        for (int c = 0; c < 3; ++c) acc[c] += kv * tmp.at(x, yi, c);
      }
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = acc[c];
    }
  return out;
}

}  // namespace n2s
