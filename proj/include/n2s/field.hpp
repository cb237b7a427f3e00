// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "n2s/vec.hpp"

namespace n2s::field {

// Multiresolution hash-grid encoding. Corner features are looked up through
// a fixed spatial hash (coordinates multiplied by the primes 1, 2654435761,
// 805459861 in 32-bit arithmetic and XORed, masked to the table size) and
// trilinearly interpolated; levels are concatenated coarse to fine.
struct HashGridConfig {
  int levels = 12;
  uint32_t table_size = 1u << 20;  // power of two
  int features_per_level = 2;
  int base_resolution = 16;
  // Geometric growth per level; <= 0 derives it so the finest level has
  // finest_resolution cells per axis.
  double per_level_scale = 0.0;
  int finest_resolution = 2048;

  double scale() const;
  int resolution(int level) const;
  int encoding_dim() const { return levels * features_per_level; }
  size_t param_count() const {
    return static_cast<size_t>(levels) * table_size * features_per_level;
  }
  void validate() const;
};

struct FieldConfig {
  HashGridConfig grid;           // main field
  HashGridConfig proposal_grid;  // proposal density field
  int mlp_width = 64;
  int mlp_depth = 2;       // hidden layers in the trunk(s)
  int view_width = 32;     // view-branch hidden width
  int view_frequencies = 4;
  double density_bias = -5.0;
  // World-to-contraction normalization baked into the trained field.
  Vec3d scene_center{0, 0, 0};
  double scene_radius = 1.0;

  FieldConfig() {
    proposal_grid.levels = 8;
    proposal_grid.table_size = 1u << 18;
    proposal_grid.finest_resolution = 512;
  }

  int view_encoding_dim() const { return 6 * view_frequencies; }
  // Layer-normalized trunk features plus the per-axis covariance and its mean.
  int final_input_dim() const { return mlp_width + 4; }
  int view_input_dim() const { return final_input_dim() + view_encoding_dim(); }
  void validate() const;
};

// Offsets into the flat parameter vector. Order here is the checkpoint order.
struct ParamLayout {
  struct Span {
    size_t offset = 0;
    size_t count = 0;
  };

  Span grid;
  std::vector<Span> trunk_w, trunk_b;
  Span density_w, density_b;
  Span ln_gamma, ln_beta;
  Span diffuse_w, diffuse_b;
  Span view_w, view_b;
  Span specular_w, specular_b;
  Span prop_grid;
  std::vector<Span> prop_w, prop_b;
  Span prop_density_w, prop_density_b;
  size_t total = 0;

  static ParamLayout build(const FieldConfig& config);
};

template <class T>
struct FieldParams {
  FieldConfig config;
  ParamLayout layout;
  std::vector<T> values;

  const T* seg(const ParamLayout::Span& s) const { return values.data() + s.offset; }
  T* seg(const ParamLayout::Span& s) { return values.data() + s.offset; }

  template <class U>
  FieldParams<U> cast() const {
    FieldParams<U> out;
    out.config = config;
    out.layout = layout;
    out.values.assign(values.begin(), values.end());
    return out;
  }
};

// Hash tables uniform in [-1e-4, 1e-4]; dense weights Kaiming-style uniform
// scaled by fan-in; zero biases; layer-norm scale 1, offset 0.
template <class T>
FieldParams<T> init_params(const FieldConfig& config, uint64_t seed);

template <class T>
bool all_finite(const FieldParams<T>& params);

template <class T>
struct RadianceSample {
  T density = 0;
  Vec3<T> diffuse{};
  Vec3<T> specular{};
  Vec3<T> color{};
};

// Per-thread activation storage. One ray's worth of samples can be cached so
// the backward pass reuses the forward activations; memory stays bounded by
// samples-per-ray, never by batch size.
template <class T>
struct FieldScratch {
  std::vector<T> enc, act0, act1, h0, h1, ln_out, final_in, view_in, vact, v0;
  std::vector<T> d_buf0, d_buf1, d_final, d_view;
  T raw_density = 0, ln_mean = 0, ln_rstd = 0;
  Vec3<T> raw_diffuse{}, raw_specular{};

  void resize(const FieldConfig& config);
};

template <class T>
void hash_encode(const HashGridConfig& grid, const T* tables, Vec3<T> pos01, T* out);

// Scatter-adds the encoding gradient into the table gradient and optionally
// accumulates the position gradient.
template <class T>
void hash_encode_backward(const HashGridConfig& grid, const T* tables, Vec3<T> pos01,
                          const T* d_out, T* d_tables, Vec3<T>* d_pos);

// squareplus(x) = (x + sqrt(x^2 + 4)) / 2; positive everywhere, ~relu for
// large x.
template <class T>
T squareplus(T x) {
  return (x + std::sqrt(x * x + T(4))) / T(2);
}
template <class T>
T squareplus_grad(T x) {
  return (T(1) + x / std::sqrt(x * x + T(4))) / T(2);
}

template <class T>
T swish(T x) {
  return x / (T(1) + std::exp(-x));
}
template <class T>
T sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

// Full forward evaluation; fills scratch with the activations needed by
// field_backward_cached.
template <class T>
RadianceSample<T> field_forward(const FieldParams<T>& params, Vec3<T> pos01, Vec3<T> sigma,
                                Vec3<T> view_dir, FieldScratch<T>& scratch);

// Reverse-mode gradients for one sample. Requires scratch as left by
// field_forward for the same inputs. Accumulates into grad (flat layout) and
// optionally the gradient w.r.t. pos01.
template <class T>
void field_backward_cached(const FieldParams<T>& params, Vec3<T> pos01, Vec3<T> sigma,
                           Vec3<T> view_dir, T d_density, Vec3<T> d_color,
                           FieldScratch<T>& scratch, std::vector<T>& grad,
                           Vec3<T>* d_pos = nullptr);

// Recomputes the forward pass, then backpropagates.
template <class T>
void field_backward(const FieldParams<T>& params, Vec3<T> pos01, Vec3<T> sigma,
                    Vec3<T> view_dir, T d_density, Vec3<T> d_color, std::vector<T>& grad,
                    Vec3<T>* d_pos = nullptr);

// Density-only proposal field (no view branch, no covariance input).
template <class T>
T proposal_forward(const FieldParams<T>& params, Vec3<T> pos01, FieldScratch<T>& scratch);

template <class T>
void proposal_backward_cached(const FieldParams<T>& params, Vec3<T> pos01, T d_density,
                              FieldScratch<T>& scratch, std::vector<T>& grad);

template <class T>
void proposal_backward(const FieldParams<T>& params, Vec3<T> pos01, T d_density,
                       std::vector<T>& grad);

// ---- Checkpoint I/O ----
// Layout: magic "N2SF" | u32 version | u32 json_len | config json |
// parameter array as little-endian f32 in layout order | optional training
// state (u64 step + adam moments, also f32).
struct TrainState {
  uint64_t step = 0;
  std::vector<float> m, v;
};

void save_checkpoint(const std::string& path, const FieldParams<float>& params,
                     const TrainState* train_state = nullptr);
FieldParams<float> load_checkpoint(const std::string& path, TrainState* train_state = nullptr);

}  // namespace n2s::field
