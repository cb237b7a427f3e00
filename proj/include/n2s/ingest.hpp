// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "n2s/image.hpp"
#include "n2s/vec.hpp"

namespace n2s::ingest {

// OPENCV-style camera model: pinhole + radial (k1,k2) and tangential (p1,p2)
// distortion, pixel units.
struct CameraIntrinsics {
  int width = 0, height = 0;
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  double k1 = 0, k2 = 0, p1 = 0, p2 = 0;

  void validate() const;

  // Proportionally rescaled intrinsics for a different render resolution.
  CameraIntrinsics scaled(int new_width, int new_height) const;
};

// Camera-to-world rigid transform.
struct Pose {
  Quatd rotation;      // unit quaternion (w,x,y,z)
  Vec3d translation;   // camera position in scene units

  Vec3d apply(Vec3d p_cam) const { return rotate(rotation, p_cam) + translation; }
  Vec3d apply_inverse(Vec3d p_world) const { return rotate(rotation.conjugate(), p_world - translation); }

  Pose inverse() const {
    Quatd rc = rotation.conjugate();
    return {rc, -rotate(rc, translation)};
  }
};

struct PosedImage {
  std::string name;
  Image image;
  Pose pose;  // camera-to-world
};

struct SceneDataset {
  CameraIntrinsics camera;
  std::vector<PosedImage> images;
  Box3d scene_bounds;
};

// Variance of the 4-neighbor Laplacian of the grayscale image ((R+G+B)/3),
// replicate-padded; higher means sharper. Requires H,W >= 3.
double sharpness_score(const Image& image);

// Splits [0, frame_count) into n contiguous partitions (remainder frames go
// to the leading partitions) and picks the sharpest frame of each; ties go
// to the earliest index. Indices are strictly increasing.
std::vector<int> select_keyframes(const std::vector<Image>& frames, int n);
std::vector<int> select_keyframes_from_scores(const std::vector<double>& scores, int n);

// Sparse-text camera export: '#' comments, then per camera
//   CAMERA_ID MODEL WIDTH HEIGHT fx fy cx cy k1 k2 p1 p2
// Exactly one OPENCV camera is required.
CameraIntrinsics parse_sfm_cameras(const std::string& text);

// Sparse-text image export: per image a line
//   IMAGE_ID QW QX QY QZ TX TY TZ CAMERA_ID NAME
// followed by a (skipped) 2D-point line. The stored quaternion/translation
// are world-to-camera and are returned converted to camera-to-world.
std::vector<std::pair<std::string, Pose>> parse_sfm_images(const std::string& text);

// Writers emitting the same text layout (world-to-camera on disk).
std::string write_sfm_cameras(const CameraIntrinsics& camera);
std::string write_sfm_images(const std::vector<std::pair<std::string, Pose>>& images);

// Assembles the dataset; scene_bounds is the axis-aligned box of the camera
// positions grown about its center by margin_factor (degenerate axes get a
// 1e-6 epsilon).
SceneDataset build_dataset(std::vector<std::pair<std::string, Image>> images,
                           const std::vector<std::pair<std::string, Pose>>& poses,
                           const CameraIntrinsics& camera, double margin_factor = 2.0);

}  // namespace n2s::ingest
