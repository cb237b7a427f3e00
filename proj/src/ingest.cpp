// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "n2s/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "n2s/errors.hpp"

namespace n2s::ingest {

namespace {

int reflect_clamp(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

void CameraIntrinsics::validate() const {
  if (width <= 0 || height <= 0) throw DataError("camera resolution must be positive");
  if (fx <= 0 || fy <= 0) throw DataError("focal lengths must be positive");
  if (cx < 0 || cx >= width || cy < 0 || cy >= height)
    throw DataError("principal point outside the image");
}

CameraIntrinsics CameraIntrinsics::scaled(int new_width, int new_height) const {
  CameraIntrinsics s = *this;
  const double sx = static_cast<double>(new_width) / width;
  const double sy = static_cast<double>(new_height) / height;
  s.width = new_width;
  s.height = new_height;
  s.fx = fx * sx;
  s.fy = fy * sy;
  s.cx = cx * sx;
  s.cy = cy * sy;
  return s;
}

double sharpness_score(const Image& image) {
  const int w = image.width, h = image.height;
  if (w < 3 || h < 3) throw DataError("image too small");

  std::vector<float> gray(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Vec3f p = image.pixel(x, y);
      gray[static_cast<size_t>(y) * w + x] = (p.x + p.y + p.z) / 3.0f;
    }

  auto g = [&](int x, int y) {
    return static_cast<double>(gray[static_cast<size_t>(reflect_clamp(y, h)) * w + reflect_clamp(x, w)]);
  };

  // 4-neighbor Laplacian, replicate padding; variance over all responses.
  double sum = 0.0, sum_sq = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double r = g(x - 1, y) + g(x + 1, y) + g(x, y - 1) + g(x, y + 1) - 4.0 * g(x, y);
      sum += r;
      sum_sq += r * r;
    }
  const double n = static_cast<double>(w) * h;
  const double mean = sum / n;
  return std::max(0.0, sum_sq / n - mean * mean);
}

std::vector<int> select_keyframes_from_scores(const std::vector<double>& scores, int n) {
  if (n < 1) throw DataError("keyframe count must be >= 1");
  const int count = static_cast<int>(scores.size());
  if (count == 0 || n > count) throw DataError("too few frames");

  std::vector<int> picks;
  picks.reserve(n);
  const int base = count / n, rem = count % n;
  int begin = 0;
  for (int p = 0; p < n; ++p) {
    const int len = base + (p < rem ? 1 : 0);
    int best = begin;
    for (int i = begin + 1; i < begin + len; ++i)
      if (scores[i] > scores[best]) best = i;
    picks.push_back(best);
    begin += len;
  }
  return picks;
}

std::vector<int> select_keyframes(const std::vector<Image>& frames, int n) {
  std::vector<double> scores(frames.size());
  for (size_t i = 0; i < frames.size(); ++i) scores[i] = sharpness_score(frames[i]);
  return select_keyframes_from_scores(scores, n);
}

CameraIntrinsics parse_sfm_cameras(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<CameraIntrinsics> cameras;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() < 2) throw DataError("malformed camera line " + std::to_string(line_no));
    const std::string& model = toks[1];
    if (model != "OPENCV") throw DataError("unknown model " + model);
    if (toks.size() != 12) throw DataError("malformed camera line " + std::to_string(line_no));
    CameraIntrinsics cam;
    try {
      cam.width = std::stoi(toks[2]);
      cam.height = std::stoi(toks[3]);
      cam.fx = std::stod(toks[4]);
      cam.fy = std::stod(toks[5]);
      cam.cx = std::stod(toks[6]);
      cam.cy = std::stod(toks[7]);
      cam.k1 = std::stod(toks[8]);
      cam.k2 = std::stod(toks[9]);
      cam.p1 = std::stod(toks[10]);
      cam.p2 = std::stod(toks[11]);
    } catch (const std::exception&) {
      throw DataError("malformed camera line " + std::to_string(line_no));
    }
    cam.validate();
    cameras.push_back(cam);
  }
  if (cameras.size() != 1) throw DataError("expected exactly one camera");
  return cameras[0];
}

std::vector<std::pair<std::string, Pose>> parse_sfm_images(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<std::string, Pose>> out;
  int line_no = 0;
  bool expect_points_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (expect_points_line) {  // 2D-point line; contents unused
      expect_points_line = false;
      continue;
    }
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 10) throw DataError("malformed image line " + std::to_string(line_no));
    Quatd q;
    Vec3d t;
    try {
      q.w = std::stod(toks[1]);
      q.x = std::stod(toks[2]);
      q.y = std::stod(toks[3]);
      q.z = std::stod(toks[4]);
      t.x = std::stod(toks[5]);
      t.y = std::stod(toks[6]);
      t.z = std::stod(toks[7]);
    } catch (const std::exception&) {
      throw DataError("malformed image line " + std::to_string(line_no));
    }
    if (std::abs(q.norm() - 1.0) > 1e-3)
      throw DataError("non-normalized quaternion at line " + std::to_string(line_no));
    q = q.normalized();

    // Stored transform is world-to-camera; invert to camera-to-world.
    Pose pose;
    pose.rotation = q.conjugate();
    pose.translation = -rotate(q.conjugate(), t);
    out.emplace_back(toks[9], pose);
    expect_points_line = true;
  }
  return out;
}

std::string write_sfm_cameras(const CameraIntrinsics& c) {
  std::ostringstream out;
  out.precision(17);
  out << "# Camera list: CAMERA_ID MODEL WIDTH HEIGHT PARAMS[]\n";
  out << 1 << " OPENCV " << c.width << " " << c.height << " " << c.fx << " " << c.fy << " "
      << c.cx << " " << c.cy << " " << c.k1 << " " << c.k2 << " " << c.p1 << " " << c.p2 << "\n";
  return out.str();
}

std::string write_sfm_images(const std::vector<std::pair<std::string, Pose>>& images) {
  std::ostringstream out;
  out.precision(17);
  out << "# Image list: IMAGE_ID QW QX QY QZ TX TY TZ CAMERA_ID NAME\n";
  int id = 1;
  for (const auto& [name, pose] : images) {
    const Pose w2c = pose.inverse();
    Quatd q = w2c.rotation;
    if (q.w < 0) q = {-q.w, -q.x, -q.y, -q.z};  // canonical hemisphere
    out << id++ << " " << q.w << " " << q.x << " " << q.y << " " << q.z << " "
        << w2c.translation.x << " " << w2c.translation.y << " " << w2c.translation.z
        << " 1 " << name << "\n";
    out << "\n";  // empty 2D-point line
  }
  return out.str();
}

SceneDataset build_dataset(std::vector<std::pair<std::string, Image>> images,
                           const std::vector<std::pair<std::string, Pose>>& poses,
                           const CameraIntrinsics& camera, double margin_factor) {
  camera.validate();
  std::map<std::string, Image> by_name;
  for (auto& [name, image] : images) by_name.emplace(name, std::move(image));

  SceneDataset ds;
  ds.camera = camera;
  std::string missing;
  for (const auto& [name, pose] : poses) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      missing += missing.empty() ? name : (", " + name);
      continue;
    }
    PosedImage pi;
    pi.name = name;
    pi.image = std::move(it->second);
    pi.pose = pose;
    if (pi.image.width != camera.width || pi.image.height != camera.height)
      throw DataError("image dimensions do not match camera: " + name);
    ds.images.push_back(std::move(pi));
    by_name.erase(it);
  }
  if (!missing.empty()) throw DataError("missing image files: " + missing);
  if (ds.images.empty()) throw DataError("dataset is empty");

  Box3d cams;
  for (const auto& pi : ds.images) cams.expand(pi.pose.translation);
  const Vec3d center = cams.center();
  Vec3d half = (cams.hi - cams.lo) * 0.5 * margin_factor;
  const double eps = 1e-6;
  half.x = std::max(half.x, eps);
  half.y = std::max(half.y, eps);
  half.z = std::max(half.z, eps);
  ds.scene_bounds.lo = center - half;
  ds.scene_bounds.hi = center + half;
  return ds;
}

}  // namespace n2s::ingest
