/*
 * Copyright 2026 The Birdseye Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BIRDSEYE_FRAMES_HPP_
#define BIRDSEYE_FRAMES_HPP_

#include <Eigen/Dense>

#include "birdseye/grid.hpp"

namespace birdseye {

enum class FrameTag { kWorld, kCamera, kMap };

// A point that remembers its frame. Cross-frame arithmetic is rejected at
// call time, which keeps transform plumbing honest.
struct FramePoint {
  FrameTag frame = FrameTag::kWorld;
  Eigen::Vector3d coords = Eigen::Vector3d::Zero();
};

// Homogeneous rigid transform with validated structure: unit bottom row and
// an orthonormal rotation block (within 1e-9).
class Pose4 {
 public:
  explicit Pose4(const Eigen::Matrix4d& matrix);

  const Eigen::Matrix4d& matrix() const { return matrix_; }
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;
  Pose4 inverse() const;

  friend Pose4 operator*(const Pose4& lhs, const Pose4& rhs) {
    return Pose4(lhs.matrix_ * rhs.matrix_);
  }

 private:
  Eigen::Matrix4d matrix_;
};

// World -> camera: a fixed pi rotation about the y axis, so the rotation
// block is diag(-1, 1, -1), plus the given translation column.
Pose4 camera_from_world(const Eigen::Vector3d& origin);

// Camera -> map: a fixed composition of pi/2 and pi rotations; the rotation
// block evaluates to rows (0,-1,0), (-1,0,0), (0,0,-1).
Pose4 map_from_camera(const Eigen::Vector3d& origin);

struct FrameConfig {
  double cell_size_m = 0.5;              // meters per grid cell
  Eigen::Vector3d camera_origin_w = Eigen::Vector3d::Zero();
  Eigen::Vector3d map_origin_c = Eigen::Vector3d::Zero();
};

Pose4 map_from_world(const FrameConfig& config);  // composition of the two

FramePoint world_to_camera(const FramePoint& p, const Eigen::Vector3d& origin);
FramePoint camera_to_map(const FramePoint& p, const Eigen::Vector3d& origin);
FramePoint world_to_map(const FramePoint& p, const FrameConfig& config);
FramePoint map_to_world(const FramePoint& p, const FrameConfig& config);

// Cell-center convention: cell (r, c) sits at ((c + 0.5) s, (r + 0.5) s, 0)
// in the map frame with s meters per cell.
FramePoint map_point_from_cell(Cell cell, double cell_size_m);
Cell cell_from_map_point(const FramePoint& p, double cell_size_m);

}  // namespace birdseye

#endif  // BIRDSEYE_FRAMES_HPP_
