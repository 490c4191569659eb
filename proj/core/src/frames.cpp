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

#include "birdseye/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace birdseye {

namespace {

constexpr double kPoseTol = 1e-9;

void expect_frame(const FramePoint& p, FrameTag tag, const char* what) {
  if (p.frame != tag) {
    throw std::invalid_argument(std::string("frame mismatch in ") + what);
  }
}

}  // namespace

Pose4::Pose4(const Eigen::Matrix4d& matrix) : matrix_(matrix) {
  const Eigen::RowVector4d bottom = matrix_.row(3);
  if ((bottom - Eigen::RowVector4d(0, 0, 0, 1)).norm() > kPoseTol) {
    throw std::invalid_argument("pose bottom row must be (0,0,0,1)");
  }
  const Eigen::Matrix3d r = matrix_.topLeftCorner<3, 3>();
  if ((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() > kPoseTol) {
    throw std::invalid_argument("pose rotation block must be orthonormal");
  }
}

Eigen::Vector3d Pose4::apply(const Eigen::Vector3d& p) const {
  return matrix_.topLeftCorner<3, 3>() * p + matrix_.topRightCorner<3, 1>();
}

Pose4 Pose4::inverse() const { return Pose4(matrix_.inverse()); }

Pose4 camera_from_world(const Eigen::Vector3d& origin) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = std::cos(M_PI);   // -1
  m(0, 2) = std::sin(M_PI);   //  0
  m(2, 0) = -std::sin(M_PI);  //  0
  m(2, 2) = std::cos(M_PI);   // -1
  m.topRightCorner<3, 1>() = origin;
  return Pose4(m);
}

Pose4 map_from_camera(const Eigen::Vector3d& origin) {
  const double half = M_PI / 2.0;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = std::cos(half);                  //  0
  m(0, 1) = -std::sin(half);                 // -1
  m(1, 0) = std::cos(M_PI) * std::sin(half); // -1
  m(1, 1) = std::cos(M_PI) * std::cos(half); //  0
  m(1, 2) = -std::sin(M_PI);                 //  0
  m(2, 0) = std::sin(M_PI) * std::sin(half); //  0
  m(2, 1) = std::sin(M_PI) * std::cos(half); //  0
  m(2, 2) = std::cos(M_PI);                  // -1
  m.topRightCorner<3, 1>() = origin;
  return Pose4(m);
}

Pose4 map_from_world(const FrameConfig& config) {
  return map_from_camera(config.map_origin_c) *
         camera_from_world(config.camera_origin_w);
}

FramePoint world_to_camera(const FramePoint& p, const Eigen::Vector3d& origin) {
  expect_frame(p, FrameTag::kWorld, "world_to_camera");
  return FramePoint{FrameTag::kCamera, camera_from_world(origin).apply(p.coords)};
}

FramePoint camera_to_map(const FramePoint& p, const Eigen::Vector3d& origin) {
  expect_frame(p, FrameTag::kCamera, "camera_to_map");
  return FramePoint{FrameTag::kMap, map_from_camera(origin).apply(p.coords)};
}

FramePoint world_to_map(const FramePoint& p, const FrameConfig& config) {
  expect_frame(p, FrameTag::kWorld, "world_to_map");
  return FramePoint{FrameTag::kMap, map_from_world(config).apply(p.coords)};
}

FramePoint map_to_world(const FramePoint& p, const FrameConfig& config) {
  expect_frame(p, FrameTag::kMap, "map_to_world");
  return FramePoint{FrameTag::kWorld,
                    map_from_world(config).inverse().apply(p.coords)};
}

FramePoint map_point_from_cell(Cell cell, double cell_size_m) {
  if (cell_size_m <= 0.0) throw std::invalid_argument("cell size must be positive");
  return FramePoint{FrameTag::kMap,
                    Eigen::Vector3d((cell.col + 0.5) * cell_size_m,
                                    (cell.row + 0.5) * cell_size_m, 0.0)};
}

Cell cell_from_map_point(const FramePoint& p, double cell_size_m) {
  expect_frame(p, FrameTag::kMap, "cell_from_map_point");
  if (cell_size_m <= 0.0) throw std::invalid_argument("cell size must be positive");
  return Cell{static_cast<int>(std::floor(p.coords.y() / cell_size_m)),
              static_cast<int>(std::floor(p.coords.x() / cell_size_m))};
}

}  // namespace birdseye
