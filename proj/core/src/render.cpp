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

#include "birdseye/render.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace birdseye {

namespace {

constexpr int kCellPx = 20;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string star_points(double cx, double cy, double outer, double inner) {
  std::string points;
  for (int i = 0; i < 10; ++i) {
    const double radius = (i % 2 == 0) ? outer : inner;
    const double angle = -M_PI / 2.0 + i * M_PI / 5.0;
    if (!points.empty()) points += ' ';
    points += fmt(cx + radius * std::cos(angle)) + ',' +
              fmt(cy + radius * std::sin(angle));
  }
  return points;
}

std::string star(Cell cell, const char* color) {
  const double cx = (cell.col + 0.5) * kCellPx;
  const double cy = (cell.row + 0.5) * kCellPx;
  return "  <polygon class=\"marker\" points=\"" +
         star_points(cx, cy, 0.46 * kCellPx, 0.20 * kCellPx) + "\" fill=\"" +
         color + "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
}

}  // namespace

RenderArtifacts render_trace(const EpisodeOutcome& outcome,
                             const GlobalMap& map, FovSize initial_fov) {
  if (outcome.trajectory.empty()) {
    throw std::invalid_argument("cannot render an empty trajectory");
  }
  const int rows = map.rows();
  const int cols = map.cols();
  const MaskedObservation initial = mask(map, map.start, initial_fov);

  // --- SVG ---
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(cols * kCellPx) + "\" height=\"" +
         std::to_string(rows * kCellPx) + "\" viewBox=\"0 0 " +
         std::to_string(cols * kCellPx) + " " + std::to_string(rows * kCellPx) +
         "\">\n";
  svg += "  <rect class=\"bg\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Light-blue shading over everything outside the initial FOV.
  for (int r = 0; r < rows; ++r) {
    int run_start = -1;
    for (int c = 0; c <= cols; ++c) {
      const bool unseen =
          c < cols && initial.o_g(r, c) == CellCode::kUnknown;
      if (unseen && run_start < 0) run_start = c;
      if (!unseen && run_start >= 0) {
        svg += "  <rect class=\"unseen\" x=\"" + std::to_string(run_start * kCellPx) +
               "\" y=\"" + std::to_string(r * kCellPx) + "\" width=\"" +
               std::to_string((c - run_start) * kCellPx) + "\" height=\"" +
               std::to_string(kCellPx) + "\" fill=\"#cfe8ff\"/>\n";
        run_start = -1;
      }
    }
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (map.cells(r, c) == CellCode::kObstacle) {
        svg += "  <rect class=\"obstacle\" x=\"" + std::to_string(c * kCellPx) +
               "\" y=\"" + std::to_string(r * kCellPx) + "\" width=\"" +
               std::to_string(kCellPx) + "\" height=\"" +
               std::to_string(kCellPx) + "\" fill=\"#333333\"/>\n";
      }
    }
  }
  {
    std::string d;
    for (std::size_t i = 0; i < outcome.trajectory.size(); ++i) {
      const Cell cell = outcome.trajectory[i];
      d += (i == 0 ? "M " : " L ");
      d += fmt((cell.col + 0.5) * kCellPx) + " " + fmt((cell.row + 0.5) * kCellPx);
    }
    svg += "  <path class=\"trajectory\" d=\"" + d +
           "\" fill=\"none\" stroke=\"#1f5fd0\" stroke-width=\"3\"/>\n";
  }
  svg += star(map.start, "#2faa44");
  svg += star(map.target, "#e8c31e");
  svg += "</svg>\n";

  // --- PGM ---
  Grid<int> raster(rows, cols, 255);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (initial.o_g(r, c) == CellCode::kUnknown) raster(r, c) = 200;
      if (map.cells(r, c) == CellCode::kObstacle) raster(r, c) = 0;
    }
  }
  for (const Cell& cell : outcome.trajectory) raster(cell) = 128;
  raster(map.start) = 90;
  raster(map.target) = 60;

  std::string pgm = "P2\n" + std::to_string(cols) + " " + std::to_string(rows) +
                    "\n255\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      pgm += std::to_string(raster(r, c));
      pgm += (c + 1 == cols) ? '\n' : ' ';
    }
  }
  return RenderArtifacts{std::move(svg), std::move(pgm)};
}

}  // namespace birdseye
