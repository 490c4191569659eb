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

#include "birdseye/scenario.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace birdseye {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t scenario_hash(const GlobalMap& map) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte & 0xFF;
    h *= 0x100000001B3ULL;
  };
  mix(static_cast<std::uint64_t>(map.rows()));
  mix(static_cast<std::uint64_t>(map.cols()));
  for (CellCode c : map.cells.data()) mix(static_cast<std::uint64_t>(static_cast<std::int8_t>(c)));
  for (int v : {map.start.row, map.start.col, map.target.row, map.target.col}) {
    mix(static_cast<std::uint64_t>(v));
    mix(static_cast<std::uint64_t>(v) >> 8);
  }
  return h;
}

namespace {

bool region_free(const CodeGrid& cells, int r0, int c0, int h, int w) {
  for (int r = r0; r < r0 + h; ++r) {
    for (int c = c0; c < c0 + w; ++c) {
      if (cells(r, c) != CellCode::kFree) return false;
    }
  }
  return true;
}

}  // namespace

GlobalMap generate_scenario(int rows, int cols, int obstacle_count,
                            std::uint64_t seed, const ScenarioOptions& opts) {
  if (rows < 5 || cols < 5) throw std::invalid_argument("map must be at least 5x5");
  if (obstacle_count < 0) throw std::invalid_argument("negative obstacle count");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> block_extent(1, 3);

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    CodeGrid cells(rows, cols, CellCode::kFree);

    bool placed_all = true;
    for (int b = 0; b < obstacle_count && placed_all; ++b) {
      placed_all = false;
      for (int tries = 0; tries < 100; ++tries) {
        const int h = block_extent(rng);
        const int w = block_extent(rng);
        const int r0 = std::uniform_int_distribution<int>(0, rows - h)(rng);
        const int c0 = std::uniform_int_distribution<int>(0, cols - w)(rng);
        if (!region_free(cells, r0, c0, h, w)) continue;  // keep blocks disjoint
        for (int r = r0; r < r0 + h; ++r) {
          for (int c = c0; c < c0 + w; ++c) cells(r, c) = CellCode::kObstacle;
        }
        placed_all = true;
        break;
      }
    }
    if (!placed_all) continue;

    std::vector<Cell> free_cells;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (cells(r, c) == CellCode::kFree) free_cells.push_back({r, c});
      }
    }
    if (free_cells.size() < 2) continue;

    const std::size_t start_idx = std::uniform_int_distribution<std::size_t>(
        0, free_cells.size() - 1)(rng);
    const Cell start = free_cells[start_idx];
    free_cells.erase(free_cells.begin() + static_cast<std::ptrdiff_t>(start_idx));
    const Cell target = free_cells[std::uniform_int_distribution<std::size_t>(
        0, free_cells.size() - 1)(rng)];

    const auto dist = bfs_distance(cells, start, target);
    if (!dist) continue;
    if (opts.max_path_len > 0 && *dist > opts.max_path_len) continue;
    return GlobalMap{std::move(cells), start, target, seed};
  }
  throw std::runtime_error(
      "scenario generation failed: parameters over-constrained");
}

}  // namespace birdseye
