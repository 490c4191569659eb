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

#ifndef BIRDSEYE_TESTS_FIXTURES_HPP_
#define BIRDSEYE_TESTS_FIXTURES_HPP_

#include <random>
#include <vector>

#include "birdseye/episode.hpp"
#include "birdseye/grid.hpp"
#include "birdseye/mcgn.hpp"
#include "test_util.hpp"

namespace birdseye::test {

// Concave-trap layout, tuned against the 7x7 view below. The visible cell
// nearest the target sits at the end of a walled pocket, so a greedy
// partial-view planner walks in and must come back out through its own
// start. The full-leg planner does exactly that; the one-step planner
// flip-flops left/right at the pocket mouth (each step alternately reveals
// and hides the far side of the wall) until the step cap.
inline GlobalMap trap_map() {
  return map_from_art({
      "...........",
      "...........",
      "...........",
      "...........",
      "...####....",
      "..S...#.T..",
      "...####....",
      "...........",
      "...........",
      "...........",
      "...........",
  });
}

inline FovSize trap_fov() { return FovSize{7, 7}; }

// Desk-scale training distribution: 9x9 maps, start in the top-left 2x2
// block, target in the central-lower 3x3 block, one or two small obstacles.
// The directional structure is what makes held-out generalization possible
// for a policy that cannot see the target before the switch, and the start
// to target gap keeps the target hidden at the first pose under a 5x5 view.
inline GlobalMap training_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    CodeGrid cells(9, 9, CellCode::kFree);
    const int blocks = 1 + static_cast<int>(rng() % 2);
    for (int b = 0; b < blocks; ++b) {
      const int h = 1 + static_cast<int>(rng() % 2);
      const int w = 1 + static_cast<int>(rng() % 2);
      const int r0 = static_cast<int>(rng() % (9 - h));
      const int c0 = static_cast<int>(rng() % (9 - w));
      for (int r = r0; r < r0 + h; ++r) {
        for (int c = c0; c < c0 + w; ++c) cells(r, c) = CellCode::kObstacle;
      }
    }
    const Cell start{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
    const Cell target{4 + static_cast<int>(rng() % 3),
                      4 + static_cast<int>(rng() % 3)};
    if (cells(start) != CellCode::kFree || cells(target) != CellCode::kFree) {
      continue;
    }
    if (oracle_shortest_path(cells, start, target) < 0) continue;
    return make_global_map(std::move(cells), start, target, seed);
  }
  throw std::runtime_error("training fixture generation failed");
}

// Configuration used alongside the fixture distribution for desk-scale
// imitation runs; small enough to train in seconds, deep enough in the
// value unroll to cover the whole window.
inline McgnConfig desk_training_config() {
  McgnConfig config;
  config.vin_iterations = 20;
  config.hidden_channels = 32;
  config.lstm_size = 64;
  config.embed_size = 32;
  config.memory = MemoryConfig{16, 4, 2};
  config.learning_rate = 2e-3;
  config.epochs = 50;
  config.batch_size = 2;
  return config;
}

inline std::vector<GlobalMap> training_suite(int count, std::uint64_t seed) {
  std::vector<GlobalMap> suite;
  suite.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    suite.push_back(training_fixture(seed * 1000003ULL + static_cast<std::uint64_t>(i)));
  }
  return suite;
}

}  // namespace birdseye::test

#endif  // BIRDSEYE_TESTS_FIXTURES_HPP_
