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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "birdseye/astar.hpp"
#include "birdseye/expert.hpp"
#include "birdseye/scenario.hpp"
#include "test_util.hpp"

using namespace birdseye;

namespace {

void check_path_well_formed(const Path& path, const CodeGrid& cells, Cell start,
                            Cell goal) {
  REQUIRE_FALSE(path.empty());
  CHECK(path.front() == start);
  CHECK(path.back() == goal);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    CHECK(manhattan(path[i], path[i + 1]) == 1);
  }
  for (const Cell c : path) CHECK(is_passable(cells(c)));
}

}  // namespace

TEST_CASE("astar: empty 5x5 corner to corner is Manhattan-optimal") {
  const CodeGrid cells(5, 5, CellCode::kFree);
  const auto path = astar(cells, {0, 0}, {4, 4});
  REQUIRE(path.has_value());
  CHECK(path->size() == 9);  // 8 moves
  check_path_well_formed(*path, cells, {0, 0}, {4, 4});
}

TEST_CASE("astar: start equals goal") {
  const CodeGrid cells(5, 5, CellCode::kFree);
  const auto path = astar(cells, {2, 2}, {2, 2});
  REQUIRE(path.has_value());
  CHECK(path->size() == 1);
}

TEST_CASE("astar: no path reported as empty optional") {
  const GlobalMap map = test::map_from_art({
      "S#.",
      "##.",
      "..T",
  });
  CHECK_FALSE(astar(map.cells, map.start, map.target).has_value());
}

TEST_CASE("astar: unknown cells blocked by default, traversable by flag") {
  CodeGrid cells(3, 3, CellCode::kUnknown);
  cells(0, 0) = CellCode::kFree;
  cells(2, 2) = CellCode::kFree;
  CHECK_FALSE(astar(cells, {0, 0}, {2, 2}).has_value());
  const auto open = astar(cells, {0, 0}, {2, 2}, {.unknown_traversable = true});
  REQUIRE(open.has_value());
  CHECK(open->size() == 5);
}

TEST_CASE("astar: length matches the independent oracle on 200 random 9x9 maps") {
  std::mt19937_64 rng(2024);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CodeGrid cells = test::random_cells(9, 9, 0.25, rng);
    const Cell start{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    const Cell goal{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    cells(start) = CellCode::kFree;
    cells(goal) = CellCode::kFree;

    const int oracle = test::oracle_shortest_path(cells, start, goal);
    const auto path = astar(cells, start, goal);
    if (oracle < 0) {
      CHECK_FALSE(path.has_value());
      continue;
    }
    ++solved;
    REQUIRE(path.has_value());
    CHECK(static_cast<int>(path->size()) - 1 == oracle);
    check_path_well_formed(*path, cells, start, goal);
  }
  CHECK(solved > 100);  // the density leaves most instances solvable
}

TEST_CASE("astar: deterministic output for repeated queries") {
  std::mt19937_64 rng(77);
  const CodeGrid cells = test::random_cells(9, 9, 0.2, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const Cell start{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    const Cell goal{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    if (!is_passable(cells(start)) || !is_passable(cells(goal))) continue;
    const auto a = astar(cells, start, goal);
    const auto b = astar(cells, start, goal);
    CHECK(a == b);
  }
}

TEST_CASE("path_actions round-trips a path into the movement convention") {
  const Path path{{2, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 2}};
  const auto actions = path_actions(path);
  REQUIRE(actions.size() == 4);
  CHECK(actions[0] == Action::kUp);
  CHECK(actions[1] == Action::kRight);
  CHECK(actions[2] == Action::kDown);
  CHECK(actions[3] == Action::kLeft);
}

TEST_CASE("search_min_dis_to_target: visible reachable target wins at distance 0") {
  const GlobalMap map = test::map_from_art({
      "S....",
      ".....",
      "..T..",
      ".....",
      ".....",
  });
  const auto obs = mask(map, Cell{2, 2}, FovSize{5, 5});
  const auto best = search_min_dis_to_target(obs.o_g, {2, 2}, map.target);
  REQUIRE(best.has_value());
  CHECK(*best == map.target);
}

TEST_CASE("search_min_dis_to_target: singleton reachable set returns it") {
  CodeGrid masked(3, 3, CellCode::kUnknown);
  masked(1, 1) = CellCode::kFree;
  const auto best = search_min_dis_to_target(masked, {1, 1}, {0, 2});
  REQUIRE(best.has_value());
  CHECK(*best == Cell{1, 1});
}

TEST_CASE("search_min_dis_to_target: matches exhaustive enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    CodeGrid cells = test::random_cells(9, 9, 0.25, rng);
    const Cell uav{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    cells(uav) = CellCode::kFree;
    const Cell target{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    if (target == uav) continue;
    cells(target) = CellCode::kFree;
    const GlobalMap map = make_global_map(cells, uav, target);
    const auto obs = mask(map, uav, FovSize{5, 5});

    const auto got = search_min_dis_to_target(obs.o_g, uav, map.target);
    REQUIRE(got.has_value());

    // Oracle: enumerate every visible passable cell, test reachability by
    // flooding inside the visible region, take the row-major argmin.
    std::optional<Cell> want;
    int want_dist = 1 << 20;
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 9; ++c) {
        const Cell cand{r, c};
        if (!is_passable(obs.o_g(cand))) continue;
        if (test::oracle_shortest_path(obs.o_g, uav, cand) < 0) continue;
        const int d = manhattan(cand, map.target);
        if (d < want_dist) {
          want = cand;
          want_dist = d;
        }
      }
    }
    REQUIRE(want.has_value());
    CHECK(*got == *want);
  }
}

TEST_CASE("expert dataset: straight-line map emits one sample per move") {
  const GlobalMap map = test::map_from_art({
      "S...T",
      ".....",
      ".....",
      ".....",
      ".....",
  });
  const auto samples = expert_samples(map, FovSize{3, 3}, 42);
  CHECK(samples.size() == 4);
  for (const auto& s : samples) {
    CHECK(s.scenario_id == 42);
    CHECK(s.action == Action::kRight);
  }
}

TEST_CASE("expert dataset: full visibility leaves no unknown map cells") {
  const GlobalMap map = test::map_from_art({
      "S....",
      ".#...",
      "...#.",
      ".....",
      "....T",
  });
  const FovSize fov{11, 11};  // covers the whole map from any pose
  const auto samples = expert_samples(map, fov, 0);
  REQUIRE_FALSE(samples.empty());
  // Full visibility means hover mode from the start, so samples carry the
  // window; cells that land on the map must all be known.
  CHECK(samples.front().mode == Mode::kHover);
  const Cell origin{map.start.row - (fov.rows - 1) / 2,
                    map.start.col - (fov.cols - 1) / 2};
  for (const auto& s : samples) {
    REQUIRE(s.mode == Mode::kHover);
    for (int i = 0; i < fov.rows; ++i) {
      for (int j = 0; j < fov.cols; ++j) {
        const Cell world{origin.row + i, origin.col + j};
        if (map.cells.in_bounds(world)) {
          CHECK(s.obs(i, j) != CellCode::kUnknown);
        } else {
          CHECK(s.obs(i, j) == CellCode::kUnknown);
        }
      }
    }
  }
  // The global masked matrix itself has no unknowns under this FOV.
  const auto obs = mask(map, map.start, fov);
  for (CellCode c : obs.o_g.data()) CHECK(c != CellCode::kUnknown);
}

TEST_CASE("expert dataset: replay reaches the target with zero collisions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const GlobalMap map = generate_scenario(9, 9, 3, 1000 + trial);
    const FovSize fov{5, 5};
    const auto samples = expert_samples(map, fov, trial);
    REQUIRE_FALSE(samples.empty());

    EpisodeParams params{fov, static_cast<int>(samples.size()) + 1};
    EpisodeState state = make_episode(map, params);
    for (const auto& s : samples) {
      REQUIRE_FALSE(state.done);
      CHECK(s.mode == state.mode);
      state = step(state, map, params, s.action);
    }
    CHECK(state.reached);
    CHECK(state.collisions == 0);
  }
}

TEST_CASE("expert dataset: hover samples carry the window and a local pose") {
  const GlobalMap map = test::map_from_art({
      "S........",
      ".........",
      ".........",
      ".........",
      ".........",
      ".........",
      ".........",
      ".........",
      "........T",
  });
  const FovSize fov{5, 5};
  const auto samples = expert_samples(map, fov, 0);
  bool saw_hover = false;
  for (const auto& s : samples) {
    if (s.mode == Mode::kJoint) {
      CHECK(s.obs.rows() == 9);
    } else {
      saw_hover = true;
      CHECK(s.obs.rows() == fov.rows);
      CHECK(s.obs.cols() == fov.cols);
      CHECK(s.obs.in_bounds(s.ugv_local));
      // the window is anchored to the hovering UAV, so there is a target in it
      bool has_target = false;
      for (CellCode c : s.obs.data()) has_target |= c == CellCode::kTarget;
      CHECK(has_target);
    }
  }
  CHECK(saw_hover);
}
