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

#ifndef BIRDSEYE_MDP_HPP_
#define BIRDSEYE_MDP_HPP_

#include <array>
#include <vector>

#include "birdseye/grid.hpp"

namespace birdseye {

inline constexpr int kNumActions = 4;

// Deterministic finite MDP. Transitions must stay inside [0, num_states);
// blocked grid moves self-loop by construction.
struct TabularMdp {
  int num_states = 0;
  std::vector<std::array<int, kNumActions>> transition;   // state, action -> state
  std::vector<std::array<double, kNumActions>> reward;    // state, action -> r
  double discount = 0.9;
};

// Grid MDP with an explicit zero-value sink appended as the last state: the
// goal pays `goal_reward` once and drains into the sink, so its fixed-point
// value is exactly the reward. Obstacle cells self-loop with zero reward.
// State id = row * cols + col; sink id = rows * cols.
TabularMdp grid_mdp(const CodeGrid& cells, Cell goal, double discount,
                    double goal_reward = 10.0);

// Fixed-point Bellman iteration from V = 0: stops when the max-norm update
// falls below `tol`. The discount < 1 contraction guarantees termination.
std::vector<double> value_iteration_exact(const TabularMdp& mdp, double tol);

// One-step lookahead argmax under V; ties resolve to the lowest action index.
std::vector<int> greedy_policy(const std::vector<double>& values,
                               const TabularMdp& mdp);

}  // namespace birdseye

#endif  // BIRDSEYE_MDP_HPP_
