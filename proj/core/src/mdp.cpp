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

#include "birdseye/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "birdseye/episode.hpp"

namespace birdseye {

TabularMdp grid_mdp(const CodeGrid& cells, Cell goal, double discount,
                    double goal_reward) {
  if (!cells.in_bounds(goal) || !is_passable(cells(goal))) {
    throw std::invalid_argument("goal must be a passable in-bounds cell");
  }
  if (discount <= 0.0 || discount >= 1.0) {
    throw std::invalid_argument("discount must lie in (0, 1)");
  }
  const int rows = cells.rows();
  const int cols = cells.cols();
  const int sink = rows * cols;

  TabularMdp mdp;
  mdp.num_states = sink + 1;
  mdp.discount = discount;
  mdp.transition.assign(static_cast<size_t>(mdp.num_states), {});
  mdp.reward.assign(static_cast<size_t>(mdp.num_states), {});

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int s = r * cols + c;
      for (int a = 0; a < kNumActions; ++a) {
        if (Cell{r, c} == goal) {
          mdp.transition[s][a] = sink;
          mdp.reward[s][a] = goal_reward;
          continue;
        }
        const Cell next = apply_action({r, c}, static_cast<Action>(a));
        const bool blocked = !cells.in_bounds(next) ||
                             !is_passable(cells(next)) ||
                             !is_passable(cells(r, c));
        mdp.transition[s][a] = blocked ? s : next.row * cols + next.col;
        mdp.reward[s][a] = 0.0;
      }
    }
  }
  for (int a = 0; a < kNumActions; ++a) {
    mdp.transition[sink][a] = sink;
    mdp.reward[sink][a] = 0.0;
  }
  return mdp;
}

std::vector<double> value_iteration_exact(const TabularMdp& mdp, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  std::vector<double> values(static_cast<size_t>(mdp.num_states), 0.0);
  std::vector<double> next(values.size(), 0.0);
  double delta = tol;
  while (delta >= tol) {
    delta = 0.0;
    for (int s = 0; s < mdp.num_states; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < kNumActions; ++a) {
        best = std::max(best, mdp.reward[s][a] +
                                  mdp.discount * values[mdp.transition[s][a]]);
      }
      next[s] = best;
      delta = std::max(delta, std::abs(best - values[s]));
    }
    values.swap(next);
  }
  return values;
}

std::vector<int> greedy_policy(const std::vector<double>& values,
                               const TabularMdp& mdp) {
  if (values.size() != static_cast<size_t>(mdp.num_states)) {
    throw std::invalid_argument("value vector size mismatch");
  }
  std::vector<int> policy(values.size(), 0);
  for (int s = 0; s < mdp.num_states; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    int best_action = 0;
    for (int a = 0; a < kNumActions; ++a) {
      const double q =
          mdp.reward[s][a] + mdp.discount * values[mdp.transition[s][a]];
      if (q > best) {
        best = q;
        best_action = a;
      }
    }
    policy[s] = best_action;
  }
  return policy;
}

}  // namespace birdseye
