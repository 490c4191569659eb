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

#include <numeric>
#include <random>

#include "birdseye/mdp.hpp"
#include "birdseye/vin.hpp"
#include "test_util.hpp"

using namespace birdseye;

namespace {

Tensor random_input(int rows, int cols, std::mt19937_64& rng) {
  Tensor input{2, rows, cols};
  fill_uniform(input, rng, 1.0);
  return input;
}

}  // namespace

TEST_CASE("all-zero kernels produce all-zero maps") {
  std::mt19937_64 rng(1);
  VinParams params = make_vin_params(5, 3, rng, 0.0);
  const Tensor input = random_input(6, 7, rng);
  const ValueMaps maps = vin_forward(input, params);
  for (double v : maps.reward.flat()) CHECK(v == 0.0);
  for (double v : maps.q.flat()) CHECK(v == 0.0);
  for (double v : maps.value.flat()) CHECK(v == 0.0);
}

TEST_CASE("zero repeats leave the value map at its initialization") {
  std::mt19937_64 rng(2);
  VinParams params = make_vin_params(5, 0, rng, 0.3);
  const Tensor input = random_input(5, 5, rng);
  const ValueMaps maps = vin_forward(input, params);
  for (double v : maps.value.flat()) CHECK(v == 0.0);
  for (double v : maps.q.flat()) CHECK(v == 0.0);
  // The reward head still runs.
  double reward_norm = 0.0;
  for (double v : maps.reward.flat()) reward_norm += std::abs(v);
  CHECK(reward_norm > 0.0);
}

TEST_CASE("hand-set kernels reproduce truncated value iteration exactly") {
  // Feature path copies the reward channel; the two action kernels implement
  // Q_a(s) = R(s) + gamma * V(neighbor_a(s)) with zero padding off the map.
  const int rows = 6, cols = 5, k = 7;
  const double gamma = 0.9;

  std::mt19937_64 rng(3);
  VinParams params = make_vin_params(3, k, rng, 0.0);
  params.conv1(0, 1, 1, 1) = 1.0;  // hidden[0] = input channel 1 (reward seed)
  params.pool(0) = 1.0;
  for (int a = 0; a < 4; ++a) params.conv2_r(a, 0, 1, 1) = 1.0;
  params.conv2_v(0, 0, 0, 1) = gamma;  // up
  params.conv2_v(1, 0, 2, 1) = gamma;  // down
  params.conv2_v(2, 0, 1, 0) = gamma;  // left
  params.conv2_v(3, 0, 1, 2) = gamma;  // right

  Tensor input{2, rows, cols};
  std::uniform_real_distribution<double> reward_dist(0.0, 2.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      input(0, r, c) = 0.0;
      input(1, r, c) = reward_dist(rng);
    }
  }

  const ValueMaps maps = vin_forward(input, params);

  // Oracle: the matching deterministic MDP with an off-map sink at value 0,
  // iterated exactly k times from zero.
  std::vector<double> v(static_cast<size_t>(rows * cols) + 1, 0.0);
  for (int sweep = 0; sweep < k; ++sweep) {
    std::vector<double> next(v.size(), 0.0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        double best = -1e300;
        const int dr[4] = {-1, 1, 0, 0};
        const int dc[4] = {0, 0, -1, 1};
        for (int a = 0; a < 4; ++a) {
          const int nr = r + dr[a], nc = c + dc[a];
          const bool inside = nr >= 0 && nr < rows && nc >= 0 && nc < cols;
          const double next_v =
              inside ? v[static_cast<size_t>(nr * cols + nc)] : 0.0;
          best = std::max(best, input(1, r, c) + gamma * next_v);
        }
        next[static_cast<size_t>(r * cols + c)] = best;
      }
    }
    v = std::move(next);
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      CHECK(maps.value(r, c) ==
            doctest::Approx(v[static_cast<size_t>(r * cols + c)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("backward pass matches central finite differences on 7x7") {
  const int rows = 7, cols = 7;
  std::mt19937_64 rng(4);
  VinParams params = make_vin_params(6, 4, rng, 0.4);
  Tensor input = random_input(rows, cols, rng);

  // Random but fixed upstream weights over all three outputs.
  ValueMaps upstream;
  upstream.reward = Tensor{rows, cols};
  upstream.q = Tensor{4, rows, cols};
  upstream.value = Tensor{rows, cols};
  fill_uniform(upstream.reward, rng, 1.0);
  fill_uniform(upstream.q, rng, 1.0);
  fill_uniform(upstream.value, rng, 1.0);

  const auto loss = [&]() {
    const ValueMaps maps = vin_forward(input, params);
    double acc = 0.0;
    for (std::size_t i = 0; i < maps.reward.size(); ++i) {
      acc += maps.reward[i] * upstream.reward[i];
    }
    for (std::size_t i = 0; i < maps.q.size(); ++i) {
      acc += maps.q[i] * upstream.q[i];
    }
    for (std::size_t i = 0; i < maps.value.size(); ++i) {
      acc += maps.value[i] * upstream.value[i];
    }
    return acc;
  };

  VinCache cache;
  (void)vin_forward(input, params, &cache);
  const VinGrads grads = vin_backward(params, cache, upstream);

  CHECK(test::grad_check(params.conv1, grads.conv1, loss) < 1e-4);
  CHECK(test::grad_check(params.pool, grads.pool, loss) < 1e-4);
  CHECK(test::grad_check(params.conv2_r, grads.conv2_r, loss) < 1e-4);
  CHECK(test::grad_check(params.conv2_v, grads.conv2_v, loss) < 1e-4);
  CHECK(test::grad_check(input, grads.input, loss) < 1e-4);
}

TEST_CASE("zero upstream gradient gives zero parameter gradients") {
  std::mt19937_64 rng(5);
  VinParams params = make_vin_params(4, 3, rng, 0.4);
  const Tensor input = random_input(5, 5, rng);
  VinCache cache;
  const ValueMaps maps = vin_forward(input, params, &cache);
  const VinGrads grads = vin_backward(params, cache, zero_like_outputs(maps));
  for (double v : grads.conv1.flat()) CHECK(v == 0.0);
  for (double v : grads.pool.flat()) CHECK(v == 0.0);
  for (double v : grads.conv2_r.flat()) CHECK(v == 0.0);
  for (double v : grads.conv2_v.flat()) CHECK(v == 0.0);
  for (double v : grads.input.flat()) CHECK(v == 0.0);
}

TEST_CASE("gradient reaches the reward seed at the target cell") {
  const int rows = 5, cols = 5;
  std::mt19937_64 rng(6);
  VinParams params = make_vin_params(4, 3, rng, 0.4);
  Tensor input{2, rows, cols};
  input(1, 2, 3) = 10.0;  // seed
  VinCache cache;
  const ValueMaps maps = vin_forward(input, params, &cache);
  ValueMaps upstream = zero_like_outputs(maps);
  upstream.value.fill(1.0);
  const VinGrads grads = vin_backward(params, cache, upstream);
  CHECK(std::abs(grads.input(1, 2, 3)) > 0.0);
}

TEST_CASE("hidden-channel permutation leaves every output invariant") {
  const int hidden = 8;
  std::mt19937_64 rng(7);
  VinParams params = make_vin_params(hidden, 5, rng, 0.4);
  const Tensor input = random_input(6, 6, rng);
  const ValueMaps base = vin_forward(input, params);

  std::vector<int> perm(hidden);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  VinParams shuffled = params;
  for (int h = 0; h < hidden; ++h) {
    shuffled.pool(h) = params.pool(perm[static_cast<size_t>(h)]);
    for (int i = 0; i < 2; ++i) {
      for (int u = 0; u < 3; ++u) {
        for (int v = 0; v < 3; ++v) {
          shuffled.conv1(h, i, u, v) =
              params.conv1(perm[static_cast<size_t>(h)], i, u, v);
        }
      }
    }
  }
  const ValueMaps swapped = vin_forward(input, shuffled);
  for (std::size_t i = 0; i < base.value.size(); ++i) {
    CHECK(swapped.value[i] == doctest::Approx(base.value[i]).epsilon(1e-12));
    CHECK(swapped.reward[i] == doctest::Approx(base.reward[i]).epsilon(1e-12));
  }
}

TEST_CASE("attention_select reads the Q column at a cell") {
  Tensor q{4, 3, 3};
  SUBCASE("constant channels come back as the constant vector") {
    for (int a = 0; a < 4; ++a) {
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) q(a, r, c) = 10.0 * a;
      }
    }
    const auto logits = attention_select(q, {1, 2});
    for (int a = 0; a < 4; ++a) CHECK(logits[static_cast<size_t>(a)] == 10.0 * a);
  }
  SUBCASE("one-hot placement is picked up at the right cell") {
    q(2, 1, 1) = 5.0;
    const auto logits = attention_select(q, {1, 1});
    CHECK(logits == std::array<double, 4>{0.0, 0.0, 5.0, 0.0});
  }
  SUBCASE("out-of-bounds positions are rejected") {
    CHECK_THROWS_AS(attention_select(q, {3, 0}), std::invalid_argument);
  }
}

TEST_CASE("attention argmax agrees with the greedy policy on the exact MDP") {
  // Same max-propagation construction as above, on a map with a single
  // rewarded cell: the VIN's Q at any cell then equals the MDP's Q, so the
  // argmax must match the greedy policy wherever value has propagated.
  const int rows = 5, cols = 5, k = 12;
  const double gamma = 0.9;
  std::mt19937_64 rng(8);
  VinParams params = make_vin_params(2, k, rng, 0.0);
  params.conv1(0, 1, 1, 1) = 1.0;
  params.pool(0) = 1.0;
  for (int a = 0; a < 4; ++a) params.conv2_r(a, 0, 1, 1) = 1.0;
  params.conv2_v(0, 0, 0, 1) = gamma;
  params.conv2_v(1, 0, 2, 1) = gamma;
  params.conv2_v(2, 0, 1, 0) = gamma;
  params.conv2_v(3, 0, 1, 2) = gamma;

  const Cell goal{2, 2};
  Tensor input{2, rows, cols};
  input(1, goal.row, goal.col) = 10.0;
  const ValueMaps maps = vin_forward(input, params);

  const CodeGrid open(rows, cols, CellCode::kFree);
  const TabularMdp mdp = grid_mdp(open, goal, gamma, 10.0);
  const auto v_star = value_iteration_exact(mdp, 1e-12);
  const auto policy = greedy_policy(v_star, mdp);

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (Cell{r, c} == goal) continue;
      const auto logits = attention_select(maps.q, {r, c});
      int best = 0;
      for (int a = 1; a < 4; ++a) {
        if (logits[static_cast<size_t>(a)] > logits[static_cast<size_t>(best)]) {
          best = a;
        }
      }
      CHECK(best == policy[static_cast<size_t>(r * cols + c)]);
    }
  }
}
