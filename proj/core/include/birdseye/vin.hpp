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

#ifndef BIRDSEYE_VIN_HPP_
#define BIRDSEYE_VIN_HPP_

#include <array>
#include <random>
#include <vector>

#include "birdseye/grid.hpp"
#include "birdseye/tensor.hpp"

namespace birdseye {

// Differentiable planning stack: a 3x3 feature convolution over the 2-channel
// (observation, reward seed) input, a 1x1 projection to a reward map, then k
// repeats of {two 3x3 convolutions into 4 action channels, channel-wise max}.
// Kernels are shared across the k repeats. All convolutions use same-size
// zero padding, so off-map neighborhoods contribute value 0.
struct VinParams {
  Tensor conv1;    // [hidden][2][3][3]
  Tensor pool;     // [hidden]           1x1 projection, hidden -> reward map
  Tensor conv2_r;  // [4][1][3][3]       reward-map path
  Tensor conv2_v;  // [4][1][3][3]       value-map path
  int iterations = 30;

  int hidden_channels() const { return conv1.dim(0); }
};

VinParams make_vin_params(int hidden_channels, int iterations,
                          std::mt19937_64& rng, double init_scale = 0.1);

struct ValueMaps {
  Tensor reward;  // [M][N]
  Tensor q;       // [4][M][N]
  Tensor value;   // [M][N]
};

// Saved activations for the exact reverse pass.
struct VinCache {
  Tensor input;                    // [2][M][N]
  Tensor pre_activation;           // [hidden][M][N]
  Tensor hidden;                   // [hidden][M][N]
  Tensor reward;                   // [M][N]
  std::vector<Tensor> value_in;    // per repeat, the incoming value map
  std::vector<Grid<std::int8_t>> argmax;  // per repeat, winning channel
};

// Forward pass. Input is [2][M][N]: channel 0 the observation codes as
// reals, channel 1 the reward seed. Pass a cache to enable the backward pass.
ValueMaps vin_forward(const Tensor& input, const VinParams& params,
                      VinCache* cache = nullptr);

struct VinGrads {
  Tensor conv1;
  Tensor pool;
  Tensor conv2_r;
  Tensor conv2_v;
  Tensor input;
};

// Exact gradients for upstream grads on any of the three outputs. The
// channel max routes to the argmax channel recorded in the cache (ties were
// broken to the lowest index in the forward pass).
VinGrads vin_backward(const VinParams& params, const VinCache& cache,
                      const ValueMaps& grad_out);

// Accumulating variant used by the trainer.
void vin_backward_accumulate(const VinParams& params, const VinCache& cache,
                             const ValueMaps& grad_out, VinGrads& grads);

VinGrads make_vin_grads(const VinParams& params, int rows, int cols);

// Q-values at one cell: the four action logits once the target is in view.
std::array<double, 4> attention_select(const Tensor& q_map, Cell pos);

// Zero-filled grad container for the three outputs of a forward pass.
ValueMaps zero_like_outputs(const ValueMaps& maps);

}  // namespace birdseye

#endif  // BIRDSEYE_VIN_HPP_
