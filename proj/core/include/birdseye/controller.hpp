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

#ifndef BIRDSEYE_CONTROLLER_HPP_
#define BIRDSEYE_CONTROLLER_HPP_

#include <random>
#include <vector>

#include "birdseye/dnc.hpp"
#include "birdseye/lstm.hpp"
#include "birdseye/tensor.hpp"

namespace birdseye {

// Recurrent memory controller: a linear embedding of the planner features,
// an LSTM over [embedding; previous reads], and two linear heads emitting
// the output vector and the raw memory interface.
struct ControllerConfig {
  int feature_size = 0;  // flattened observation + value-map features
  int embed_size = 64;
  int lstm_size = 256;
  int output_size = 4;
  MemoryConfig memory;
};

struct ControllerParams {
  Tensor embed_w;       // [embed][features]
  Tensor embed_b;       // [embed]
  LstmParams lstm;      // input = embed + read_heads * width
  Tensor out_w;         // [output][lstm]
  Tensor out_b;         // [output]
  Tensor iface_w;       // [interface][lstm]
  Tensor iface_b;       // [interface]
};

ControllerParams make_controller_params(const ControllerConfig& config,
                                        std::mt19937_64& rng,
                                        double init_scale = 0.1);

struct ControllerState {
  LstmState lstm;
};

ControllerState make_controller_state(const ControllerConfig& config);

struct ControllerCache {
  Tensor features;
  Tensor embedded;
  Tensor lstm_input;
  LstmCache lstm;
  Tensor hidden;     // post-step h
  Tensor raw_iface;  // pre-squash emission
};

struct ControllerOutput {
  Tensor output;          // [output_size]
  InterfaceVector iface;  // squashed
  ControllerState state;
};

// One controller tick. `prev_reads` are the memory read vectors from the
// previous time step.
ControllerOutput controller_step(const ControllerConfig& config,
                                 const ControllerParams& params,
                                 const ControllerState& state,
                                 const Tensor& features,
                                 const std::vector<Tensor>& prev_reads,
                                 ControllerCache* cache = nullptr);

struct ControllerGrads {
  Tensor embed_w;
  Tensor embed_b;
  LstmGrads lstm;
  Tensor out_w;
  Tensor out_b;
  Tensor iface_w;
  Tensor iface_b;
};

ControllerGrads make_controller_grads(const ControllerParams& params);

// Reverse pass of one tick. Upstream grads arrive on the output vector, the
// squashed interface, and the next-step recurrent state; grads flow back to
// the previous state, the features, and the previous reads.
void controller_step_backward(const ControllerConfig& config,
                              const ControllerParams& params,
                              const ControllerCache& cache,
                              const Tensor& grad_output,
                              const InterfaceVector& grad_iface,
                              const ControllerState& grad_state_next,
                              ControllerGrads& grads,
                              ControllerState& grad_state_prev,
                              Tensor& grad_features,
                              std::vector<Tensor>& grad_prev_reads);

}  // namespace birdseye

#endif  // BIRDSEYE_CONTROLLER_HPP_
