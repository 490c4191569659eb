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

#ifndef BIRDSEYE_MCGN_HPP_
#define BIRDSEYE_MCGN_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "birdseye/controller.hpp"
#include "birdseye/dnc.hpp"
#include "birdseye/episode.hpp"
#include "birdseye/expert.hpp"
#include "birdseye/grid.hpp"
#include "birdseye/tensor.hpp"
#include "birdseye/vin.hpp"

namespace birdseye {

// Motion command generator configuration. Defaults are the full-scale
// reference setup: 30 planning repeats, 150 hidden channels, a 256-unit
// controller, and 32x8 memory with four read heads.
struct McgnConfig {
  int vin_iterations = 30;
  int hidden_channels = 150;
  int action_channels = 4;
  int lstm_size = 256;
  int embed_size = 64;
  MemoryConfig memory;  // 32 slots x width 8, 4 read heads, 1 write head
  double learning_rate = 1e-4;
  int epochs = 120;
  int episodes_per_epoch = 200;
  int batch_size = 64;
  int step_cap = kDefaultStepCap;
  bool ablation_memory_always = false;
  double init_scale = 0.1;
};

struct McgnDims {
  int rows = 0;  // global scale
  int cols = 0;
  FovSize fov;
};

// Two independent networks. Before the target is seen: VIN features over the
// masked global matrix feed the memory controller, and action logits combine
// the controller output with the fresh reads. Once the target is in view: a
// second VIN plans directly on the FOV window and the logits are its
// Q-values at the vehicle's cell.
struct McgnParams {
  McgnDims dims;
  VinParams vin_joint;
  ControllerConfig controller_config;
  ControllerParams controller;
  Tensor read_out;  // [4][read_heads * width]
  VinParams vin_hover;
};

McgnParams make_mcgn_params(const McgnConfig& config, const McgnDims& dims,
                            std::uint64_t seed);

// Observation codes and the reward seed stacked channel-first, [2][M][N].
Tensor build_input(const CodeGrid& obs, const Tensor& reward_seed);

// 10.0 at the visible target cell, zero elsewhere (all zeros when the target
// is not in view).
Tensor reward_seed(const CodeGrid& obs);

struct Mode1Result {
  std::array<double, 4> logits{};
  ControllerState ctrl;
  MemoryState memory;
};

struct Mode1Cache {
  VinCache vin;
  ControllerCache ctrl;
  MemoryStepCache mem;
};

Mode1Result plan_step_mode1(const CodeGrid& o_g, const ControllerState& ctrl,
                            const MemoryState& memory, const McgnParams& params,
                            Mode1Cache* cache = nullptr);

// Requires the target inside the window (throws std::logic_error otherwise).
std::array<double, 4> plan_step_mode2(const CodeGrid& o_p, Cell ugv_local,
                                      const McgnParams& params,
                                      VinCache* cache = nullptr);

// Evaluation-time action selection: greedy argmax, ties to the lowest index.
int argmax_action(const std::array<double, 4>& logits);

struct McgnGrads {
  VinGrads vin_joint;
  ControllerGrads controller;
  Tensor read_out;
  VinGrads vin_hover;
};

McgnGrads make_mcgn_grads(const McgnParams& params);

// Summed cross-entropy over one scenario's pre-switch sequence, unrolled
// through the memory. When `grads` is given, gradients of (grad_scale *
// loss) accumulate into it via backpropagation through time.
double joint_sequence_loss(const McgnParams& params,
                           const std::vector<const ExpertSample*>& sequence,
                           double grad_scale = 1.0, McgnGrads* grads = nullptr,
                           int* correct = nullptr);

// Cross-entropy of one hover-mode sample through the second network.
double hover_sample_loss(const McgnParams& params, const ExpertSample& sample,
                         double grad_scale = 1.0, McgnGrads* grads = nullptr,
                         int* correct = nullptr);

struct TrainReport {
  std::vector<double> loss;      // per epoch, mean over samples
  std::vector<double> accuracy;  // per epoch, argmax agreement
  double wall_seconds = 0.0;
};

struct TrainResult {
  McgnParams params;
  TrainReport joint_report;
  TrainReport hover_report;
};

// Imitation training: the two networks are trained separately on their own
// slices of the dataset (cross-entropy against the recorded actions, adaptive
// moment updates, seeded shuffling). Joint-mode samples are grouped per
// scenario and unrolled as sequences through the memory. Throws when the
// loss stops being finite.
TrainResult train(const std::vector<ExpertSample>& dataset,
                  const McgnConfig& config, const McgnDims& dims,
                  std::uint64_t seed);

struct StepTrace {
  Mode mode = Mode::kJoint;
  std::array<double, 4> logits{};
  Action action = Action::kUp;
};

// Greedy rollout of the trained pair. With ablation_memory_always the mode
// switch is suppressed: the UAV keeps shadowing the UGV and the memory
// network plans the whole episode.
EpisodeOutcome run_episode(const GlobalMap& map, FovSize fov,
                           const McgnParams& params, const McgnConfig& config,
                           std::vector<StepTrace>* trace = nullptr);

void save_params(const std::string& path, const McgnParams& params);
McgnParams load_params(const std::string& path);

// Stable softmax cross-entropy; returns loss and writes dL/dlogits.
double cross_entropy(const std::array<double, 4>& logits, int label,
                     std::array<double, 4>* grad = nullptr);

}  // namespace birdseye

#endif  // BIRDSEYE_MCGN_HPP_
