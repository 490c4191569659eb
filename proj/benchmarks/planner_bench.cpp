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

#include <benchmark/benchmark.h>

#include <random>

#include "birdseye/astar.hpp"
#include "birdseye/mcgn.hpp"
#include "birdseye/scenario.hpp"

namespace {

using namespace birdseye;

void BM_Astar17(benchmark::State& state) {
  const GlobalMap map = generate_scenario(17, 17, 4, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(astar(map.cells, map.start, map.target));
  }
}
BENCHMARK(BM_Astar17);

void BM_Mask17(benchmark::State& state) {
  const GlobalMap map = generate_scenario(17, 17, 4, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mask(map, map.start, FovSize{11, 11}));
  }
}
BENCHMARK(BM_Mask17);

void BM_VinForward(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const VinParams params = make_vin_params(150, 30, rng, 0.1);
  Tensor input{2, rows, rows};
  fill_uniform(input, rng, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vin_forward(input, params));
  }
}
BENCHMARK(BM_VinForward)->Arg(9)->Arg(17);

// Full-scale default configuration at Task1 geometry: one planning decision.
void BM_JointModeDecision(benchmark::State& state) {
  const McgnConfig config;
  const McgnDims dims{17, 17, FovSize{11, 11}};
  const McgnParams params = make_mcgn_params(config, dims, 7);
  const GlobalMap map = generate_scenario(17, 17, 4, 11);
  const auto obs = mask(map, map.start, dims.fov);
  ControllerState ctrl = make_controller_state(params.controller_config);
  MemoryState memory = make_memory_state(params.controller_config.memory);
  for (auto _ : state) {
    Mode1Result out = plan_step_mode1(obs.o_g, ctrl, memory, params);
    benchmark::DoNotOptimize(out.logits);
    ctrl = std::move(out.ctrl);
    memory = std::move(out.memory);
  }
}
BENCHMARK(BM_JointModeDecision)->Unit(benchmark::kMillisecond);

void BM_HoverModeDecision(benchmark::State& state) {
  const McgnConfig config;
  const McgnDims dims{17, 17, FovSize{11, 11}};
  const McgnParams params = make_mcgn_params(config, dims, 7);
  const GlobalMap map = generate_scenario(17, 17, 4, 11);
  const auto obs = mask(map, map.target, dims.fov);  // target in view
  const Cell local{dims.fov.rows / 2, dims.fov.cols / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_step_mode2(obs.o_p, local, params));
  }
}
BENCHMARK(BM_HoverModeDecision)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
