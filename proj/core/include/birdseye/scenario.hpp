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

#ifndef BIRDSEYE_SCENARIO_HPP_
#define BIRDSEYE_SCENARIO_HPP_

#include <cstdint>

#include "birdseye/grid.hpp"

namespace birdseye {

struct ScenarioOptions {
  int max_attempts = 1000;
  // When positive, only admit layouts whose shortest start-to-target path
  // fits this bound. Evaluation suites set it to the step cap so a
  // full-knowledge planner can always finish in time.
  int max_path_len = 0;
};

// Random layout: rectangular obstacle blocks between 1x1 and 3x3 placed
// without overlap, start/target drawn from the remaining free cells, and a
// reachability check. Infeasible layouts are rejected and redrawn; after
// `max_attempts` rejections this throws std::runtime_error (the parameters
// are over-constrained). Identical seeds give byte-identical maps.
GlobalMap generate_scenario(int rows, int cols, int obstacle_count,
                            std::uint64_t seed, const ScenarioOptions& opts = {});

// Deterministic per-purpose seed derivation (splitmix64 over seed ^ salt).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

// FNV-1a over layout bytes; used by reports to show that every method ran on
// the same paired scenarios.
std::uint64_t scenario_hash(const GlobalMap& map);

}  // namespace birdseye

#endif  // BIRDSEYE_SCENARIO_HPP_
