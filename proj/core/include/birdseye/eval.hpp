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

#ifndef BIRDSEYE_EVAL_HPP_
#define BIRDSEYE_EVAL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "birdseye/grid.hpp"
#include "birdseye/mcgn.hpp"

namespace birdseye {

enum class Method { kMcgn, kMcgnMemoryAlways, kTb1, kTb2, kExpertAstar };

const char* method_name(Method method);
std::optional<Method> method_from_name(const std::string& name);

// Evaluation task: a global scale, an observation range, and a grid of
// obstacle counts with a fixed number of scenarios each. The three built-in
// tasks use 20 episodes per count by default; `full_scale()` raises that
// to the full-scale 100.
struct TaskSpec {
  std::string name;
  int rows = 17;
  int cols = 17;
  FovSize fov{11, 11};
  std::vector<int> obstacle_counts{2, 3, 4, 5};
  int episodes_per_count = 20;
  int step_cap = kDefaultStepCap;

  double observation_ratio() const {
    return static_cast<double>(fov.rows) / static_cast<double>(rows);
  }
  TaskSpec full_scale() const {
    TaskSpec t = *this;
    t.episodes_per_count = 100;
    return t;
  }
};

TaskSpec task1();  // 17x17 seen through 11x11
TaskSpec task2();  // 17x17 seen through 9x9
TaskSpec task3();  // 15x15 seen through 9x9
std::optional<TaskSpec> task_from_name(const std::string& name);

struct CellStats {
  int successes = 0;
  int total = 0;
  double mean_steps = 0.0;
  double mean_collisions = 0.0;
};

struct EvalReport {
  std::string task;
  double observation_ratio = 0.0;
  std::uint64_t seed = 0;
  int step_cap = kDefaultStepCap;
  std::vector<int> obstacle_counts;
  std::vector<Method> methods;
  std::vector<std::vector<CellStats>> results;            // [method][count]
  std::vector<std::vector<std::uint64_t>> scenario_hashes;  // [count][episode]
};

// Runs every requested method over one shared scenario grid (paired
// comparison; the hashes in the report witness it). Scenario admission
// requires a shortest path within the step cap, so the full-knowledge expert
// always finishes in time. Deterministic per seed.
EvalReport run_suite(const TaskSpec& task, const std::vector<Method>& methods,
                     std::uint64_t seed, const McgnParams* trained = nullptr,
                     const McgnConfig& config = {});

// Success grid (successes/total per obstacle count) plus the observation ratio.
std::string report_table(const EvalReport& report);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& json);

struct LatencyStats {
  std::size_t decisions = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

// Wall time per planning decision over a few suite scenarios.
LatencyStats timing_probe(Method method, const TaskSpec& task,
                          std::uint64_t seed, const McgnParams* trained = nullptr,
                          const McgnConfig& config = {}, int episodes = 8);

}  // namespace birdseye

#endif  // BIRDSEYE_EVAL_HPP_
