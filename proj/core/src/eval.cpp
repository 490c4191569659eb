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

#include "birdseye/eval.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "birdseye/astar.hpp"
#include "birdseye/baselines.hpp"
#include "birdseye/scenario.hpp"

namespace birdseye {

const char* method_name(Method method) {
  switch (method) {
    case Method::kMcgn: return "mcgn";
    case Method::kMcgnMemoryAlways: return "mcgn_memory_always";
    case Method::kTb1: return "tb1";
    case Method::kTb2: return "tb2";
    case Method::kExpertAstar: return "expert_astar";
  }
  return "unknown";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : {Method::kMcgn, Method::kMcgnMemoryAlways, Method::kTb1,
                   Method::kTb2, Method::kExpertAstar}) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

TaskSpec task1() { return TaskSpec{"Task1", 17, 17, FovSize{11, 11}}; }
TaskSpec task2() { return TaskSpec{"Task2", 17, 17, FovSize{9, 9}}; }
TaskSpec task3() { return TaskSpec{"Task3", 15, 15, FovSize{9, 9}}; }

std::optional<TaskSpec> task_from_name(const std::string& name) {
  if (name == "Task1" || name == "task1") return task1();
  if (name == "Task2" || name == "task2") return task2();
  if (name == "Task3" || name == "task3") return task3();
  return std::nullopt;
}

namespace {

GlobalMap suite_scenario(const TaskSpec& task, std::uint64_t seed,
                         int obstacle_count, int episode) {
  ScenarioOptions opts;
  opts.max_path_len = task.step_cap;
  const std::uint64_t salt =
      static_cast<std::uint64_t>(obstacle_count) * 1000003ULL +
      static_cast<std::uint64_t>(episode);
  return generate_scenario(task.rows, task.cols, obstacle_count,
                           derive_seed(seed, salt), opts);
}

EpisodeOutcome run_method(Method method, const GlobalMap& map,
                          const TaskSpec& task, const McgnParams* trained,
                          const McgnConfig& config) {
  switch (method) {
    case Method::kTb1:
      return run_tb1(map, task.fov, task.step_cap);
    case Method::kTb2:
      return run_tb2(map, task.fov, task.step_cap);
    case Method::kExpertAstar:
      return run_expert(map, task.fov, task.step_cap);
    case Method::kMcgn:
    case Method::kMcgnMemoryAlways: {
      if (trained == nullptr) {
        throw std::invalid_argument("learned methods need trained parameters");
      }
      McgnConfig c = config;
      c.step_cap = task.step_cap;
      c.ablation_memory_always = method == Method::kMcgnMemoryAlways;
      return run_episode(map, task.fov, *trained, c);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

EvalReport run_suite(const TaskSpec& task, const std::vector<Method>& methods,
                     std::uint64_t seed, const McgnParams* trained,
                     const McgnConfig& config) {
  if (task.fov.rows > task.rows || task.fov.cols > task.cols) {
    throw std::invalid_argument("observation range exceeds the global scale");
  }
  EvalReport report;
  report.task = task.name;
  report.observation_ratio = task.observation_ratio();
  report.seed = seed;
  report.step_cap = task.step_cap;
  report.obstacle_counts = task.obstacle_counts;
  report.methods = methods;
  report.results.assign(methods.size(),
                        std::vector<CellStats>(task.obstacle_counts.size()));
  report.scenario_hashes.assign(task.obstacle_counts.size(), {});

  for (std::size_t ci = 0; ci < task.obstacle_counts.size(); ++ci) {
    const int count = task.obstacle_counts[ci];
    for (int episode = 0; episode < task.episodes_per_count; ++episode) {
      const GlobalMap map = suite_scenario(task, seed, count, episode);
      report.scenario_hashes[ci].push_back(scenario_hash(map));
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const EpisodeOutcome outcome =
            run_method(methods[mi], map, task, trained, config);
        CellStats& stats = report.results[mi][ci];
        stats.total += 1;
        stats.successes += outcome.success ? 1 : 0;
        stats.mean_steps += outcome.steps;
        stats.mean_collisions += outcome.collisions;
      }
    }
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      CellStats& stats = report.results[mi][ci];
      if (stats.total > 0) {
        stats.mean_steps /= stats.total;
        stats.mean_collisions /= stats.total;
      }
    }
  }
  return report;
}

std::string report_table(const EvalReport& report) {
  std::ostringstream out;
  char ratio[32];
  std::snprintf(ratio, sizeof(ratio), "%.2f", report.observation_ratio);
  out << report.task << "  (observation ratio " << ratio << ", seed "
      << report.seed << ")\n";
  out << "method              ";
  for (int count : report.obstacle_counts) {
    std::string head = "Obs_" + std::to_string(count);
    head.resize(10, ' ');
    out << "  " << head;
  }
  out << "\n";
  for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
    std::string name = method_name(report.methods[mi]);
    name.resize(20, ' ');
    out << name;
    for (std::size_t ci = 0; ci < report.obstacle_counts.size(); ++ci) {
      const CellStats& stats = report.results[mi][ci];
      std::string cell =
          std::to_string(stats.successes) + "/" + std::to_string(stats.total);
      cell.resize(10, ' ');
      out << "  " << cell;
    }
    out << "\n";
  }
  return out.str();
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["task"] = report.task;
  j["observation_ratio"] = report.observation_ratio;
  j["seed"] = report.seed;
  j["step_cap"] = report.step_cap;
  j["obstacle_counts"] = report.obstacle_counts;
  nlohmann::json methods = nlohmann::json::array();
  for (std::size_t mi = 0; mi < report.methods.size(); ++mi) {
    nlohmann::json m;
    m["method"] = method_name(report.methods[mi]);
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t ci = 0; ci < report.obstacle_counts.size(); ++ci) {
      const CellStats& stats = report.results[mi][ci];
      cells.push_back({{"obstacles", report.obstacle_counts[ci]},
                       {"successes", stats.successes},
                       {"total", stats.total},
                       {"mean_steps", stats.mean_steps},
                       {"mean_collisions", stats.mean_collisions}});
    }
    m["cells"] = std::move(cells);
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);
  nlohmann::json hashes = nlohmann::json::array();
  for (const auto& per_count : report.scenario_hashes) {
    hashes.push_back(per_count);
  }
  j["scenario_hashes"] = std::move(hashes);
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& json) {
  const nlohmann::json j = nlohmann::json::parse(json);
  EvalReport report;
  report.task = j.at("task").get<std::string>();
  report.observation_ratio = j.at("observation_ratio").get<double>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.step_cap = j.at("step_cap").get<int>();
  report.obstacle_counts = j.at("obstacle_counts").get<std::vector<int>>();
  for (const auto& m : j.at("methods")) {
    const auto method = method_from_name(m.at("method").get<std::string>());
    if (!method) throw std::invalid_argument("unknown method in report");
    report.methods.push_back(*method);
    std::vector<CellStats> cells;
    for (const auto& cell : m.at("cells")) {
      CellStats stats;
      stats.successes = cell.at("successes").get<int>();
      stats.total = cell.at("total").get<int>();
      stats.mean_steps = cell.at("mean_steps").get<double>();
      stats.mean_collisions = cell.at("mean_collisions").get<double>();
      cells.push_back(stats);
    }
    report.results.push_back(std::move(cells));
  }
  for (const auto& per_count : j.at("scenario_hashes")) {
    report.scenario_hashes.push_back(per_count.get<std::vector<std::uint64_t>>());
  }
  return report;
}

LatencyStats timing_probe(Method method, const TaskSpec& task,
                          std::uint64_t seed, const McgnParams* trained,
                          const McgnConfig& config, int episodes) {
  using Clock = std::chrono::steady_clock;
  (void)config;
  if ((method == Method::kMcgn || method == Method::kMcgnMemoryAlways) &&
      trained == nullptr) {
    throw std::invalid_argument("learned methods need trained parameters");
  }
  std::vector<double> times_ms;

  for (int episode = 0; episode < episodes; ++episode) {
    const GlobalMap map = suite_scenario(task, derive_seed(seed, 7777), 3, episode);
    // Decision poses sampled along the optimal trajectory.
    const EpisodeOutcome expert = run_expert(map, task.fov, task.step_cap);
    const auto& traj = expert.trajectory;
    std::vector<Cell> poses;
    const std::size_t stride = std::max<std::size_t>(1, traj.size() / 5);
    for (std::size_t i = 0; i < traj.size(); i += stride) poses.push_back(traj[i]);

    ControllerState ctrl;
    MemoryState memory;
    if (trained != nullptr) {
      ctrl = make_controller_state(trained->controller_config);
      memory = make_memory_state(trained->controller_config.memory);
    }
    for (const Cell pose : poses) {
      const MaskedObservation obs = mask(map, pose, task.fov);
      const bool visible = obs.o_g(map.target) == CellCode::kTarget;
      const auto t0 = Clock::now();
      switch (method) {
        case Method::kExpertAstar:
          (void)astar(map.cells, pose, map.target);
          break;
        case Method::kTb1:
        case Method::kTb2: {
          if (visible) {
            (void)astar(obs.o_g, pose, map.target);
          } else {
            const auto mid = search_min_dis_to_target(obs.o_g, pose, map.target);
            if (mid) (void)astar(obs.o_g, pose, *mid);
          }
          break;
        }
        case Method::kMcgn:
        case Method::kMcgnMemoryAlways: {
          if (visible && method == Method::kMcgn) {
            const Cell local{pose.row - obs.fov_origin.row,
                             pose.col - obs.fov_origin.col};
            (void)plan_step_mode2(obs.o_p, local, *trained);
          } else {
            Mode1Result out = plan_step_mode1(obs.o_g, ctrl, memory, *trained);
            ctrl = std::move(out.ctrl);
            memory = std::move(out.memory);
          }
          break;
        }
      }
      const auto t1 = Clock::now();
      times_ms.push_back(
          std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }

  LatencyStats stats;
  stats.decisions = times_ms.size();
  if (times_ms.empty()) return stats;
  double total = 0.0;
  for (double t : times_ms) total += t;
  stats.mean_ms = total / static_cast<double>(times_ms.size());
  std::sort(times_ms.begin(), times_ms.end());
  stats.median_ms = times_ms[times_ms.size() / 2];
  const std::size_t p95_index = std::min(
      times_ms.size() - 1,
      static_cast<std::size_t>(static_cast<double>(times_ms.size()) * 0.95));
  stats.p95_ms = times_ms[p95_index];
  return stats;
}

}  // namespace birdseye
