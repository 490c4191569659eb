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

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "birdseye/baselines.hpp"
#include "birdseye/eval.hpp"
#include "birdseye/expert.hpp"
#include "birdseye/frames.hpp"
#include "birdseye/io.hpp"
#include "birdseye/mcgn.hpp"
#include "birdseye/render.hpp"
#include "birdseye/scenario.hpp"

namespace fs = std::filesystem;
using namespace birdseye;

namespace {

// Output root: --out flag beats BIRDSEYE_OUT beats ./runs. Every command
// writes into a fresh stamped subdirectory with a manifest.
struct OutputDir {
  fs::path dir;
  nlohmann::json manifest;

  static OutputDir create(const std::string& out_flag, const std::string& command,
                          std::uint64_t seed) {
    fs::path root;
    if (!out_flag.empty()) {
      root = out_flag;
    } else if (const char* env = std::getenv("BIRDSEYE_OUT")) {
      root = env;
    } else {
      root = "runs";
    }
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm_utc);
    OutputDir out;
    out.dir = root / (command + "-" + std::to_string(seed) + "-" + stamp);
    fs::create_directories(out.dir);
    out.manifest["command"] = command;
    out.manifest["seed"] = seed;
    out.manifest["outputs"] = nlohmann::json::array();
    return out;
  }

  std::string file(const std::string& name) {
    manifest["outputs"].push_back(name);
    return (dir / name).string();
  }

  void finish() {
    write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    std::cout << "outputs in " << dir.string() << "\n";
  }
};

int to_int(const std::map<std::string, std::string>& kv, const std::string& key,
           int fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stoi(it->second);
}

double to_double(const std::map<std::string, std::string>& kv,
                 const std::string& key, double fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stod(it->second);
}

Eigen::Vector3d to_vec3(const std::map<std::string, std::string>& kv,
                        const std::string& key, const Eigen::Vector3d& fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  Eigen::Vector3d v;
  std::istringstream stream(it->second);
  char comma;
  if (!(stream >> v.x() >> comma >> v.y() >> comma >> v.z())) {
    throw std::invalid_argument(key + " must be x,y,z");
  }
  return v;
}

// Recognized keys: the training parameters (learning_rate, epochs,
// episodes_per_epoch, batch_size, vin_iterations, q_channels,
// hidden_channels, lstm_size, memory_slots, memory_width, read_heads,
// write_heads) plus step_cap, embed_size, init_scale.
McgnConfig mcgn_config_from(const std::map<std::string, std::string>& kv) {
  McgnConfig config;
  config.learning_rate = to_double(kv, "learning_rate", config.learning_rate);
  config.epochs = to_int(kv, "epochs", config.epochs);
  config.episodes_per_epoch =
      to_int(kv, "episodes_per_epoch", config.episodes_per_epoch);
  config.batch_size = to_int(kv, "batch_size", config.batch_size);
  config.vin_iterations = to_int(kv, "vin_iterations", config.vin_iterations);
  config.action_channels = to_int(kv, "q_channels", config.action_channels);
  config.hidden_channels = to_int(kv, "hidden_channels", config.hidden_channels);
  config.lstm_size = to_int(kv, "lstm_size", config.lstm_size);
  config.embed_size = to_int(kv, "embed_size", config.embed_size);
  config.memory.slots = to_int(kv, "memory_slots", config.memory.slots);
  config.memory.width = to_int(kv, "memory_width", config.memory.width);
  config.memory.read_heads = to_int(kv, "read_heads", config.memory.read_heads);
  if (to_int(kv, "write_heads", 1) != 1) {
    throw std::invalid_argument("exactly one write head is supported");
  }
  config.step_cap = to_int(kv, "step_cap", config.step_cap);
  config.init_scale = to_double(kv, "init_scale", config.init_scale);
  return config;
}

McgnDims dims_from(const std::map<std::string, std::string>& kv) {
  McgnDims dims;
  dims.rows = to_int(kv, "global_scale_m", 9);
  dims.cols = to_int(kv, "global_scale_n", 9);
  dims.fov.rows = to_int(kv, "observation_range_m", 5);
  dims.fov.cols = to_int(kv, "observation_range_n", 5);
  return dims;
}

FrameConfig frames_from(const std::map<std::string, std::string>& kv) {
  FrameConfig config;
  config.cell_size_m = to_double(kv, "cell_size_m", config.cell_size_m);
  config.camera_origin_w =
      to_vec3(kv, "camera_origin_w", config.camera_origin_w);
  config.map_origin_c = to_vec3(kv, "map_origin_c", config.map_origin_c);
  return config;
}

std::vector<GlobalMap> load_scenarios(const std::string& path) {
  std::vector<GlobalMap> maps;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.path().extension() == ".json" &&
          entry.path().filename() != "manifest.json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) maps.push_back(load_map(f.string()));
  } else {
    maps.push_back(load_map(path));
  }
  if (maps.empty()) throw std::runtime_error("no scenarios under " + path);
  return maps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV-assisted grid navigation workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --out after the subcommand name

  std::string out_flag;
  app.add_option("--out", out_flag,
                 "output root (default: $BIRDSEYE_OUT or ./runs)");

  // --- gen-scenarios ---
  auto* gen = app.add_subcommand("gen-scenarios", "generate feasible layouts");
  int gen_rows = 17, gen_cols = 17, gen_count = 20, gen_cap = kDefaultStepCap;
  std::vector<int> gen_obstacles{2, 3, 4, 5};
  std::uint64_t gen_seed = 0;
  gen->add_option("--rows", gen_rows);
  gen->add_option("--cols", gen_cols);
  gen->add_option("--obstacles", gen_obstacles, "obstacle block counts");
  gen->add_option("--count", gen_count, "scenarios per obstacle count");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--step-cap", gen_cap,
                  "admit only layouts solvable within this many steps");

  // --- gen-dataset ---
  auto* gd = app.add_subcommand("gen-dataset", "expert imitation dataset");
  std::string gd_scenarios;
  int gd_fov_rows = 5, gd_fov_cols = 5;
  gd->add_option("--scenarios", gd_scenarios, "scenario file or directory")
      ->required();
  gd->add_option("--fov-rows", gd_fov_rows);
  gd->add_option("--fov-cols", gd_fov_cols);

  // --- train ---
  auto* tr = app.add_subcommand("train", "imitation-train the planner pair");
  std::string tr_dataset, tr_config;
  std::uint64_t tr_seed = 0;
  tr->add_option("--dataset", tr_dataset, "JSONL expert dataset")->required();
  tr->add_option("--config", tr_config, "key=value configuration file");
  tr->add_option("--seed", tr_seed);

  // --- eval ---
  auto* ev = app.add_subcommand("eval", "success-rate comparison suite");
  std::string ev_task = "Task1", ev_methods = "tb1,tb2,expert_astar";
  std::string ev_params, ev_config;
  std::uint64_t ev_seed = 0;
  int ev_episodes = 0;
  bool ev_full_scale = false;
  ev->add_option("--task", ev_task, "Task1|Task2|Task3");
  ev->add_option("--methods", ev_methods, "comma-separated method list");
  ev->add_option("--params", ev_params, "trained checkpoint (for mcgn methods)");
  ev->add_option("--config", ev_config);
  ev->add_option("--seed", ev_seed);
  ev->add_option("--episodes-per-count", ev_episodes);
  ev->add_flag("--full-scale", ev_full_scale, "100 episodes per count");

  // --- replay ---
  auto* rp = app.add_subcommand("replay", "run one scenario and render it");
  std::string rp_map, rp_method = "tb1", rp_params;
  int rp_fov_rows = 11, rp_fov_cols = 11, rp_cap = kDefaultStepCap;
  rp->add_option("--map", rp_map, "scenario JSON")->required();
  rp->add_option("--method", rp_method);
  rp->add_option("--params", rp_params);
  rp->add_option("--fov-rows", rp_fov_rows);
  rp->add_option("--fov-cols", rp_fov_cols);
  rp->add_option("--step-cap", rp_cap);

  // --- transform ---
  auto* tf = app.add_subcommand("transform", "coordinate frame conversion");
  std::string tf_config, tf_point, tf_from = "world", tf_to = "map";
  tf->add_option("--config", tf_config);
  tf->add_option("--point", tf_point, "x,y,z")->required();
  tf->add_option("--from", tf_from, "world|camera|map");
  tf->add_option("--to", tf_to, "world|camera|map");

  // --- report ---
  auto* rpt = app.add_subcommand("report", "print a stored report as a table");
  std::string rpt_in;
  rpt->add_option("--in", rpt_in, "report JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto out = OutputDir::create(out_flag, "gen-scenarios", gen_seed);
      ScenarioOptions opts;
      opts.max_path_len = gen_cap;
      for (const int obstacles : gen_obstacles) {
        for (int i = 0; i < gen_count; ++i) {
          const std::uint64_t salt =
              static_cast<std::uint64_t>(obstacles) * 1000003ULL +
              static_cast<std::uint64_t>(i);
          const GlobalMap map = generate_scenario(
              gen_rows, gen_cols, obstacles, derive_seed(gen_seed, salt), opts);
          char name[64];
          std::snprintf(name, sizeof(name), "scenario-obs%d-%03d.json",
                        obstacles, i);
          save_map(out.file(name), map);
        }
      }
      out.finish();
    } else if (gd->parsed()) {
      auto out = OutputDir::create(out_flag, "gen-dataset", 0);
      const auto maps = load_scenarios(gd_scenarios);
      const auto dataset =
          generate_dataset(maps, FovSize{gd_fov_rows, gd_fov_cols});
      save_dataset(out.file("dataset.jsonl"), dataset);
      std::cout << dataset.size() << " samples from " << maps.size()
                << " scenarios\n";
      out.finish();
    } else if (tr->parsed()) {
      auto out = OutputDir::create(out_flag, "train", tr_seed);
      const auto kv = tr_config.empty()
                          ? std::map<std::string, std::string>{}
                          : load_config(tr_config);
      const McgnConfig config = mcgn_config_from(kv);
      const McgnDims dims = dims_from(kv);
      const auto dataset = load_dataset(tr_dataset);
      const TrainResult result = train(dataset, config, dims, tr_seed);
      save_params(out.file("params.bin"), result.params);
      nlohmann::json j;
      for (const auto& [name, report] :
           {std::pair{"joint", &result.joint_report},
            std::pair{"hover", &result.hover_report}}) {
        j[name] = {{"loss", report->loss},
                   {"accuracy", report->accuracy},
                   {"wall_seconds", report->wall_seconds}};
      }
      write_file(out.file("train_report.json"), j.dump(2) + "\n");
      const auto last = [](const std::vector<double>& v) {
        return v.empty() ? 0.0 : v.back();
      };
      std::cout << "joint: loss " << last(result.joint_report.loss) << " acc "
                << last(result.joint_report.accuracy) << "\n"
                << "hover: loss " << last(result.hover_report.loss) << " acc "
                << last(result.hover_report.accuracy) << "\n";
      out.finish();
    } else if (ev->parsed()) {
      auto out = OutputDir::create(out_flag, "eval", ev_seed);
      auto task = task_from_name(ev_task);
      if (!task) throw std::invalid_argument("unknown task " + ev_task);
      if (ev_full_scale) *task = task->full_scale();
      if (ev_episodes > 0) task->episodes_per_count = ev_episodes;

      std::vector<Method> methods;
      std::istringstream stream(ev_methods);
      std::string token;
      while (std::getline(stream, token, ',')) {
        const auto m = method_from_name(token);
        if (!m) throw std::invalid_argument("unknown method " + token);
        methods.push_back(*m);
      }

      McgnParams params;
      const McgnConfig config = mcgn_config_from(
          ev_config.empty() ? std::map<std::string, std::string>{}
                            : load_config(ev_config));
      const bool needs_params =
          std::any_of(methods.begin(), methods.end(), [](Method m) {
            return m == Method::kMcgn || m == Method::kMcgnMemoryAlways;
          });
      if (needs_params) {
        if (ev_params.empty()) {
          throw std::invalid_argument("--params required for mcgn methods");
        }
        params = load_params(ev_params);
      }
      const EvalReport report = run_suite(*task, methods, ev_seed,
                                          needs_params ? &params : nullptr,
                                          config);
      write_file(out.file("report.json"), report_to_json(report));
      const std::string table = report_table(report);
      write_file(out.file("report.txt"), table);
      std::cout << table;
      out.finish();
    } else if (rp->parsed()) {
      auto out = OutputDir::create(out_flag, "replay", 0);
      const GlobalMap map = load_map(rp_map);
      const FovSize fov{rp_fov_rows, rp_fov_cols};
      const auto method = method_from_name(rp_method);
      if (!method) throw std::invalid_argument("unknown method " + rp_method);

      EpisodeOutcome outcome;
      switch (*method) {
        case Method::kTb1: outcome = run_tb1(map, fov, rp_cap); break;
        case Method::kTb2: outcome = run_tb2(map, fov, rp_cap); break;
        case Method::kExpertAstar: outcome = run_expert(map, fov, rp_cap); break;
        case Method::kMcgn:
        case Method::kMcgnMemoryAlways: {
          if (rp_params.empty()) {
            throw std::invalid_argument("--params required for mcgn methods");
          }
          const McgnParams params = load_params(rp_params);
          McgnConfig config;
          config.step_cap = rp_cap;
          config.ablation_memory_always = *method == Method::kMcgnMemoryAlways;
          outcome = run_episode(map, fov, params, config);
          break;
        }
      }
      write_file(out.file("outcome.json"), outcome_to_json(outcome) + "\n");
      const RenderArtifacts art = render_trace(outcome, map, fov);
      write_file(out.file("trace.svg"), art.svg);
      write_file(out.file("trace.pgm"), art.pgm);
      std::cout << (outcome.success ? "success" : "failure") << " in "
                << outcome.steps << " steps, " << outcome.collisions
                << " collisions\n";
      out.finish();
    } else if (tf->parsed()) {
      const FrameConfig config = frames_from(
          tf_config.empty() ? std::map<std::string, std::string>{}
                            : load_config(tf_config));
      Eigen::Vector3d v;
      char comma;
      std::istringstream stream(tf_point);
      if (!(stream >> v.x() >> comma >> v.y() >> comma >> v.z())) {
        throw std::invalid_argument("--point must be x,y,z");
      }
      const auto tag = [](const std::string& name) {
        if (name == "world") return FrameTag::kWorld;
        if (name == "camera") return FrameTag::kCamera;
        if (name == "map") return FrameTag::kMap;
        throw std::invalid_argument("unknown frame " + name);
      };
      FramePoint p{tag(tf_from), v};
      const FrameTag want = tag(tf_to);
      while (p.frame != want) {
        // world -> camera -> map, or any frame back through world.
        if (p.frame == FrameTag::kWorld) {
          p = want == FrameTag::kMap ? world_to_map(p, config)
                                     : world_to_camera(p, config.camera_origin_w);
        } else if (p.frame == FrameTag::kCamera) {
          if (want == FrameTag::kMap) {
            p = camera_to_map(p, config.map_origin_c);
          } else {
            p = FramePoint{FrameTag::kWorld,
                           camera_from_world(config.camera_origin_w)
                               .inverse()
                               .apply(p.coords)};
          }
        } else {
          p = map_to_world(p, config);
        }
      }
      std::cout << tf_to << ": " << p.coords.x() << " " << p.coords.y() << " "
                << p.coords.z() << "\n";
    } else if (rpt->parsed()) {
      std::cout << report_table(report_from_json(read_file(rpt_in)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
