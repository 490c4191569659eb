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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "birdseye/astar.hpp"
#include "birdseye/baselines.hpp"
#include "birdseye/controller.hpp"
#include "birdseye/eval.hpp"
#include "birdseye/expert.hpp"
#include "birdseye/frames.hpp"
#include "birdseye/mcgn.hpp"
#include "birdseye/mdp.hpp"
#include "birdseye/scenario.hpp"
#include "birdseye/vin.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace birdseye;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const char* what, double seconds) {
  std::printf("criterion %2d: %s  %-58s (%.1f s)\n", criterion,
              pass ? "PASS" : "FAIL", what, seconds);
  if (!pass) ++g_failures;
}

double elapsed(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1
void criterion_exact_value_iteration() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> next_state(0, 63);
  std::uniform_real_distribution<double> reward(-1.0, 1.0);
  bool pass = true;
  for (int trial = 0; trial < 50; ++trial) {
    TabularMdp mdp;
    mdp.num_states = 64;
    mdp.discount = 0.9;
    mdp.transition.resize(64);
    mdp.reward.resize(64);
    for (int s = 0; s < 64; ++s) {
      for (int a = 0; a < kNumActions; ++a) {
        mdp.transition[s][a] = next_state(rng);
        mdp.reward[s][a] = reward(rng);
      }
    }
    const auto got = value_iteration_exact(mdp, 1e-12);
    // Independent oracle: plain nested-loop Bellman sweeps, fixed count.
    std::vector<double> want(64, 0.0);
    for (int sweep = 0; sweep < 700; ++sweep) {
      std::vector<double> next(64);
      for (int s = 0; s < 64; ++s) {
        double best = -1e300;
        for (int a = 0; a < kNumActions; ++a) {
          const double q =
              mdp.reward[s][a] + mdp.discount * want[mdp.transition[s][a]];
          if (q > best) best = q;
        }
        next[static_cast<size_t>(s)] = best;
      }
      want = std::move(next);
    }
    for (int s = 0; s < 64; ++s) {
      pass = pass && std::abs(got[static_cast<size_t>(s)] -
                              want[static_cast<size_t>(s)]) < 1e-9;
    }
  }
  const double secs = elapsed(t0);
  report(1, pass && secs < 5.0,
         "exact value iteration vs brute-force oracle, 50x 8x8", secs);
}

// ---------------------------------------------------------------- 2
void criterion_gradient_checks() {
  const auto t0 = Clock::now();
  bool pass = true;
  const double tol = 1e-4;

  // VIN on a 7x7 instance, every parameter group plus the input.
  {
    std::mt19937_64 rng(202);
    VinParams params = make_vin_params(6, 4, rng, 0.4);
    Tensor input{2, 7, 7};
    fill_uniform(input, rng, 1.0);
    ValueMaps upstream;
    upstream.reward = Tensor{7, 7};
    upstream.q = Tensor{4, 7, 7};
    upstream.value = Tensor{7, 7};
    fill_uniform(upstream.reward, rng, 1.0);
    fill_uniform(upstream.q, rng, 1.0);
    fill_uniform(upstream.value, rng, 1.0);

    const auto loss = [&]() {
      const ValueMaps maps = vin_forward(input, params);
      double acc = 0.0;
      for (std::size_t i = 0; i < maps.reward.size(); ++i) acc += maps.reward[i] * upstream.reward[i];
      for (std::size_t i = 0; i < maps.q.size(); ++i) acc += maps.q[i] * upstream.q[i];
      for (std::size_t i = 0; i < maps.value.size(); ++i) acc += maps.value[i] * upstream.value[i];
      return acc;
    };
    VinCache cache;
    (void)vin_forward(input, params, &cache);
    const VinGrads grads = vin_backward(params, cache, upstream);
    pass = pass && test::grad_check(params.conv1, grads.conv1, loss) < tol;
    pass = pass && test::grad_check(params.pool, grads.pool, loss) < tol;
    pass = pass && test::grad_check(params.conv2_r, grads.conv2_r, loss) < tol;
    pass = pass && test::grad_check(params.conv2_v, grads.conv2_v, loss) < tol;
    pass = pass && test::grad_check(input, grads.input, loss) < tol;
  }

  // Controller (embedding, LSTM, both heads) through one memory step, on
  // features sized for a 7x7 stack.
  {
    const MemoryConfig mem{6, 4, 2};
    const ControllerConfig config{7 * 7 * 2, 8, 10, 4, mem};
    std::mt19937_64 rng(203);
    ControllerParams params = make_controller_params(config, rng, 0.3);
    MemoryState mem_state = make_memory_state(mem);
    fill_uniform(mem_state.memory, rng, 0.8);
    std::uniform_real_distribution<double> unit(0.05, 0.12);
    for (double& u : mem_state.usage.flat()) u = unit(rng);
    for (auto& w : mem_state.read_weights) {
      for (double& v : w.flat()) v = unit(rng);
    }
    for (double& v : mem_state.write_weight.flat()) v = unit(rng);
    for (double& v : mem_state.precedence.flat()) v = unit(rng);
    for (int i = 0; i < mem.slots; ++i) {
      for (int j = 0; j < mem.slots; ++j) {
        if (i != j) mem_state.link(i, j) = unit(rng) / mem.slots;
      }
    }
    for (auto& r : mem_state.reads) fill_uniform(r, rng, 0.5);
    ControllerState ctrl_state = make_controller_state(config);
    Tensor features{config.feature_size};
    fill_uniform(features, rng, 1.0);

    Tensor w_out{4};
    fill_uniform(w_out, rng, 1.0);
    std::vector<Tensor> w_reads;
    for (int i = 0; i < mem.read_heads; ++i) {
      Tensor w{mem.width};
      fill_uniform(w, rng, 1.0);
      w_reads.push_back(std::move(w));
    }

    const auto loss = [&]() {
      const ControllerOutput out = controller_step(config, params, ctrl_state,
                                                   features, mem_state.reads);
      const MemoryState next = memory_step(mem_state, out.iface);
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) acc += w_out(a) * out.output(a);
      for (int i = 0; i < mem.read_heads; ++i) {
        for (int j = 0; j < mem.width; ++j) {
          acc += w_reads[static_cast<size_t>(i)](j) *
                 next.reads[static_cast<size_t>(i)](j);
        }
      }
      return acc;
    };

    ControllerCache cache;
    const ControllerOutput out = controller_step(config, params, ctrl_state,
                                                 features, mem_state.reads,
                                                 &cache);
    MemoryStepCache mem_cache;
    (void)memory_step(mem_state, out.iface, &mem_cache);
    MemoryState grad_next = make_memory_state(mem);
    for (int i = 0; i < mem.read_heads; ++i) {
      grad_next.reads[static_cast<size_t>(i)] = w_reads[static_cast<size_t>(i)];
    }
    MemoryState grad_prev = make_memory_state(mem);
    InterfaceVector grad_iface = make_zero_interface(mem);
    memory_step_backward(mem_cache, grad_next, grad_prev, grad_iface);

    ControllerGrads grads = make_controller_grads(params);
    ControllerState g_prev = make_controller_state(config);
    Tensor g_features;
    std::vector<Tensor> g_reads;
    controller_step_backward(config, params, cache, w_out, grad_iface,
                             make_controller_state(config), grads, g_prev,
                             g_features, g_reads);
    pass = pass && test::grad_check(params.embed_w, grads.embed_w, loss) < tol;
    pass = pass && test::grad_check(params.embed_b, grads.embed_b, loss) < tol;
    pass = pass && test::grad_check(params.lstm.w_input, grads.lstm.w_input, loss) < tol;
    pass = pass && test::grad_check(params.lstm.w_hidden, grads.lstm.w_hidden, loss) < tol;
    pass = pass && test::grad_check(params.lstm.bias, grads.lstm.bias, loss) < tol;
    pass = pass && test::grad_check(params.out_w, grads.out_w, loss) < tol;
    pass = pass && test::grad_check(params.out_b, grads.out_b, loss) < tol;
    pass = pass && test::grad_check(params.iface_w, grads.iface_w, loss) < tol;
    pass = pass && test::grad_check(params.iface_b, grads.iface_b, loss) < tol;
  }

  const double secs = elapsed(t0);
  report(2, pass && secs < 60.0,
         "VIN + controller backward vs central differences, 7x7", secs);
}

// ---------------------------------------------------------------- 3
void criterion_memory_invariants() {
  const auto t0 = Clock::now();
  bool pass = true;
  const MemoryConfig config{32, 8, 4};
  std::mt19937_64 rng(303);
  MemoryState state = make_memory_state(config);
  constexpr double kSlack = 1e-9;
  for (int t = 0; t < 1000 && pass; ++t) {
    Tensor raw{interface_size(config)};
    fill_uniform(raw, rng, 2.0);
    state = memory_step(state, parse_interface(raw, config));

    double write_sum = 0.0;
    for (double v : state.write_weight.flat()) {
      pass = pass && v >= -kSlack;
      write_sum += v;
    }
    pass = pass && write_sum <= 1.0 + kSlack;
    for (const Tensor& w : state.read_weights) {
      double sum = 0.0;
      for (double v : w.flat()) {
        pass = pass && v >= -kSlack;
        sum += v;
      }
      pass = pass && sum <= 1.0 + kSlack;
    }
    for (double u : state.usage.flat()) {
      pass = pass && u >= -kSlack && u <= 1.0 + kSlack;
    }
    for (int i = 0; i < config.slots; ++i) {
      pass = pass && state.link(i, i) == 0.0;
      double row = 0.0, col = 0.0;
      for (int j = 0; j < config.slots; ++j) {
        pass = pass && state.link(i, j) >= -kSlack;
        row += state.link(i, j);
        col += state.link(j, i);
      }
      pass = pass && row <= 1.0 + kSlack && col <= 1.0 + kSlack;
    }
  }

  // Store/recall at the full-scale geometry.
  {
    MemoryState fresh = make_memory_state(config);
    InterfaceVector store = make_zero_interface(config);
    store.write_gate = 1.0;
    store.allocation_gate = 1.0;
    store.write_strength = 1.0;
    store.erase.fill(1.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& v : store.write_vector.flat()) v = unit(rng);
    for (auto& s : store.read_strengths) s = 1.0;
    fresh = memory_step(fresh, store);

    InterfaceVector recall = make_zero_interface(config);
    recall.write_gate = 0.0;
    recall.write_strength = 1.0;
    recall.read_keys[0] = store.write_vector;
    recall.read_strengths[0] = 100.0;
    for (std::size_t i = 1; i < recall.read_strengths.size(); ++i) {
      recall.read_strengths[i] = 1.0;
    }
    recall.read_modes[0] = {0.0, 1.0, 0.0};
    fresh = memory_step(fresh, recall);

    double dot = 0.0, a = 0.0, b = 0.0;
    for (int j = 0; j < config.width; ++j) {
      dot += fresh.reads[0](j) * store.write_vector(j);
      a += fresh.reads[0](j) * fresh.reads[0](j);
      b += store.write_vector(j) * store.write_vector(j);
    }
    pass = pass && dot / std::sqrt(a * b) > 0.99;
  }

  const double secs = elapsed(t0);
  report(3, pass && secs < 10.0,
         "memory invariants over 1000 steps + store/recall > 0.99", secs);
}

// ---------------------------------------------------------------- 4
void criterion_astar_optimality() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(404);
  bool pass = true;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CodeGrid cells = test::random_cells(9, 9, 0.25, rng);
    const Cell start{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    const Cell goal{static_cast<int>(rng() % 9), static_cast<int>(rng() % 9)};
    cells(start) = CellCode::kFree;
    cells(goal) = CellCode::kFree;
    const int oracle = test::oracle_shortest_path(cells, start, goal);
    const auto path = astar(cells, start, goal);
    if (oracle < 0) {
      pass = pass && !path.has_value();
    } else {
      pass = pass && path.has_value() &&
             static_cast<int>(path->size()) - 1 == oracle;
    }
    ++checked;
  }
  const double secs = elapsed(t0);
  report(4, pass && checked == 200 && secs < 2.0,
         "A* length equals BFS oracle on 200 random 9x9 maps", secs);
}

// ---------------------------------------------------------------- 5
void criterion_trap_fixture() {
  const auto t0 = Clock::now();
  const GlobalMap map = test::trap_map();
  const FovSize fov = test::trap_fov();

  const EpisodeOutcome tb1 = run_tb1(map, fov, kDefaultStepCap);
  std::set<std::pair<int, int>> seen;
  bool revisit = false;
  for (const Cell c : tb1.trajectory) {
    if (!seen.insert({c.row, c.col}).second) revisit = true;
  }
  const auto direct = astar(map.cells, map.start, map.target);
  const bool tb1_ok = tb1.success && revisit && direct.has_value() &&
                      tb1.steps > static_cast<int>(direct->size()) - 1;

  const EpisodeOutcome tb2 = run_tb2(map, fov, kDefaultStepCap);
  int best_run = 0, run = 0;
  for (std::size_t i = 2; i < tb2.trajectory.size(); ++i) {
    const int d_prev = tb2.trajectory[i - 1].col - tb2.trajectory[i - 2].col;
    const int d_cur = tb2.trajectory[i].col - tb2.trajectory[i - 1].col;
    const bool flip = d_prev != 0 && d_cur == -d_prev &&
                      tb2.trajectory[i - 1].row == tb2.trajectory[i - 2].row &&
                      tb2.trajectory[i].row == tb2.trajectory[i - 1].row;
    run = flip ? run + 1 : 0;
    best_run = std::max(best_run, run);
  }
  const bool tb2_ok =
      !tb2.success && tb2.steps == kDefaultStepCap && best_run >= 3;

  report(5, tb1_ok && tb2_ok,
         "trap map: full-leg planner backtracks, one-step planner spins",
         elapsed(t0));
}

// ---------------------------------------------------------------- 6
namespace {

// Argmax agreement with the actions stored in `dataset`, evaluated with the
// given parameters (joint samples replayed as per-scenario sequences).
double dataset_accuracy(const McgnParams& params,
                        const std::vector<ExpertSample>& dataset) {
  std::map<std::uint64_t, std::vector<const ExpertSample*>> by_scenario;
  std::vector<const ExpertSample*> hover;
  for (const auto& s : dataset) {
    if (s.mode == Mode::kJoint) {
      by_scenario[s.scenario_id].push_back(&s);
    } else {
      hover.push_back(&s);
    }
  }
  int correct = 0;
  for (auto& [id, seq] : by_scenario) {
    std::sort(seq.begin(), seq.end(),
              [](const ExpertSample* a, const ExpertSample* b) {
                return a->step_index < b->step_index;
              });
    (void)joint_sequence_loss(params, seq, 1.0, nullptr, &correct);
  }
  for (const ExpertSample* s : hover) {
    (void)hover_sample_loss(params, *s, 1.0, nullptr, &correct);
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.size());
}

}  // namespace

void criterion_toy_training() {
  const auto t0 = Clock::now();
  const McgnDims dims{9, 9, FovSize{5, 5}};

  // 500-sample corpus from the directional fixture distribution.
  std::vector<ExpertSample> dataset;
  std::uint64_t fixture_seed = 0;
  while (dataset.size() < 500) {
    const GlobalMap map = test::training_fixture(7000 + fixture_seed);
    auto samples = expert_samples(map, dims.fov, fixture_seed);
    for (auto& s : samples) {
      if (dataset.size() < 500) dataset.push_back(std::move(s));
    }
    ++fixture_seed;
  }

  const McgnConfig config = test::desk_training_config();
  const TrainResult result = train(dataset, config, dims, 14);

  const bool loss_halved =
      result.joint_report.loss.back() <= 0.5 * result.joint_report.loss.front() &&
      result.hover_report.loss.back() <= 0.5 * result.hover_report.loss.front();

  const double train_acc = dataset_accuracy(result.params, dataset);

  // Held-out fixtures from a disjoint seed range.
  int successes = 0;
  const int held_out = 50;
  for (int i = 0; i < held_out; ++i) {
    const GlobalMap map = test::training_fixture(90000 + static_cast<std::uint64_t>(i));
    if (run_episode(map, dims.fov, result.params, config).success) ++successes;
  }
  const double held_out_rate =
      static_cast<double>(successes) / static_cast<double>(held_out);

  // Label-permutation control: train on destroyed labels, then measure
  // agreement with the true expert actions. Any real signal in the pipeline
  // comes out at chance.
  std::vector<ExpertSample> shuffled = dataset;
  std::mt19937_64 label_rng(5150);
  for (auto& s : shuffled) {
    s.action = static_cast<Action>(label_rng() % 4);
  }
  const TrainResult control = train(shuffled, config, dims, 14);
  const double control_acc = dataset_accuracy(control.params, dataset);

  const double secs = elapsed(t0);
  const bool pass = loss_halved && train_acc >= 0.90 && held_out_rate >= 0.70 &&
                    control_acc >= 0.15 && control_acc <= 0.35 && secs < 900.0;
  std::printf("              [loss %.3f->%.3f | %.3f->%.3f, train acc %.3f, "
              "held-out %.2f, control %.3f]\n",
              result.joint_report.loss.front(), result.joint_report.loss.back(),
              result.hover_report.loss.front(), result.hover_report.loss.back(),
              train_acc, held_out_rate, control_acc);
  report(6, pass, "toy imitation training on 500 samples, 50 epochs", secs);
}

// ---------------------------------------------------------------- 7
void criterion_mode_switch_contract() {
  const auto t0 = Clock::now();
  const McgnDims dims{9, 9, FovSize{5, 5}};
  McgnConfig config;
  config.vin_iterations = 4;
  config.hidden_channels = 6;
  config.lstm_size = 12;
  config.embed_size = 8;
  config.memory = MemoryConfig{6, 4, 2};

  bool pass = true;
  for (std::uint64_t episode = 0; episode < 100; ++episode) {
    const McgnParams params = make_mcgn_params(config, dims, 4000 + episode);
    const GlobalMap map = generate_scenario(9, 9, 1 + static_cast<int>(episode % 5),
                                            5000 + episode);
    config.ablation_memory_always = false;
    std::vector<StepTrace> plain;
    (void)run_episode(map, dims.fov, params, config, &plain);
    bool hover_seen = false;
    for (const StepTrace& t : plain) {
      if (t.mode == Mode::kHover) hover_seen = true;
      if (hover_seen && t.mode != Mode::kHover) pass = false;
    }

    config.ablation_memory_always = true;
    std::vector<StepTrace> ablated;
    (void)run_episode(map, dims.fov, params, config, &ablated);
    std::size_t tau = 0;
    while (tau < plain.size() && plain[tau].mode == Mode::kJoint) ++tau;
    if (ablated.size() < tau) {
      pass = false;
      continue;
    }
    for (std::size_t i = 0; i < tau; ++i) {
      pass = pass && ablated[i].logits == plain[i].logits &&
             ablated[i].action == plain[i].action;
    }
    for (const StepTrace& t : ablated) pass = pass && t.mode == Mode::kJoint;
  }
  report(7, pass, "mode sequence I*II* and bitwise pre-switch ablation match",
         elapsed(t0));
}

// ---------------------------------------------------------------- 8
void criterion_frames() {
  const auto t0 = Clock::now();
  FrameConfig config;
  config.camera_origin_w = Eigen::Vector3d(3.0, -1.5, 10.0);
  config.map_origin_c = Eigen::Vector3d(-2.0, 0.75, 1.25);

  bool pass = true;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const FramePoint p{FrameTag::kWorld,
                       Eigen::Vector3d(dist(rng), dist(rng), dist(rng))};
    const FramePoint back = map_to_world(world_to_map(p, config), config);
    pass = pass && (back.coords - p.coords).norm() < 1e-9;
  }
  const Eigen::Matrix4d composed = map_from_world(config).matrix();
  const Eigen::Matrix4d product = (map_from_camera(config.map_origin_c) *
                                   camera_from_world(config.camera_origin_w))
                                      .matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      pass = pass && composed(i, j) == product(i, j);
    }
  }
  report(8, pass, "frame round trips within 1e-9; composition entrywise equal",
         elapsed(t0));
}

// ---------------------------------------------------------------- 9
void criterion_eval_determinism() {
  const auto t0 = Clock::now();
  bool pass = true;
  const std::vector<Method> methods{Method::kExpertAstar, Method::kTb1,
                                    Method::kTb2};
  for (TaskSpec task : {task1(), task2(), task3()}) {
    task.episodes_per_count = 5;
    const EvalReport a = run_suite(task, methods, 99);
    const EvalReport b = run_suite(task, methods, 99);
    pass = pass && report_to_json(a) == report_to_json(b);
    for (std::size_t ci = 0; ci < a.obstacle_counts.size(); ++ci) {
      pass = pass && a.results[0][ci].successes == a.results[0][ci].total;
    }
  }
  report(9, pass, "eval reports byte-identical; expert at 100% on every suite",
         elapsed(t0));
}

// ---------------------------------------------------------------- 10
void criterion_decision_latency() {
  const auto t0 = Clock::now();
  // Full-scale default configuration at Task1 geometry.
  const McgnConfig config;
  const McgnDims dims{17, 17, FovSize{11, 11}};
  const McgnParams params = make_mcgn_params(config, dims, 123);
  const TaskSpec task = task1();

  const LatencyStats mcgn =
      timing_probe(Method::kMcgn, task, 7, &params, config, 6);
  const LatencyStats tb1 = timing_probe(Method::kTb1, task, 7, nullptr, {}, 6);
  const LatencyStats tb2 = timing_probe(Method::kTb2, task, 7, nullptr, {}, 6);
  const bool pass = mcgn.decisions > 0 && mcgn.median_ms < 50.0 &&
                    tb1.median_ms < 50.0 && tb2.median_ms < 50.0;
  std::printf("              [mcgn median %.2f ms, tb1 %.3f ms, tb2 %.3f ms]\n",
              mcgn.median_ms, tb1.median_ms, tb2.median_ms);
  report(10, pass, "per-decision latency at full task scale, median < 50 ms",
         elapsed(t0));
}

}  // namespace

int main() {
  criterion_exact_value_iteration();
  criterion_gradient_checks();
  criterion_memory_invariants();
  criterion_astar_optimality();
  criterion_trap_fixture();
  criterion_toy_training();
  criterion_mode_switch_contract();
  criterion_frames();
  criterion_eval_determinism();
  criterion_decision_latency();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
