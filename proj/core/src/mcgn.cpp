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

#include "birdseye/mcgn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "birdseye/scenario.hpp"

namespace birdseye {

namespace {

Tensor mode1_features(const CodeGrid& o_g, const Tensor& value) {
  const int cells = o_g.rows() * o_g.cols();
  Tensor features{2 * cells};
  int at = 0;
  for (int r = 0; r < o_g.rows(); ++r) {
    for (int c = 0; c < o_g.cols(); ++c) {
      features(at++) = static_cast<double>(static_cast<std::int8_t>(o_g(r, c)));
    }
  }
  for (double v : value.flat()) features(at++) = v;
  return features;
}

std::vector<Tensor*> mode1_param_list(McgnParams& p) {
  return {&p.vin_joint.conv1,    &p.vin_joint.pool,
          &p.vin_joint.conv2_r,  &p.vin_joint.conv2_v,
          &p.controller.embed_w, &p.controller.embed_b,
          &p.controller.lstm.w_input, &p.controller.lstm.w_hidden,
          &p.controller.lstm.bias,    &p.controller.out_w,
          &p.controller.out_b,   &p.controller.iface_w,
          &p.controller.iface_b, &p.read_out};
}

std::vector<Tensor*> mode1_grad_list(McgnGrads& g) {
  return {&g.vin_joint.conv1,      &g.vin_joint.pool,
          &g.vin_joint.conv2_r,    &g.vin_joint.conv2_v,
          &g.controller.embed_w,   &g.controller.embed_b,
          &g.controller.lstm.w_input, &g.controller.lstm.w_hidden,
          &g.controller.lstm.bias, &g.controller.out_w,
          &g.controller.out_b,     &g.controller.iface_w,
          &g.controller.iface_b,   &g.read_out};
}

std::vector<Tensor*> mode2_param_list(McgnParams& p) {
  return {&p.vin_hover.conv1, &p.vin_hover.pool, &p.vin_hover.conv2_r,
          &p.vin_hover.conv2_v};
}

std::vector<Tensor*> mode2_grad_list(McgnGrads& g) {
  return {&g.vin_hover.conv1, &g.vin_hover.pool, &g.vin_hover.conv2_r,
          &g.vin_hover.conv2_v};
}

class Adam {
 public:
  Adam(const std::vector<Tensor*>& params, double lr) : lr_(lr) {
    m_.reserve(params.size());
    v_.reserve(params.size());
    for (const Tensor* p : params) {
      m_.push_back(Tensor::zeros_like(*p));
      v_.push_back(Tensor::zeros_like(*p));
    }
  }

  void step(const std::vector<Tensor*>& params,
            const std::vector<Tensor*>& grads) {
    ++t_;
    const double correction =
        std::sqrt(1.0 - std::pow(kBeta2, t_)) / (1.0 - std::pow(kBeta1, t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto p = params[i]->flat();
      auto g = grads[i]->flat();
      auto m = m_[i].flat();
      auto v = v_[i].flat();
      for (std::size_t j = 0; j < p.size(); ++j) {
        m[j] = kBeta1 * m[j] + (1.0 - kBeta1) * g[j];
        v[j] = kBeta2 * v[j] + (1.0 - kBeta2) * g[j] * g[j];
        p[j] -= lr_ * correction * m[j] / (std::sqrt(v[j]) + kEps);
      }
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  double lr_;
  int t_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

void zero_all(const std::vector<Tensor*>& tensors) {
  for (Tensor* t : tensors) t->fill(0.0);
}

}  // namespace

double cross_entropy(const std::array<double, 4>& logits, int label,
                     std::array<double, 4>* grad) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::array<double, 4> e{};
  double total = 0.0;
  for (int a = 0; a < 4; ++a) {
    e[static_cast<size_t>(a)] = std::exp(logits[static_cast<size_t>(a)] - peak);
    total += e[static_cast<size_t>(a)];
  }
  const double loss =
      std::log(total) - (logits[static_cast<size_t>(label)] - peak);
  if (grad != nullptr) {
    for (int a = 0; a < 4; ++a) {
      (*grad)[static_cast<size_t>(a)] =
          e[static_cast<size_t>(a)] / total - (a == label ? 1.0 : 0.0);
    }
  }
  return loss;
}

McgnParams make_mcgn_params(const McgnConfig& config, const McgnDims& dims,
                            std::uint64_t seed) {
  if (dims.rows <= 0 || dims.cols <= 0 || dims.fov.rows <= 0 ||
      dims.fov.cols <= 0) {
    throw std::invalid_argument("bad planner dimensions");
  }
  if (config.action_channels != 4) {
    throw std::invalid_argument("four motion commands are assumed throughout");
  }
  McgnParams params;
  params.dims = dims;

  std::mt19937_64 rng(seed);
  params.vin_joint = make_vin_params(config.hidden_channels,
                                     config.vin_iterations, rng,
                                     config.init_scale);
  params.controller_config =
      ControllerConfig{2 * dims.rows * dims.cols, config.embed_size,
                       config.lstm_size, 4, config.memory};
  params.controller =
      make_controller_params(params.controller_config, rng, config.init_scale);
  params.read_out =
      Tensor{4, config.memory.read_heads * config.memory.width};
  fill_uniform(params.read_out, rng, config.init_scale);
  params.vin_hover = make_vin_params(config.hidden_channels,
                                     config.vin_iterations, rng,
                                     config.init_scale);
  return params;
}

Tensor reward_seed(const CodeGrid& obs) {
  Tensor seed{obs.rows(), obs.cols()};
  for (int r = 0; r < obs.rows(); ++r) {
    for (int c = 0; c < obs.cols(); ++c) {
      if (obs(r, c) == CellCode::kTarget) seed(r, c) = 10.0;
    }
  }
  return seed;
}

Tensor build_input(const CodeGrid& obs, const Tensor& seed) {
  if (seed.rank() != 2 || seed.dim(0) != obs.rows() || seed.dim(1) != obs.cols()) {
    throw std::invalid_argument("reward seed shape mismatch");
  }
  Tensor input{2, obs.rows(), obs.cols()};
  for (int r = 0; r < obs.rows(); ++r) {
    for (int c = 0; c < obs.cols(); ++c) {
      input(0, r, c) = static_cast<double>(static_cast<std::int8_t>(obs(r, c)));
      input(1, r, c) = seed(r, c);
    }
  }
  return input;
}

Mode1Result plan_step_mode1(const CodeGrid& o_g, const ControllerState& ctrl,
                            const MemoryState& memory, const McgnParams& params,
                            Mode1Cache* cache) {
  if (o_g.rows() != params.dims.rows || o_g.cols() != params.dims.cols) {
    throw std::invalid_argument("observation scale does not match the network");
  }
  const Tensor input = build_input(o_g, reward_seed(o_g));
  const ValueMaps maps =
      vin_forward(input, params.vin_joint, cache ? &cache->vin : nullptr);
  const Tensor features = mode1_features(o_g, maps.value);

  ControllerOutput ctrl_out =
      controller_step(params.controller_config, params.controller, ctrl,
                      features, memory.reads, cache ? &cache->ctrl : nullptr);
  Mode1Result result;
  result.memory =
      memory_step(memory, ctrl_out.iface, cache ? &cache->mem : nullptr);

  for (int a = 0; a < 4; ++a) {
    double acc = ctrl_out.output(a);
    int j = 0;
    for (const Tensor& read : result.memory.reads) {
      for (double v : read.flat()) acc += params.read_out(a, j++) * v;
    }
    result.logits[static_cast<size_t>(a)] = acc;
  }
  result.ctrl = std::move(ctrl_out.state);
  return result;
}

std::array<double, 4> plan_step_mode2(const CodeGrid& o_p, Cell ugv_local,
                                      const McgnParams& params,
                                      VinCache* cache) {
  bool target_in_view = false;
  for (CellCode c : o_p.data()) {
    if (c == CellCode::kTarget) {
      target_in_view = true;
      break;
    }
  }
  if (!target_in_view) {
    throw std::logic_error("hover-mode planning without a visible target");
  }
  const Tensor input = build_input(o_p, reward_seed(o_p));
  const ValueMaps maps = vin_forward(input, params.vin_hover, cache);
  return attention_select(maps.q, ugv_local);
}

int argmax_action(const std::array<double, 4>& logits) {
  int best = 0;
  for (int a = 1; a < 4; ++a) {
    if (logits[static_cast<size_t>(a)] > logits[static_cast<size_t>(best)]) {
      best = a;
    }
  }
  return best;
}

McgnGrads make_mcgn_grads(const McgnParams& params) {
  McgnGrads g;
  g.vin_joint =
      make_vin_grads(params.vin_joint, params.dims.rows, params.dims.cols);
  g.controller = make_controller_grads(params.controller);
  g.read_out = Tensor::zeros_like(params.read_out);
  g.vin_hover =
      make_vin_grads(params.vin_hover, params.dims.fov.rows, params.dims.fov.cols);
  return g;
}

// One scenario's pre-switch sequence: forward to collect the loss, then
// backpropagation through time across the memory and controller.
double joint_sequence_loss(const McgnParams& params,
                           const std::vector<const ExpertSample*>& sequence,
                           double grad_scale, McgnGrads* grads, int* correct) {
  const int steps = static_cast<int>(sequence.size());
  const int rows = params.dims.rows;
  const int cols = params.dims.cols;
  const ControllerConfig& cc = params.controller_config;

  std::vector<Mode1Cache> caches(static_cast<size_t>(steps));
  std::vector<std::array<double, 4>> logits(static_cast<size_t>(steps));
  ControllerState ctrl = make_controller_state(cc);
  MemoryState memory = make_memory_state(cc.memory);

  double loss = 0.0;
  for (int t = 0; t < steps; ++t) {
    Mode1Result out =
        plan_step_mode1(sequence[static_cast<size_t>(t)]->obs, ctrl, memory,
                        params, grads ? &caches[static_cast<size_t>(t)] : nullptr);
    logits[static_cast<size_t>(t)] = out.logits;
    const int label = static_cast<int>(sequence[static_cast<size_t>(t)]->action);
    loss += cross_entropy(out.logits, label);
    if (correct != nullptr && argmax_action(out.logits) == label) ++(*correct);
    ctrl = std::move(out.ctrl);
    memory = std::move(out.memory);
  }
  if (grads == nullptr) return loss;

  ControllerState g_ctrl = make_controller_state(cc);
  MemoryState g_mem = make_memory_state(cc.memory);
  for (int t = steps - 1; t >= 0; --t) {
    const Mode1Cache& cache = caches[static_cast<size_t>(t)];
    std::array<double, 4> g_logits{};
    cross_entropy(logits[static_cast<size_t>(t)],
                  static_cast<int>(sequence[static_cast<size_t>(t)]->action),
                  &g_logits);
    Tensor g_output{4};
    for (int a = 0; a < 4; ++a) g_output(a) = g_logits[static_cast<size_t>(a)] * grad_scale;

    // logits = controller output + read_out * concat(new reads)
    {
      int j = 0;
      for (std::size_t head = 0; head < cache.mem.next.reads.size(); ++head) {
        const Tensor& read = cache.mem.next.reads[head];
        for (int w = 0; w < static_cast<int>(read.size()); ++w, ++j) {
          for (int a = 0; a < 4; ++a) {
            grads->read_out(a, j) += g_output(a) * read[static_cast<size_t>(w)];
            g_mem.reads[head][static_cast<size_t>(w)] +=
                params.read_out(a, j) * g_output(a);
          }
        }
      }
    }

    MemoryState g_mem_prev = make_memory_state(cc.memory);
    InterfaceVector g_iface = make_zero_interface(cc.memory);
    memory_step_backward(cache.mem, g_mem, g_mem_prev, g_iface);

    ControllerState g_ctrl_prev = make_controller_state(cc);
    Tensor g_features;
    std::vector<Tensor> g_prev_reads;
    controller_step_backward(cc, params.controller, cache.ctrl, g_output,
                             g_iface, g_ctrl, grads->controller, g_ctrl_prev,
                             g_features, g_prev_reads);
    for (std::size_t head = 0; head < g_prev_reads.size(); ++head) {
      g_mem_prev.reads[head].add_scaled(g_prev_reads[head], 1.0);
    }

    ValueMaps g_maps;
    g_maps.reward = Tensor{rows, cols};
    g_maps.q = Tensor{4, rows, cols};
    g_maps.value = Tensor{rows, cols};
    const int cells = rows * cols;
    for (int i = 0; i < cells; ++i) {
      g_maps.value[static_cast<size_t>(i)] = g_features(cells + i);
    }
    vin_backward_accumulate(params.vin_joint, cache.vin, g_maps,
                            grads->vin_joint);

    g_mem = std::move(g_mem_prev);
    g_ctrl = std::move(g_ctrl_prev);
  }
  return loss;
}

double hover_sample_loss(const McgnParams& params, const ExpertSample& sample,
                         double grad_scale, McgnGrads* grads, int* correct) {
  VinCache cache;
  const Tensor input = build_input(sample.obs, reward_seed(sample.obs));
  const ValueMaps maps =
      vin_forward(input, params.vin_hover, grads ? &cache : nullptr);
  const auto logits = attention_select(maps.q, sample.ugv_local);
  const int label = static_cast<int>(sample.action);
  std::array<double, 4> g_logits{};
  const double loss = cross_entropy(logits, label, grads ? &g_logits : nullptr);
  if (correct != nullptr && argmax_action(logits) == label) ++(*correct);
  if (grads != nullptr) {
    ValueMaps g_maps;
    g_maps.reward = Tensor::zeros_like(maps.reward);
    g_maps.q = Tensor::zeros_like(maps.q);
    g_maps.value = Tensor::zeros_like(maps.value);
    for (int a = 0; a < 4; ++a) {
      g_maps.q(a, sample.ugv_local.row, sample.ugv_local.col) =
          g_logits[static_cast<size_t>(a)] * grad_scale;
    }
    vin_backward_accumulate(params.vin_hover, cache, g_maps, grads->vin_hover);
  }
  return loss;
}

namespace {

void check_finite(double loss, const char* net, int epoch) {
  if (!std::isfinite(loss)) {
    throw std::runtime_error(std::string(net) + " training diverged at epoch " +
                             std::to_string(epoch) + " (non-finite loss)");
  }
}

}  // namespace

TrainResult train(const std::vector<ExpertSample>& dataset,
                  const McgnConfig& config, const McgnDims& dims,
                  std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;

  // Joint-mode samples form per-scenario sequences; hover-mode samples are
  // independent. std::map keeps scenario order deterministic.
  std::map<std::uint64_t, std::vector<const ExpertSample*>> by_scenario;
  std::vector<const ExpertSample*> hover_samples;
  for (const ExpertSample& s : dataset) {
    if (s.mode == Mode::kJoint) {
      by_scenario[s.scenario_id].push_back(&s);
    } else {
      hover_samples.push_back(&s);
    }
  }
  std::vector<std::vector<const ExpertSample*>> sequences;
  sequences.reserve(by_scenario.size());
  for (auto& [id, seq] : by_scenario) {
    std::sort(seq.begin(), seq.end(),
              [](const ExpertSample* a, const ExpertSample* b) {
                return a->step_index < b->step_index;
              });
    sequences.push_back(std::move(seq));
  }

  TrainResult result;
  result.params = make_mcgn_params(config, dims, derive_seed(seed, 1));
  McgnParams& params = result.params;

  // --- hover network ---
  {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(derive_seed(seed, 2));
    auto param_list = mode2_param_list(params);
    Adam adam(param_list, config.learning_rate);
    McgnGrads grads = make_mcgn_grads(params);
    auto grad_list = mode2_grad_list(grads);

    std::vector<std::size_t> order(hover_samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      double loss = 0.0;
      int correct = 0;
      std::size_t done = 0;
      while (done < order.size()) {
        const std::size_t batch_end =
            std::min(done + static_cast<std::size_t>(config.batch_size),
                     order.size());
        zero_all(grad_list);
        const double scale = 1.0 / static_cast<double>(batch_end - done);
        for (std::size_t i = done; i < batch_end; ++i) {
          loss += hover_sample_loss(params, *hover_samples[order[i]], scale,
                                    &grads, &correct);
        }
        adam.step(param_list, grad_list);
        done = batch_end;
      }
      const double mean_loss =
          hover_samples.empty() ? 0.0 : loss / static_cast<double>(hover_samples.size());
      check_finite(mean_loss, "hover", epoch);
      result.hover_report.loss.push_back(mean_loss);
      result.hover_report.accuracy.push_back(
          hover_samples.empty()
              ? 0.0
              : static_cast<double>(correct) / static_cast<double>(hover_samples.size()));
    }
    result.hover_report.wall_seconds =
        std::chrono::duration<double>(Clock::now() - t0).count();
  }

  // --- joint network ---
  {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(derive_seed(seed, 3));
    auto param_list = mode1_param_list(params);
    Adam adam(param_list, config.learning_rate);
    McgnGrads grads = make_mcgn_grads(params);
    auto grad_list = mode1_grad_list(grads);

    std::vector<std::size_t> order(sequences.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t episodes =
          std::min(order.size(), static_cast<std::size_t>(config.episodes_per_epoch));
      double loss = 0.0;
      int correct = 0;
      std::size_t sample_count = 0;
      std::size_t done = 0;
      while (done < episodes) {
        const std::size_t batch_end =
            std::min(done + static_cast<std::size_t>(config.batch_size), episodes);
        std::size_t batch_steps = 0;
        for (std::size_t i = done; i < batch_end; ++i) {
          batch_steps += sequences[order[i]].size();
        }
        if (batch_steps == 0) {
          done = batch_end;
          continue;
        }
        zero_all(grad_list);
        const double scale = 1.0 / static_cast<double>(batch_steps);
        for (std::size_t i = done; i < batch_end; ++i) {
          loss += joint_sequence_loss(params, sequences[order[i]], scale,
                                      &grads, &correct);
        }
        sample_count += batch_steps;
        adam.step(param_list, grad_list);
        done = batch_end;
      }
      const double mean_loss =
          sample_count == 0 ? 0.0 : loss / static_cast<double>(sample_count);
      check_finite(mean_loss, "joint", epoch);
      result.joint_report.loss.push_back(mean_loss);
      result.joint_report.accuracy.push_back(
          sample_count == 0
              ? 0.0
              : static_cast<double>(correct) / static_cast<double>(sample_count));
    }
    result.joint_report.wall_seconds =
        std::chrono::duration<double>(Clock::now() - t0).count();
  }
  return result;
}

EpisodeOutcome run_episode(const GlobalMap& map, FovSize fov,
                           const McgnParams& params, const McgnConfig& config,
                           std::vector<StepTrace>* trace) {
  EpisodeParams ep{fov, config.step_cap, !config.ablation_memory_always};
  EpisodeState state = make_episode(map, ep);
  ControllerState ctrl = make_controller_state(params.controller_config);
  MemoryState memory = make_memory_state(params.controller_config.memory);

  EpisodeOutcome outcome;
  outcome.trajectory.push_back(state.ugv);
  while (!state.done) {
    const MaskedObservation obs = mask(map, state.uav, fov);
    std::array<double, 4> logits{};
    if (state.mode == Mode::kHover) {
      const Cell local{state.ugv.row - obs.fov_origin.row,
                       state.ugv.col - obs.fov_origin.col};
      if (!obs.o_p.in_bounds(local)) {
        outcome.reason = FailureReason::kLeftFov;
        break;
      }
      logits = plan_step_mode2(obs.o_p, local, params);
    } else {
      Mode1Result out = plan_step_mode1(obs.o_g, ctrl, memory, params);
      logits = out.logits;
      ctrl = std::move(out.ctrl);
      memory = std::move(out.memory);
    }
    const Action action = static_cast<Action>(argmax_action(logits));
    if (trace != nullptr) trace->push_back({state.mode, logits, action});
    state = step(state, map, ep, action);
    outcome.trajectory.push_back(state.ugv);
  }

  outcome.success = state.reached;
  outcome.steps = state.step;
  outcome.collisions = state.collisions;
  if (!outcome.success && outcome.reason == FailureReason::kNone) {
    outcome.reason = state.mode == Mode::kJoint ? FailureReason::kNoModeSwitch
                                                : FailureReason::kStepCap;
  }
  return outcome;
}

void save_params(const std::string& path, const McgnParams& params) {
  Tensor meta{12};
  meta(0) = params.dims.rows;
  meta(1) = params.dims.cols;
  meta(2) = params.dims.fov.rows;
  meta(3) = params.dims.fov.cols;
  meta(4) = params.vin_joint.iterations;
  meta(5) = params.vin_joint.hidden_channels();
  meta(6) = params.controller_config.embed_size;
  meta(7) = params.controller_config.lstm_size;
  meta(8) = params.controller_config.memory.slots;
  meta(9) = params.controller_config.memory.width;
  meta(10) = params.controller_config.memory.read_heads;
  meta(11) = params.vin_hover.iterations;

  save_tensors(path, {
      {"meta", &meta},
      {"joint/conv1", &params.vin_joint.conv1},
      {"joint/pool", &params.vin_joint.pool},
      {"joint/conv2_r", &params.vin_joint.conv2_r},
      {"joint/conv2_v", &params.vin_joint.conv2_v},
      {"ctrl/embed_w", &params.controller.embed_w},
      {"ctrl/embed_b", &params.controller.embed_b},
      {"ctrl/lstm_w_input", &params.controller.lstm.w_input},
      {"ctrl/lstm_w_hidden", &params.controller.lstm.w_hidden},
      {"ctrl/lstm_bias", &params.controller.lstm.bias},
      {"ctrl/out_w", &params.controller.out_w},
      {"ctrl/out_b", &params.controller.out_b},
      {"ctrl/iface_w", &params.controller.iface_w},
      {"ctrl/iface_b", &params.controller.iface_b},
      {"read_out", &params.read_out},
      {"hover/conv1", &params.vin_hover.conv1},
      {"hover/pool", &params.vin_hover.pool},
      {"hover/conv2_r", &params.vin_hover.conv2_r},
      {"hover/conv2_v", &params.vin_hover.conv2_v},
  });
}

McgnParams load_params(const std::string& path) {
  auto tensors = load_tensors(path);
  auto take = [&tensors, &path](const std::string& name) -> Tensor {
    auto it = tensors.find(name);
    if (it == tensors.end()) {
      throw std::runtime_error("missing tensor '" + name + "' in " + path);
    }
    return std::move(it->second);
  };

  const Tensor meta = take("meta");
  McgnParams params;
  params.dims.rows = static_cast<int>(meta(0));
  params.dims.cols = static_cast<int>(meta(1));
  params.dims.fov = FovSize{static_cast<int>(meta(2)), static_cast<int>(meta(3))};

  params.vin_joint.conv1 = take("joint/conv1");
  params.vin_joint.pool = take("joint/pool");
  params.vin_joint.conv2_r = take("joint/conv2_r");
  params.vin_joint.conv2_v = take("joint/conv2_v");
  params.vin_joint.iterations = static_cast<int>(meta(4));

  params.controller_config = ControllerConfig{
      2 * params.dims.rows * params.dims.cols, static_cast<int>(meta(6)),
      static_cast<int>(meta(7)), 4,
      MemoryConfig{static_cast<int>(meta(8)), static_cast<int>(meta(9)),
                   static_cast<int>(meta(10))}};
  params.controller.embed_w = take("ctrl/embed_w");
  params.controller.embed_b = take("ctrl/embed_b");
  params.controller.lstm.w_input = take("ctrl/lstm_w_input");
  params.controller.lstm.w_hidden = take("ctrl/lstm_w_hidden");
  params.controller.lstm.bias = take("ctrl/lstm_bias");
  params.controller.out_w = take("ctrl/out_w");
  params.controller.out_b = take("ctrl/out_b");
  params.controller.iface_w = take("ctrl/iface_w");
  params.controller.iface_b = take("ctrl/iface_b");
  params.read_out = take("read_out");

  params.vin_hover.conv1 = take("hover/conv1");
  params.vin_hover.pool = take("hover/pool");
  params.vin_hover.conv2_r = take("hover/conv2_r");
  params.vin_hover.conv2_v = take("hover/conv2_v");
  params.vin_hover.iterations = static_cast<int>(meta(11));
  return params;
}

}  // namespace birdseye
