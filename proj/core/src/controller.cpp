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

#include "birdseye/controller.hpp"

#include <stdexcept>

namespace birdseye {

namespace {

// out = W x + b, W is [rows][cols]
void linear(const Tensor& w, const Tensor& b, const Tensor& x, Tensor& out) {
  const int rows = w.dim(0);
  const int cols = w.dim(1);
  for (int r = 0; r < rows; ++r) {
    double acc = b(r);
    for (int c = 0; c < cols; ++c) acc += w(r, c) * x[static_cast<size_t>(c)];
    out(r) = acc;
  }
}

// Accumulates dL/dW, dL/db and returns dL/dx contributions.
void linear_backward(const Tensor& w, const Tensor& x, const Tensor& g_out,
                     Tensor& g_w, Tensor& g_b, Tensor& g_x) {
  const int rows = w.dim(0);
  const int cols = w.dim(1);
  for (int r = 0; r < rows; ++r) {
    const double g = g_out(r);
    if (g == 0.0) continue;
    g_b(r) += g;
    for (int c = 0; c < cols; ++c) {
      g_w(r, c) += g * x[static_cast<size_t>(c)];
      g_x(c) += w(r, c) * g;
    }
  }
}

}  // namespace

ControllerParams make_controller_params(const ControllerConfig& config,
                                        std::mt19937_64& rng,
                                        double init_scale) {
  if (config.feature_size <= 0 || config.embed_size <= 0 ||
      config.lstm_size <= 0 || config.output_size <= 0) {
    throw std::invalid_argument("bad controller dimensions");
  }
  const int reads = config.memory.read_heads * config.memory.width;
  ControllerParams params;
  params.embed_w = Tensor{config.embed_size, config.feature_size};
  params.embed_b = Tensor{config.embed_size};
  params.lstm = make_lstm_params(config.embed_size + reads, config.lstm_size,
                                 rng, init_scale);
  params.out_w = Tensor{config.output_size, config.lstm_size};
  params.out_b = Tensor{config.output_size};
  params.iface_w = Tensor{interface_size(config.memory), config.lstm_size};
  params.iface_b = Tensor{interface_size(config.memory)};
  fill_uniform(params.embed_w, rng, init_scale);
  fill_uniform(params.out_w, rng, init_scale);
  fill_uniform(params.iface_w, rng, init_scale);
  return params;
}

ControllerState make_controller_state(const ControllerConfig& config) {
  return ControllerState{make_lstm_state(config.lstm_size)};
}

ControllerOutput controller_step(const ControllerConfig& config,
                                 const ControllerParams& params,
                                 const ControllerState& state,
                                 const Tensor& features,
                                 const std::vector<Tensor>& prev_reads,
                                 ControllerCache* cache) {
  if (static_cast<int>(features.size()) != config.feature_size) {
    throw std::invalid_argument("controller feature size mismatch");
  }
  if (static_cast<int>(prev_reads.size()) != config.memory.read_heads) {
    throw std::invalid_argument("controller read-head count mismatch");
  }

  Tensor embedded{config.embed_size};
  linear(params.embed_w, params.embed_b, features, embedded);

  Tensor lstm_input{params.lstm.input_size()};
  int at = 0;
  for (int i = 0; i < config.embed_size; ++i) lstm_input(at++) = embedded(i);
  for (const Tensor& read : prev_reads) {
    for (double v : read.flat()) lstm_input(at++) = v;
  }

  LstmCache lstm_cache;
  LstmState next_lstm = lstm_step(params.lstm, state.lstm, lstm_input,
                                  cache ? &lstm_cache : nullptr);

  ControllerOutput out;
  out.output = Tensor{config.output_size};
  linear(params.out_w, params.out_b, next_lstm.h, out.output);
  Tensor raw{interface_size(config.memory)};
  linear(params.iface_w, params.iface_b, next_lstm.h, raw);
  out.iface = parse_interface(raw, config.memory);
  out.state = ControllerState{next_lstm};

  if (cache != nullptr) {
    cache->features = features;
    cache->embedded = std::move(embedded);
    cache->lstm_input = std::move(lstm_input);
    cache->lstm = std::move(lstm_cache);
    cache->hidden = out.state.lstm.h;
    cache->raw_iface = std::move(raw);
  }
  return out;
}

ControllerGrads make_controller_grads(const ControllerParams& params) {
  ControllerGrads grads;
  grads.embed_w = Tensor::zeros_like(params.embed_w);
  grads.embed_b = Tensor::zeros_like(params.embed_b);
  grads.lstm = make_lstm_grads(params.lstm);
  grads.out_w = Tensor::zeros_like(params.out_w);
  grads.out_b = Tensor::zeros_like(params.out_b);
  grads.iface_w = Tensor::zeros_like(params.iface_w);
  grads.iface_b = Tensor::zeros_like(params.iface_b);
  return grads;
}

void controller_step_backward(const ControllerConfig& config,
                              const ControllerParams& params,
                              const ControllerCache& cache,
                              const Tensor& grad_output,
                              const InterfaceVector& grad_iface,
                              const ControllerState& grad_state_next,
                              ControllerGrads& grads,
                              ControllerState& grad_state_prev,
                              Tensor& grad_features,
                              std::vector<Tensor>& grad_prev_reads) {
  const Tensor grad_raw =
      parse_interface_backward(cache.raw_iface, config.memory, grad_iface);

  Tensor g_h = grad_state_next.lstm.h;  // grads on h from the next tick
  linear_backward(params.out_w, cache.hidden, grad_output, grads.out_w,
                  grads.out_b, g_h);
  linear_backward(params.iface_w, cache.hidden, grad_raw, grads.iface_w,
                  grads.iface_b, g_h);

  Tensor g_h_prev, g_c_prev, g_lstm_input;
  lstm_backward(params.lstm, cache.lstm, g_h, grad_state_next.lstm.c,
                grads.lstm, g_h_prev, g_c_prev, g_lstm_input);
  grad_state_prev.lstm.h = std::move(g_h_prev);
  grad_state_prev.lstm.c = std::move(g_c_prev);

  Tensor g_embedded{config.embed_size};
  int at = 0;
  for (int i = 0; i < config.embed_size; ++i) g_embedded(i) = g_lstm_input(at++);
  grad_prev_reads.assign(static_cast<size_t>(config.memory.read_heads),
                         Tensor{config.memory.width});
  for (Tensor& g_read : grad_prev_reads) {
    for (double& v : g_read.flat()) v = g_lstm_input(at++);
  }

  grad_features = Tensor{config.feature_size};
  linear_backward(params.embed_w, cache.features, g_embedded, grads.embed_w,
                  grads.embed_b, grad_features);
}

}  // namespace birdseye
