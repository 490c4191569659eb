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

#include "birdseye/lstm.hpp"

#include <cmath>
#include <stdexcept>

namespace birdseye {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LstmParams make_lstm_params(int input_size, int hidden_size,
                            std::mt19937_64& rng, double init_scale) {
  if (input_size <= 0 || hidden_size <= 0) {
    throw std::invalid_argument("bad LSTM dimensions");
  }
  LstmParams params;
  params.w_input = Tensor{4 * hidden_size, input_size};
  params.w_hidden = Tensor{4 * hidden_size, hidden_size};
  params.bias = Tensor{4 * hidden_size};
  fill_uniform(params.w_input, rng, init_scale);
  fill_uniform(params.w_hidden, rng, init_scale);
  // Biases start at zero; the forget gate then opens at sigmoid(0) = 0.5.
  return params;
}

LstmState make_lstm_state(int hidden_size) {
  return LstmState{Tensor{hidden_size}, Tensor{hidden_size}};
}

LstmState lstm_step(const LstmParams& params, const LstmState& state,
                    const Tensor& input, LstmCache* cache) {
  const int hidden = params.hidden_size();
  const int in_size = params.input_size();
  if (static_cast<int>(input.size()) != in_size ||
      static_cast<int>(state.h.size()) != hidden) {
    throw std::invalid_argument("LSTM shape mismatch");
  }

  Tensor pre{4 * hidden};
  for (int row = 0; row < 4 * hidden; ++row) {
    double acc = params.bias(row);
    for (int j = 0; j < in_size; ++j) acc += params.w_input(row, j) * input[j];
    for (int j = 0; j < hidden; ++j) acc += params.w_hidden(row, j) * state.h[j];
    pre(row) = acc;
  }

  LstmState next = make_lstm_state(hidden);
  Tensor gi{hidden}, gf{hidden}, gg{hidden}, go{hidden}, tanh_c{hidden};
  for (int j = 0; j < hidden; ++j) {
    gi(j) = sigmoid(pre(j));
    gf(j) = sigmoid(pre(hidden + j));
    gg(j) = std::tanh(pre(2 * hidden + j));
    go(j) = sigmoid(pre(3 * hidden + j));
    next.c[j] = gf(j) * state.c[j] + gi(j) * gg(j);
    tanh_c(j) = std::tanh(next.c[j]);
    next.h[j] = go(j) * tanh_c(j);
  }

  if (cache != nullptr) {
    cache->input = input;
    cache->h_prev = state.h;
    cache->c_prev = state.c;
    cache->gate_i = std::move(gi);
    cache->gate_f = std::move(gf);
    cache->gate_g = std::move(gg);
    cache->gate_o = std::move(go);
    cache->c_new = next.c;
    cache->tanh_c_new = std::move(tanh_c);
  }
  return next;
}

LstmGrads make_lstm_grads(const LstmParams& params) {
  return LstmGrads{Tensor::zeros_like(params.w_input),
                   Tensor::zeros_like(params.w_hidden),
                   Tensor::zeros_like(params.bias)};
}

void lstm_backward(const LstmParams& params, const LstmCache& cache,
                   const Tensor& grad_h, const Tensor& grad_c,
                   LstmGrads& grads, Tensor& grad_h_prev, Tensor& grad_c_prev,
                   Tensor& grad_input) {
  const int hidden = params.hidden_size();
  const int in_size = params.input_size();

  Tensor g_pre{4 * hidden};
  grad_c_prev = Tensor{hidden};
  for (int j = 0; j < hidden; ++j) {
    const double go = cache.gate_o(j);
    const double tanh_c = cache.tanh_c_new(j);
    const double g_o = grad_h[static_cast<size_t>(j)] * tanh_c;
    const double g_c_total = grad_c[static_cast<size_t>(j)] +
                             grad_h[static_cast<size_t>(j)] * go *
                                 (1.0 - tanh_c * tanh_c);
    const double gi = cache.gate_i(j);
    const double gf = cache.gate_f(j);
    const double gg = cache.gate_g(j);
    const double g_i = g_c_total * gg;
    const double g_f = g_c_total * cache.c_prev(j);
    const double g_g = g_c_total * gi;
    grad_c_prev(j) = g_c_total * gf;
    g_pre(j) = g_i * gi * (1.0 - gi);
    g_pre(hidden + j) = g_f * gf * (1.0 - gf);
    g_pre(2 * hidden + j) = g_g * (1.0 - gg * gg);
    g_pre(3 * hidden + j) = g_o * go * (1.0 - go);
  }

  grad_h_prev = Tensor{hidden};
  grad_input = Tensor{in_size};
  for (int row = 0; row < 4 * hidden; ++row) {
    const double g = g_pre(row);
    if (g == 0.0) continue;
    grads.bias(row) += g;
    for (int j = 0; j < in_size; ++j) {
      grads.w_input(row, j) += g * cache.input[static_cast<size_t>(j)];
      grad_input(j) += params.w_input(row, j) * g;
    }
    for (int j = 0; j < hidden; ++j) {
      grads.w_hidden(row, j) += g * cache.h_prev(j);
      grad_h_prev(j) += params.w_hidden(row, j) * g;
    }
  }
}

}  // namespace birdseye
