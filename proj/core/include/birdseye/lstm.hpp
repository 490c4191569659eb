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

#ifndef BIRDSEYE_LSTM_HPP_
#define BIRDSEYE_LSTM_HPP_

#include <random>

#include "birdseye/tensor.hpp"

namespace birdseye {

// Single LSTM cell. Gate order in the stacked weight rows: input, forget,
// candidate, output.
struct LstmParams {
  Tensor w_input;   // [4H][In]
  Tensor w_hidden;  // [4H][H]
  Tensor bias;      // [4H]

  int hidden_size() const { return w_hidden.dim(1); }
  int input_size() const { return w_input.dim(1); }
};

LstmParams make_lstm_params(int input_size, int hidden_size,
                            std::mt19937_64& rng, double init_scale = 0.1);

struct LstmState {
  Tensor h;  // [H]
  Tensor c;  // [H]
};

LstmState make_lstm_state(int hidden_size);

struct LstmCache {
  Tensor input;
  Tensor h_prev;
  Tensor c_prev;
  Tensor gate_i, gate_f, gate_g, gate_o;  // post-activation
  Tensor c_new, tanh_c_new;
};

LstmState lstm_step(const LstmParams& params, const LstmState& state,
                    const Tensor& input, LstmCache* cache = nullptr);

struct LstmGrads {
  Tensor w_input;
  Tensor w_hidden;
  Tensor bias;
};

LstmGrads make_lstm_grads(const LstmParams& params);

// Consumes upstream grads on (h, c) and produces grads on the previous
// (h, c) plus the step input; parameter grads accumulate into `grads`.
void lstm_backward(const LstmParams& params, const LstmCache& cache,
                   const Tensor& grad_h, const Tensor& grad_c,
                   LstmGrads& grads, Tensor& grad_h_prev, Tensor& grad_c_prev,
                   Tensor& grad_input);

}  // namespace birdseye

#endif  // BIRDSEYE_LSTM_HPP_
