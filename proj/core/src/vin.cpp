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

#include "birdseye/vin.hpp"

#include <stdexcept>

namespace birdseye {

namespace {

// All three kernels below operate on [C][M][N] row-major buffers with
// same-size zero padding. Kernels are [Co][Ci][3][3].

void conv3x3(const double* in, int ci, const double* w, int co, int m, int n,
             double* out) {
  std::fill(out, out + static_cast<size_t>(co) * m * n, 0.0);
  for (int o = 0; o < co; ++o) {
    double* dst = out + static_cast<size_t>(o) * m * n;
    for (int i = 0; i < ci; ++i) {
      const double* kw = w + (static_cast<size_t>(o) * ci + i) * 9;
      const double* src = in + static_cast<size_t>(i) * m * n;
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) {
          double acc = 0.0;
          for (int u = 0; u < 3; ++u) {
            const int rr = r + u - 1;
            if (rr < 0 || rr >= m) continue;
            for (int v = 0; v < 3; ++v) {
              const int cc = c + v - 1;
              if (cc < 0 || cc >= n) continue;
              acc += kw[u * 3 + v] * src[rr * n + cc];
            }
          }
          dst[r * n + c] += acc;
        }
      }
    }
  }
}

void conv3x3_input_grad(const double* gout, int co, const double* w, int ci,
                        int m, int n, double* gin) {
  for (int o = 0; o < co; ++o) {
    const double* gsrc = gout + static_cast<size_t>(o) * m * n;
    for (int i = 0; i < ci; ++i) {
      const double* kw = w + (static_cast<size_t>(o) * ci + i) * 9;
      double* gdst = gin + static_cast<size_t>(i) * m * n;
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) {
          const double g = gsrc[r * n + c];
          if (g == 0.0) continue;
          for (int u = 0; u < 3; ++u) {
            const int rr = r + u - 1;
            if (rr < 0 || rr >= m) continue;
            for (int v = 0; v < 3; ++v) {
              const int cc = c + v - 1;
              if (cc < 0 || cc >= n) continue;
              gdst[rr * n + cc] += kw[u * 3 + v] * g;
            }
          }
        }
      }
    }
  }
}

void conv3x3_kernel_grad(const double* in, int ci, const double* gout, int co,
                         int m, int n, double* gw) {
  for (int o = 0; o < co; ++o) {
    const double* gsrc = gout + static_cast<size_t>(o) * m * n;
    for (int i = 0; i < ci; ++i) {
      double* gk = gw + (static_cast<size_t>(o) * ci + i) * 9;
      const double* src = in + static_cast<size_t>(i) * m * n;
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) {
          const double g = gsrc[r * n + c];
          if (g == 0.0) continue;
          for (int u = 0; u < 3; ++u) {
            const int rr = r + u - 1;
            if (rr < 0 || rr >= m) continue;
            for (int v = 0; v < 3; ++v) {
              const int cc = c + v - 1;
              if (cc < 0 || cc >= n) continue;
              gk[u * 3 + v] += src[rr * n + cc] * g;
            }
          }
        }
      }
    }
  }
}

}  // namespace

VinParams make_vin_params(int hidden_channels, int iterations,
                          std::mt19937_64& rng, double init_scale) {
  if (hidden_channels <= 0 || iterations < 0) {
    throw std::invalid_argument("bad VIN dimensions");
  }
  VinParams params;
  params.conv1 = Tensor{hidden_channels, 2, 3, 3};
  params.pool = Tensor{hidden_channels};
  params.conv2_r = Tensor{4, 1, 3, 3};
  params.conv2_v = Tensor{4, 1, 3, 3};
  params.iterations = iterations;
  fill_uniform(params.conv1, rng, init_scale);
  fill_uniform(params.pool, rng, init_scale);
  fill_uniform(params.conv2_r, rng, init_scale);
  fill_uniform(params.conv2_v, rng, init_scale);
  return params;
}

ValueMaps vin_forward(const Tensor& input, const VinParams& params,
                      VinCache* cache) {
  if (input.rank() != 3 || input.dim(0) != 2) {
    throw std::invalid_argument("VIN input must be [2][M][N]");
  }
  const int m = input.dim(1);
  const int n = input.dim(2);
  const int hidden = params.hidden_channels();

  Tensor pre1{hidden, m, n};
  conv3x3(input.flat().data(), 2, params.conv1.flat().data(), hidden, m, n,
          pre1.flat().data());
  Tensor hid = pre1;
  for (double& v : hid.flat()) v = v > 0.0 ? v : 0.0;

  ValueMaps maps;
  maps.reward = Tensor{m, n};
  for (int h = 0; h < hidden; ++h) {
    const double wh = params.pool(h);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) maps.reward(r, c) += wh * hid(h, r, c);
    }
  }

  maps.q = Tensor{4, m, n};
  maps.value = Tensor{m, n};

  if (cache != nullptr) {
    cache->input = input;
    cache->pre_activation = std::move(pre1);
    cache->hidden = hid;
    cache->reward = maps.reward;
    cache->value_in.clear();
    cache->argmax.clear();
    cache->value_in.reserve(static_cast<size_t>(params.iterations));
    cache->argmax.reserve(static_cast<size_t>(params.iterations));
  }

  Tensor q_r{4, m, n};
  Tensor q_v{4, m, n};
  for (int t = 0; t < params.iterations; ++t) {
    if (cache != nullptr) cache->value_in.push_back(maps.value);
    conv3x3(maps.reward.flat().data(), 1, params.conv2_r.flat().data(), 4, m, n,
            q_r.flat().data());
    conv3x3(maps.value.flat().data(), 1, params.conv2_v.flat().data(), 4, m, n,
            q_v.flat().data());
    Grid<std::int8_t> winners(m, n, 0);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        int best = 0;
        double best_q = q_r(0, r, c) + q_v(0, r, c);
        maps.q(0, r, c) = best_q;
        for (int a = 1; a < 4; ++a) {
          const double q = q_r(a, r, c) + q_v(a, r, c);
          maps.q(a, r, c) = q;
          if (q > best_q) {
            best_q = q;
            best = a;
          }
        }
        maps.value(r, c) = best_q;
        winners(r, c) = static_cast<std::int8_t>(best);
      }
    }
    if (cache != nullptr) cache->argmax.push_back(std::move(winners));
  }
  return maps;
}

VinGrads make_vin_grads(const VinParams& params, int rows, int cols) {
  VinGrads g;
  g.conv1 = Tensor::zeros_like(params.conv1);
  g.pool = Tensor::zeros_like(params.pool);
  g.conv2_r = Tensor::zeros_like(params.conv2_r);
  g.conv2_v = Tensor::zeros_like(params.conv2_v);
  g.input = Tensor{2, rows, cols};
  return g;
}

void vin_backward_accumulate(const VinParams& params, const VinCache& cache,
                             const ValueMaps& grad_out, VinGrads& grads) {
  const int m = cache.input.dim(1);
  const int n = cache.input.dim(2);
  const int hidden = params.hidden_channels();
  const int k = params.iterations;

  Tensor g_value = grad_out.value;       // running grad on the value map
  Tensor g_reward = grad_out.reward;     // accumulates across repeats
  Tensor g_q{4, m, n};

  for (int t = k - 1; t >= 0; --t) {
    g_q.fill(0.0);
    const Grid<std::int8_t>& winners = cache.argmax[static_cast<size_t>(t)];
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        g_q(winners(r, c), r, c) = g_value(r, c);
      }
    }
    if (t == k - 1) {
      for (std::size_t i = 0; i < g_q.size(); ++i) g_q[i] += grad_out.q[i];
    }
    conv3x3_kernel_grad(cache.reward.flat().data(), 1, g_q.flat().data(), 4, m,
                        n, grads.conv2_r.flat().data());
    conv3x3_kernel_grad(cache.value_in[static_cast<size_t>(t)].flat().data(), 1,
                        g_q.flat().data(), 4, m, n, grads.conv2_v.flat().data());
    conv3x3_input_grad(g_q.flat().data(), 4, params.conv2_r.flat().data(), 1, m,
                       n, g_reward.flat().data());
    Tensor g_value_in{m, n};
    conv3x3_input_grad(g_q.flat().data(), 4, params.conv2_v.flat().data(), 1, m,
                       n, g_value_in.flat().data());
    g_value = std::move(g_value_in);
  }
  // g_value now targets V_0 = 0, a constant; it is dropped.

  Tensor g_hidden{hidden, m, n};
  for (int h = 0; h < hidden; ++h) {
    double g_pool_h = 0.0;
    const double wh = params.pool(h);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) {
        const double g = g_reward(r, c);
        g_pool_h += g * cache.hidden(h, r, c);
        g_hidden(h, r, c) = wh * g;
      }
    }
    grads.pool(h) += g_pool_h;
  }

  for (std::size_t i = 0; i < g_hidden.size(); ++i) {
    if (cache.pre_activation[i] <= 0.0) g_hidden[i] = 0.0;
  }
  conv3x3_kernel_grad(cache.input.flat().data(), 2, g_hidden.flat().data(),
                      hidden, m, n, grads.conv1.flat().data());
  conv3x3_input_grad(g_hidden.flat().data(), hidden, params.conv1.flat().data(),
                     2, m, n, grads.input.flat().data());
}

VinGrads vin_backward(const VinParams& params, const VinCache& cache,
                      const ValueMaps& grad_out) {
  VinGrads grads = make_vin_grads(params, cache.input.dim(1), cache.input.dim(2));
  vin_backward_accumulate(params, cache, grad_out, grads);
  return grads;
}

std::array<double, 4> attention_select(const Tensor& q_map, Cell pos) {
  if (q_map.rank() != 3 || q_map.dim(0) != 4) {
    throw std::invalid_argument("q map must be [4][M][N]");
  }
  if (pos.row < 0 || pos.row >= q_map.dim(1) || pos.col < 0 ||
      pos.col >= q_map.dim(2)) {
    throw std::invalid_argument("attention position out of bounds");
  }
  return {q_map(0, pos.row, pos.col), q_map(1, pos.row, pos.col),
          q_map(2, pos.row, pos.col), q_map(3, pos.row, pos.col)};
}

ValueMaps zero_like_outputs(const ValueMaps& maps) {
  ValueMaps zeros;
  zeros.reward = Tensor::zeros_like(maps.reward);
  zeros.q = Tensor::zeros_like(maps.q);
  zeros.value = Tensor::zeros_like(maps.value);
  return zeros;
}

}  // namespace birdseye
