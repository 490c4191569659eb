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

#include "birdseye/dnc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace birdseye {

namespace {

constexpr double kZeroNorm = 1e-30;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double softplus(double x) {
  return x > 30.0 ? x : std::log1p(std::exp(x));
}

inline double oneplus(double x) { return 1.0 + softplus(x); }

// d/dx oneplus(x) = sigmoid(x)
inline double oneplus_grad(double x) { return sigmoid(x); }

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Cosine similarities of every memory row against the key; rows or keys with
// zero norm score exactly 0.
std::vector<double> row_similarities(const Tensor& memory, const Tensor& key) {
  const int slots = memory.dim(0);
  const int width = memory.dim(1);
  const double key_norm = norm(key.flat());
  std::vector<double> sims(static_cast<size_t>(slots), 0.0);
  if (key_norm < kZeroNorm) return sims;
  for (int n = 0; n < slots; ++n) {
    std::span<const double> row(memory.flat().data() + n * width,
                                static_cast<size_t>(width));
    const double row_norm = norm(row);
    if (row_norm < kZeroNorm) continue;
    sims[static_cast<size_t>(n)] = dot(row, key.flat()) / (row_norm * key_norm);
  }
  return sims;
}

Tensor softmax(const std::vector<double>& scores) {
  Tensor out{static_cast<int>(scores.size())};
  const double peak = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - peak);
    total += out[i];
  }
  for (double& v : out.flat()) v /= total;
  return out;
}

// Accumulates content-address gradients. Recomputes similarities; the state
// here is small enough that caching them buys nothing.
void content_address_backward(const Tensor& memory, const Tensor& key,
                              double strength, const Tensor& weights,
                              const Tensor& grad_weights, Tensor& grad_memory,
                              Tensor& grad_key, double& grad_strength) {
  const int slots = memory.dim(0);
  const int width = memory.dim(1);
  const auto sims = row_similarities(memory, key);

  // Softmax backward: g_z = w * (g_w - <g_w, w>).
  double inner = 0.0;
  for (int n = 0; n < slots; ++n) inner += grad_weights(n) * weights(n);
  const double key_norm = norm(key.flat());
  for (int n = 0; n < slots; ++n) {
    const double g_z = weights(n) * (grad_weights(n) - inner);
    grad_strength += g_z * sims[static_cast<size_t>(n)];
    const double g_sim = g_z * strength;
    if (g_sim == 0.0 || key_norm < kZeroNorm) continue;
    std::span<const double> row(memory.flat().data() + n * width,
                                static_cast<size_t>(width));
    const double row_norm = norm(row);
    if (row_norm < kZeroNorm) continue;
    const double inv = 1.0 / (row_norm * key_norm);
    const double sim = sims[static_cast<size_t>(n)];
    for (int w = 0; w < width; ++w) {
      grad_memory(n, w) +=
          g_sim * (key(w) * inv - sim * memory(n, w) / (row_norm * row_norm));
      grad_key(w) += g_sim * (memory(n, w) * inv - sim * key(w) / (key_norm * key_norm));
    }
  }
}

std::vector<int> usage_order(const Tensor& usage) {
  std::vector<int> order(static_cast<size_t>(usage.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&usage](int a, int b) { return usage(a) < usage(b); });
  return order;
}

Tensor allocation_from_order(const Tensor& usage, const std::vector<int>& order) {
  Tensor alloc{static_cast<int>(usage.size())};
  double running = 1.0;  // product of usages of all freer slots
  for (const int slot : order) {
    alloc(slot) = (1.0 - usage(slot)) * running;
    running *= usage(slot);
  }
  return alloc;
}

// Reverse of allocation_from_order without dividing by usages (which may be
// zero): suffix accumulation over the sorted order.
void allocation_backward(const Tensor& usage, const std::vector<int>& order,
                         const Tensor& grad_alloc, Tensor& grad_usage) {
  const int slots = static_cast<int>(usage.size());
  // prefix[j] = product of usage over order[0..j-1]
  std::vector<double> prefix(static_cast<size_t>(slots) + 1, 1.0);
  for (int j = 0; j < slots; ++j) {
    prefix[static_cast<size_t>(j) + 1] =
        prefix[static_cast<size_t>(j)] * usage(order[static_cast<size_t>(j)]);
  }
  // Direct term: d a[o_j] / d u[o_j] = -prefix[j].
  for (int j = 0; j < slots; ++j) {
    grad_usage(order[static_cast<size_t>(j)]) -=
        grad_alloc(order[static_cast<size_t>(j)]) * prefix[static_cast<size_t>(j)];
  }
  // Chain term: u[o_i] multiplies a[o_j] for every j > i.
  // suffix_i = sum_{j>i} T_j * prod_{i<l<j} u[o_l], with T_j = g_a[o_j]*(1-u[o_j]).
  double suffix = 0.0;
  for (int i = slots - 2; i >= 0; --i) {
    const int next = order[static_cast<size_t>(i) + 1];
    const double t_next = grad_alloc(next) * (1.0 - usage(next));
    suffix = t_next + usage(next) * suffix;
    grad_usage(order[static_cast<size_t>(i)]) +=
        prefix[static_cast<size_t>(i)] * suffix;
  }
}

Tensor retention_vector(const MemoryState& state, const InterfaceVector& iface) {
  const int slots = state.usage.dim(0);
  Tensor psi{slots};
  psi.fill(1.0);
  for (std::size_t i = 0; i < state.read_weights.size(); ++i) {
    const double f = iface.free_gates[i];
    for (int n = 0; n < slots; ++n) {
      psi(n) *= 1.0 - f * state.read_weights[i](n);
    }
  }
  return psi;
}

struct WriteIntermediates {
  Tensor retention;
  Tensor usage_new;
  std::vector<int> alloc_order;
  Tensor alloc;
  Tensor write_content;
};

MemoryState write_impl(const MemoryState& state, const InterfaceVector& iface,
                       WriteIntermediates* keep) {
  const int slots = state.memory.dim(0);
  const int width = state.memory.dim(1);

  const Tensor psi = retention_vector(state, iface);
  Tensor usage_new{slots};
  for (int n = 0; n < slots; ++n) {
    const double u = state.usage(n);
    const double w = state.write_weight(n);
    usage_new(n) = (u + w - u * w) * psi(n);
  }

  const auto order = usage_order(usage_new);
  const Tensor alloc = allocation_from_order(usage_new, order);
  const Tensor content =
      content_address(state.memory, iface.write_key, iface.write_strength);

  MemoryState next = state;
  next.usage = usage_new;

  const double g_w = iface.write_gate;
  const double g_a = iface.allocation_gate;
  for (int n = 0; n < slots; ++n) {
    next.write_weight(n) = g_w * (g_a * alloc(n) + (1.0 - g_a) * content(n));
  }

  // Erase then write.
  for (int n = 0; n < slots; ++n) {
    const double ww = next.write_weight(n);
    for (int w = 0; w < width; ++w) {
      next.memory(n, w) = state.memory(n, w) * (1.0 - ww * iface.erase(w)) +
                          ww * iface.write_vector(w);
    }
  }

  double write_sum = 0.0;
  for (int n = 0; n < slots; ++n) write_sum += next.write_weight(n);
  for (int n = 0; n < slots; ++n) {
    next.precedence(n) =
        (1.0 - write_sum) * state.precedence(n) + next.write_weight(n);
  }

  for (int i = 0; i < slots; ++i) {
    for (int j = 0; j < slots; ++j) {
      if (i == j) {
        next.link(i, j) = 0.0;
        continue;
      }
      next.link(i, j) =
          (1.0 - next.write_weight(i) - next.write_weight(j)) * state.link(i, j) +
          next.write_weight(i) * state.precedence(j);
    }
  }

  if (keep != nullptr) {
    keep->retention = psi;
    keep->usage_new = usage_new;
    keep->alloc_order = order;
    keep->alloc = alloc;
    keep->write_content = content;
  }
  return next;
}

struct ReadIntermediates {
  std::vector<Tensor> content;
  std::vector<Tensor> forward;
  std::vector<Tensor> backward;
};

// `state` must already hold the post-write memory and link; read weights in
// it are still the previous step's.
MemoryState read_impl(const MemoryState& state, const InterfaceVector& iface,
                      ReadIntermediates* keep) {
  const int slots = state.memory.dim(0);
  const int width = state.memory.dim(1);
  const int heads = static_cast<int>(state.read_weights.size());

  MemoryState next = state;
  if (keep != nullptr) {
    keep->content.clear();
    keep->forward.clear();
    keep->backward.clear();
  }
  for (int i = 0; i < heads; ++i) {
    const Tensor content = content_address(state.memory, iface.read_keys[i],
                                           iface.read_strengths[i]);
    Tensor fwd{slots}, bwd{slots};
    for (int n = 0; n < slots; ++n) {
      double f = 0.0, b = 0.0;
      for (int m = 0; m < slots; ++m) {
        f += state.link(n, m) * state.read_weights[i](m);
        b += state.link(m, n) * state.read_weights[i](m);
      }
      fwd(n) = f;
      bwd(n) = b;
    }
    const auto& mode = iface.read_modes[i];
    for (int n = 0; n < slots; ++n) {
      next.read_weights[i](n) =
          mode[0] * bwd(n) + mode[1] * content(n) + mode[2] * fwd(n);
    }
    for (int w = 0; w < width; ++w) {
      double acc = 0.0;
      for (int n = 0; n < slots; ++n) acc += state.memory(n, w) * next.read_weights[i](n);
      next.reads[i](w) = acc;
    }
    if (keep != nullptr) {
      keep->content.push_back(content);
      keep->forward.push_back(std::move(fwd));
      keep->backward.push_back(std::move(bwd));
    }
  }
  return next;
}

}  // namespace

MemoryState make_memory_state(const MemoryConfig& config) {
  MemoryState state;
  state.memory = Tensor{config.slots, config.width};
  state.usage = Tensor{config.slots};
  state.precedence = Tensor{config.slots};
  state.link = Tensor{config.slots, config.slots};
  state.write_weight = Tensor{config.slots};
  state.read_weights.assign(static_cast<size_t>(config.read_heads),
                            Tensor{config.slots});
  state.reads.assign(static_cast<size_t>(config.read_heads),
                     Tensor{config.width});
  return state;
}

int interface_size(const MemoryConfig& config) {
  const int w = config.width;
  const int r = config.read_heads;
  return r * w + 3 * w + 5 * r + 3;
}

InterfaceVector make_zero_interface(const MemoryConfig& config) {
  InterfaceVector iface;
  iface.read_keys.assign(static_cast<size_t>(config.read_heads),
                         Tensor{config.width});
  iface.read_strengths.assign(static_cast<size_t>(config.read_heads), 0.0);
  iface.write_key = Tensor{config.width};
  iface.write_strength = 0.0;
  iface.erase = Tensor{config.width};
  iface.write_vector = Tensor{config.width};
  iface.free_gates.assign(static_cast<size_t>(config.read_heads), 0.0);
  iface.allocation_gate = 0.0;
  iface.write_gate = 0.0;
  iface.read_modes.assign(static_cast<size_t>(config.read_heads),
                          {0.0, 0.0, 0.0});
  return iface;
}

InterfaceVector parse_interface(const Tensor& raw, const MemoryConfig& config) {
  if (static_cast<int>(raw.size()) != interface_size(config)) {
    throw std::invalid_argument("interface vector has the wrong size");
  }
  const int w = config.width;
  const int r = config.read_heads;
  InterfaceVector iface = make_zero_interface(config);
  int at = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < w; ++j) iface.read_keys[i](j) = raw[at++];
  }
  for (int i = 0; i < r; ++i) iface.read_strengths[i] = oneplus(raw[at++]);
  for (int j = 0; j < w; ++j) iface.write_key(j) = raw[at++];
  iface.write_strength = oneplus(raw[at++]);
  for (int j = 0; j < w; ++j) iface.erase(j) = sigmoid(raw[at++]);
  for (int j = 0; j < w; ++j) iface.write_vector(j) = raw[at++];
  for (int i = 0; i < r; ++i) iface.free_gates[i] = sigmoid(raw[at++]);
  iface.allocation_gate = sigmoid(raw[at++]);
  iface.write_gate = sigmoid(raw[at++]);
  for (int i = 0; i < r; ++i) {
    double z[3] = {raw[at], raw[at + 1], raw[at + 2]};
    const double peak = std::max({z[0], z[1], z[2]});
    double total = 0.0;
    for (double& v : z) {
      v = std::exp(v - peak);
      total += v;
    }
    for (int m = 0; m < 3; ++m) iface.read_modes[i][m] = z[m] / total;
    at += 3;
  }
  return iface;
}

Tensor parse_interface_backward(const Tensor& raw, const MemoryConfig& config,
                                const InterfaceVector& grad_iface) {
  const int w = config.width;
  const int r = config.read_heads;
  // Re-derive squashed values where the grads need them.
  const InterfaceVector iface = parse_interface(raw, config);
  Tensor grad_raw{static_cast<int>(raw.size())};
  int at = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < w; ++j) grad_raw[at++] = grad_iface.read_keys[i](j);
  }
  for (int i = 0; i < r; ++i) {
    grad_raw[at] = grad_iface.read_strengths[i] * oneplus_grad(raw[at]);
    ++at;
  }
  for (int j = 0; j < w; ++j) grad_raw[at++] = grad_iface.write_key(j);
  grad_raw[at] = grad_iface.write_strength * oneplus_grad(raw[at]);
  ++at;
  for (int j = 0; j < w; ++j) {
    const double s = iface.erase(j);
    grad_raw[at++] = grad_iface.erase(j) * s * (1.0 - s);
  }
  for (int j = 0; j < w; ++j) grad_raw[at++] = grad_iface.write_vector(j);
  for (int i = 0; i < r; ++i) {
    const double s = iface.free_gates[i];
    grad_raw[at++] = grad_iface.free_gates[i] * s * (1.0 - s);
  }
  {
    const double s = iface.allocation_gate;
    grad_raw[at++] = grad_iface.allocation_gate * s * (1.0 - s);
  }
  {
    const double s = iface.write_gate;
    grad_raw[at++] = grad_iface.write_gate * s * (1.0 - s);
  }
  for (int i = 0; i < r; ++i) {
    const auto& mode = iface.read_modes[i];
    const auto& g = grad_iface.read_modes[i];
    double inner = 0.0;
    for (int m = 0; m < 3; ++m) inner += g[m] * mode[m];
    for (int m = 0; m < 3; ++m) grad_raw[at++] = mode[m] * (g[m] - inner);
  }
  return grad_raw;
}

Tensor content_address(const Tensor& memory, const Tensor& key,
                       double strength) {
  if (memory.rank() != 2 || static_cast<int>(key.size()) != memory.dim(1)) {
    throw std::invalid_argument("content_address shape mismatch");
  }
  if (strength <= 0.0) throw std::invalid_argument("strength must be positive");
  auto sims = row_similarities(memory, key);
  for (double& s : sims) s *= strength;
  return softmax(sims);
}

Tensor allocation_weights(const Tensor& usage) {
  for (double u : usage.flat()) {
    if (u < 0.0 || u > 1.0) {
      throw std::invalid_argument("usage must lie in [0, 1]");
    }
  }
  return allocation_from_order(usage, usage_order(usage));
}

MemoryState write(const MemoryState& state, const InterfaceVector& iface) {
  return write_impl(state, iface, nullptr);
}

MemoryState read(const MemoryState& state, const InterfaceVector& iface) {
  return read_impl(state, iface, nullptr);
}

MemoryState memory_step(const MemoryState& state, const InterfaceVector& iface,
                        MemoryStepCache* cache) {
  WriteIntermediates wi;
  ReadIntermediates ri;
  const MemoryState mid = write_impl(state, iface, cache ? &wi : nullptr);
  MemoryState next = read_impl(mid, iface, cache ? &ri : nullptr);
  if (cache != nullptr) {
    cache->prev = state;
    cache->iface = iface;
    cache->retention = std::move(wi.retention);
    cache->usage_new = std::move(wi.usage_new);
    cache->alloc_order = std::move(wi.alloc_order);
    cache->alloc = std::move(wi.alloc);
    cache->write_content = std::move(wi.write_content);
    cache->next = next;
    cache->read_content = std::move(ri.content);
    cache->read_forward = std::move(ri.forward);
    cache->read_backward = std::move(ri.backward);
  }
  return next;
}

void memory_step_backward(const MemoryStepCache& cache,
                          const MemoryState& grad_next, MemoryState& grad_prev,
                          InterfaceVector& grad_iface) {
  const MemoryState& prev = cache.prev;
  const MemoryState& next = cache.next;
  const InterfaceVector& iface = cache.iface;
  const int slots = prev.memory.dim(0);
  const int width = prev.memory.dim(1);
  const int heads = static_cast<int>(prev.read_weights.size());

  // Accumulators for the post-write state (memory/link are shared between
  // the read heads and the write recurrences).
  Tensor g_memory_new = grad_next.memory;
  Tensor g_link_new = grad_next.link;
  Tensor g_write_weight = grad_next.write_weight;
  Tensor g_precedence_new = grad_next.precedence;
  Tensor g_usage_new = grad_next.usage;

  // --- read heads, in reverse ---
  for (int i = 0; i < heads; ++i) {
    Tensor g_read_weight = grad_next.read_weights[static_cast<size_t>(i)];
    const Tensor& g_read = grad_next.reads[static_cast<size_t>(i)];

    // reads[i] = memory_new^T read_weight_new
    for (int n = 0; n < slots; ++n) {
      double acc = 0.0;
      for (int w = 0; w < width; ++w) {
        g_memory_new(n, w) += next.read_weights[static_cast<size_t>(i)](n) * g_read(w);
        acc += next.memory(n, w) * g_read(w);
      }
      g_read_weight(n) += acc;
    }

    // read_weight_new = pi0*bwd + pi1*content + pi2*fwd
    const auto& mode = iface.read_modes[static_cast<size_t>(i)];
    auto& g_mode = grad_iface.read_modes[static_cast<size_t>(i)];
    Tensor g_content{slots}, g_fwd{slots}, g_bwd{slots};
    for (int n = 0; n < slots; ++n) {
      const double g = g_read_weight(n);
      g_mode[0] += g * cache.read_backward[static_cast<size_t>(i)](n);
      g_mode[1] += g * cache.read_content[static_cast<size_t>(i)](n);
      g_mode[2] += g * cache.read_forward[static_cast<size_t>(i)](n);
      g_bwd(n) = g * mode[0];
      g_content(n) = g * mode[1];
      g_fwd(n) = g * mode[2];
    }

    // fwd = link_new * rw_prev, bwd = link_new^T * rw_prev
    for (int n = 0; n < slots; ++n) {
      for (int m = 0; m < slots; ++m) {
        g_link_new(n, m) += g_fwd(n) * prev.read_weights[static_cast<size_t>(i)](m);
        g_link_new(m, n) += g_bwd(n) * prev.read_weights[static_cast<size_t>(i)](m);
        grad_prev.read_weights[static_cast<size_t>(i)](m) +=
            next.link(n, m) * g_fwd(n) + next.link(m, n) * g_bwd(n);
      }
    }

    content_address_backward(next.memory, iface.read_keys[static_cast<size_t>(i)],
                             iface.read_strengths[static_cast<size_t>(i)],
                             cache.read_content[static_cast<size_t>(i)], g_content,
                             g_memory_new, grad_iface.read_keys[static_cast<size_t>(i)],
                             grad_iface.read_strengths[static_cast<size_t>(i)]);
  }

  // --- link update ---
  // link_new[i][j] = (1 - ww_i - ww_j) link_prev[i][j] + ww_i prec_prev[j], i != j
  for (int i = 0; i < slots; ++i) {
    for (int j = 0; j < slots; ++j) {
      if (i == j) continue;
      const double g = g_link_new(i, j);
      if (g == 0.0) continue;
      grad_prev.link(i, j) +=
          g * (1.0 - next.write_weight(i) - next.write_weight(j));
      g_write_weight(i) += g * (prev.precedence(j) - prev.link(i, j));
      g_write_weight(j) += g * (-prev.link(i, j));
      grad_prev.precedence(j) += g * next.write_weight(i);
    }
  }

  // --- precedence update ---
  // prec_new = (1 - sum(ww)) prec_prev + ww
  double write_sum = 0.0;
  for (int n = 0; n < slots; ++n) write_sum += next.write_weight(n);
  double prec_inner = 0.0;
  for (int n = 0; n < slots; ++n) prec_inner += g_precedence_new(n) * prev.precedence(n);
  for (int n = 0; n < slots; ++n) {
    grad_prev.precedence(n) += g_precedence_new(n) * (1.0 - write_sum);
    g_write_weight(n) += g_precedence_new(n) - prec_inner;
  }

  // --- memory update ---
  // memory_new = memory_prev o (1 - ww e^T) + ww v^T
  Tensor g_erase{width}, g_write_vec{width};
  for (int n = 0; n < slots; ++n) {
    const double ww = next.write_weight(n);
    double acc = 0.0;
    for (int w = 0; w < width; ++w) {
      const double g = g_memory_new(n, w);
      grad_prev.memory(n, w) += g * (1.0 - ww * iface.erase(w));
      acc += g * (iface.write_vector(w) - prev.memory(n, w) * iface.erase(w));
      g_erase(w) += g * (-prev.memory(n, w) * ww);
      g_write_vec(w) += g * ww;
    }
    g_write_weight(n) += acc;
  }
  grad_iface.erase.add_scaled(g_erase, 1.0);
  grad_iface.write_vector.add_scaled(g_write_vec, 1.0);

  // --- write weighting ---
  // ww = g_w (g_a alloc + (1 - g_a) content)
  const double gate_w = iface.write_gate;
  const double gate_a = iface.allocation_gate;
  Tensor g_alloc{slots}, g_write_content{slots};
  for (int n = 0; n < slots; ++n) {
    const double blend = gate_a * cache.alloc(n) + (1.0 - gate_a) * cache.write_content(n);
    grad_iface.write_gate += g_write_weight(n) * blend;
    grad_iface.allocation_gate +=
        g_write_weight(n) * gate_w * (cache.alloc(n) - cache.write_content(n));
    g_alloc(n) = g_write_weight(n) * gate_w * gate_a;
    g_write_content(n) = g_write_weight(n) * gate_w * (1.0 - gate_a);
  }

  content_address_backward(prev.memory, iface.write_key, iface.write_strength,
                           cache.write_content, g_write_content,
                           grad_prev.memory, grad_iface.write_key,
                           grad_iface.write_strength);

  allocation_backward(cache.usage_new, cache.alloc_order, g_alloc, g_usage_new);

  // --- usage update ---
  // usage_new = (u + ww_prev - u o ww_prev) o psi
  Tensor g_psi{slots};
  for (int n = 0; n < slots; ++n) {
    const double u = prev.usage(n);
    const double wp = prev.write_weight(n);
    const double g = g_usage_new(n);
    grad_prev.usage(n) += g * cache.retention(n) * (1.0 - wp);
    grad_prev.write_weight(n) += g * cache.retention(n) * (1.0 - u);
    g_psi(n) = g * (u + wp - u * wp);
  }

  // --- retention ---
  // psi_n = prod_i (1 - f_i rw_prev_i[n]); recompute leave-one-out products.
  for (int n = 0; n < slots; ++n) {
    const double g = g_psi(n);
    if (g == 0.0) continue;
    for (int i = 0; i < heads; ++i) {
      double others = 1.0;
      for (int j = 0; j < heads; ++j) {
        if (j == i) continue;
        others *= 1.0 - iface.free_gates[static_cast<size_t>(j)] *
                            prev.read_weights[static_cast<size_t>(j)](n);
      }
      const double f = iface.free_gates[static_cast<size_t>(i)];
      const double rw = prev.read_weights[static_cast<size_t>(i)](n);
      grad_iface.free_gates[static_cast<size_t>(i)] += g * (-rw) * others;
      grad_prev.read_weights[static_cast<size_t>(i)](n) += g * (-f) * others;
    }
  }
}

void save_memory_state(const std::string& path, const MemoryState& state) {
  std::vector<std::pair<std::string, const Tensor*>> tensors = {
      {"memory", &state.memory},
      {"usage", &state.usage},
      {"precedence", &state.precedence},
      {"link", &state.link},
      {"write_weight", &state.write_weight},
  };
  for (std::size_t i = 0; i < state.read_weights.size(); ++i) {
    tensors.emplace_back("read_weight/" + std::to_string(i),
                         &state.read_weights[i]);
    tensors.emplace_back("read/" + std::to_string(i), &state.reads[i]);
  }
  save_tensors(path, tensors);
}

MemoryState load_memory_state(const std::string& path) {
  auto tensors = load_tensors(path);
  auto take = [&tensors, &path](const std::string& name) -> Tensor {
    const auto it = tensors.find(name);
    if (it == tensors.end()) {
      throw std::runtime_error("missing tensor '" + name + "' in " + path);
    }
    return std::move(it->second);
  };
  MemoryState state;
  state.memory = take("memory");
  state.usage = take("usage");
  state.precedence = take("precedence");
  state.link = take("link");
  state.write_weight = take("write_weight");
  for (int i = 0; tensors.count("read_weight/" + std::to_string(i)) != 0; ++i) {
    state.read_weights.push_back(take("read_weight/" + std::to_string(i)));
    state.reads.push_back(take("read/" + std::to_string(i)));
  }
  if (state.read_weights.empty()) {
    throw std::runtime_error("snapshot has no read heads: " + path);
  }
  return state;
}

}  // namespace birdseye
