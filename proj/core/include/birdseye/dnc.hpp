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

#ifndef BIRDSEYE_DNC_HPP_
#define BIRDSEYE_DNC_HPP_

#include <array>
#include <string>
#include <vector>

#include "birdseye/tensor.hpp"

namespace birdseye {

struct MemoryConfig {
  int slots = 32;
  int width = 8;
  int read_heads = 4;
  // One write head; the update rules below assume it.
};

// External memory with one write head and `read_heads` read heads. Writes
// combine content addressing with usage-based allocation; reads blend content
// addressing with temporal linkage in both directions.
//
// Invariants kept by every update from a valid state: weight vectors are
// non-negative and sum to at most one, usage stays in [0, 1], and the link
// matrix has a zero diagonal with row and column sums at most one.
struct MemoryState {
  Tensor memory;                     // [slots][width]
  Tensor usage;                      // [slots]
  Tensor precedence;                 // [slots]
  Tensor link;                       // [slots][slots]
  Tensor write_weight;               // [slots]
  std::vector<Tensor> read_weights;  // read_heads x [slots]
  std::vector<Tensor> reads;         // read_heads x [width]
};

MemoryState make_memory_state(const MemoryConfig& config);

// Controller commands after squashing: gates in (0, 1) via the logistic
// function, strengths >= 1 via oneplus, read modes on the 3-simplex via
// softmax (order: backward, content, forward).
struct InterfaceVector {
  std::vector<Tensor> read_keys;        // read_heads x [width]
  std::vector<double> read_strengths;   // read_heads
  Tensor write_key;                     // [width]
  double write_strength = 1.0;
  Tensor erase;                         // [width]
  Tensor write_vector;                  // [width]
  std::vector<double> free_gates;       // read_heads
  double allocation_gate = 0.5;
  double write_gate = 0.5;
  std::vector<std::array<double, 3>> read_modes;  // read_heads x 3
};

// Raw interface width: W*R + 3W + 5R + 3.
int interface_size(const MemoryConfig& config);

// Zero-filled container, also used to carry interface gradients.
InterfaceVector make_zero_interface(const MemoryConfig& config);

// Squashes a raw controller emission into a valid InterfaceVector. Layout:
// read keys | read strengths | write key | write strength | erase |
// write vector | free gates | allocation gate | write gate | read modes.
InterfaceVector parse_interface(const Tensor& raw, const MemoryConfig& config);

// Gradients through the squashing, InterfaceVector grads -> raw grads.
Tensor parse_interface_backward(const Tensor& raw, const MemoryConfig& config,
                                const InterfaceVector& grad_iface);

// Softmax over slots of strength-scaled cosine similarity to `key`.
// All-zero rows (and an all-zero key) contribute similarity exactly 0.
Tensor content_address(const Tensor& memory, const Tensor& key,
                       double strength);

// Usage-ordered allocation: slots sorted by ascending usage receive
// (1 - u) times the product of the usages of all freer slots.
Tensor allocation_weights(const Tensor& usage);

// Erase-then-write update along with the usage, precedence, and link
// recurrences. Read weights and read vectors pass through unchanged.
MemoryState write(const MemoryState& state, const InterfaceVector& iface);

// Read-head update on a post-write state: per head, blend backward/content/
// forward weights by the read modes and average memory rows by the result.
MemoryState read(const MemoryState& state, const InterfaceVector& iface);

// Everything a backward pass needs from one write+read step.
struct MemoryStepCache {
  MemoryState prev;
  InterfaceVector iface;
  Tensor retention;              // [slots]
  Tensor usage_new;              // [slots]
  std::vector<int> alloc_order;  // slot ids, ascending usage
  Tensor alloc;                  // [slots]
  Tensor write_content;          // [slots]
  MemoryState next;              // post write+read
  std::vector<Tensor> read_content;   // per head [slots]
  std::vector<Tensor> read_forward;   // per head [slots]
  std::vector<Tensor> read_backward;  // per head [slots]
};

// One full memory step (write then read), optionally caching for backward.
MemoryState memory_step(const MemoryState& state, const InterfaceVector& iface,
                        MemoryStepCache* cache = nullptr);

// Reverse pass of memory_step. `grad_next` carries upstream grads on every
// field of the new state (including reads); outputs accumulate into
// `grad_prev` and `grad_iface`.
void memory_step_backward(const MemoryStepCache& cache,
                          const MemoryState& grad_next, MemoryState& grad_prev,
                          InterfaceVector& grad_iface);

// Replay/debug snapshots in the shared flat-binary tensor container.
void save_memory_state(const std::string& path, const MemoryState& state);
MemoryState load_memory_state(const std::string& path);

}  // namespace birdseye

#endif  // BIRDSEYE_DNC_HPP_
