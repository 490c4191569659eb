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

#ifndef BIRDSEYE_TENSOR_HPP_
#define BIRDSEYE_TENSOR_HPP_

#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace birdseye {

// Dense row-major double tensor, rank 1..4. This is deliberately minimal:
// the planner networks index explicitly and never need views or broadcasting.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> dims);
  Tensor(std::initializer_list<int> dims) : Tensor(std::vector<int>(dims)) {}

  static Tensor zeros_like(const Tensor& other) { return Tensor(other.dims_); }

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int i) const { return dims_[static_cast<size_t>(i)]; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double& operator()(int i) {
    assert(rank() == 1);
    return data_[static_cast<size_t>(i)];
  }
  double operator()(int i) const {
    assert(rank() == 1);
    return data_[static_cast<size_t>(i)];
  }
  double& operator()(int i, int j) {
    assert(rank() == 2);
    return data_[static_cast<size_t>(i) * strides_[0] + static_cast<size_t>(j)];
  }
  double operator()(int i, int j) const {
    assert(rank() == 2);
    return data_[static_cast<size_t>(i) * strides_[0] + static_cast<size_t>(j)];
  }
  double& operator()(int i, int j, int k) {
    assert(rank() == 3);
    return data_[static_cast<size_t>(i) * strides_[0] +
                 static_cast<size_t>(j) * strides_[1] + static_cast<size_t>(k)];
  }
  double operator()(int i, int j, int k) const {
    assert(rank() == 3);
    return data_[static_cast<size_t>(i) * strides_[0] +
                 static_cast<size_t>(j) * strides_[1] + static_cast<size_t>(k)];
  }
  double& operator()(int i, int j, int k, int l) {
    assert(rank() == 4);
    return data_[static_cast<size_t>(i) * strides_[0] +
                 static_cast<size_t>(j) * strides_[1] +
                 static_cast<size_t>(k) * strides_[2] + static_cast<size_t>(l)];
  }
  double operator()(int i, int j, int k, int l) const {
    assert(rank() == 4);
    return data_[static_cast<size_t>(i) * strides_[0] +
                 static_cast<size_t>(j) * strides_[1] +
                 static_cast<size_t>(k) * strides_[2] + static_cast<size_t>(l)];
  }

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  void fill(double value);
  void add_scaled(const Tensor& other, double scale);  // *this += scale * other

  bool same_shape(const Tensor& other) const { return dims_ == other.dims_; }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

// Uniform init in [-scale, scale], consuming the generator deterministically.
void fill_uniform(Tensor& t, std::mt19937_64& rng, double scale);

bool all_finite(const Tensor& t);

// Named checkpoint container. Flat binary layout, little endian:
//   magic "BETC" | u32 version (=1) | u32 tensor count
//   per tensor: u32 name length | name bytes | u32 rank | u32 dims[rank]
//               | f64 data (row-major)
void save_tensors(const std::string& path,
                  const std::vector<std::pair<std::string, const Tensor*>>& tensors);
std::map<std::string, Tensor> load_tensors(const std::string& path);

}  // namespace birdseye

#endif  // BIRDSEYE_TENSOR_HPP_
