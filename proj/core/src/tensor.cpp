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

#include "birdseye/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "checkpoint container assumes a little-endian host");

namespace birdseye {

Tensor::Tensor(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() > 4) {
    throw std::invalid_argument("tensor rank must be 1..4");
  }
  std::size_t total = 1;
  for (int d : dims_) {
    if (d <= 0) throw std::invalid_argument("tensor dims must be positive");
    total *= static_cast<std::size_t>(d);
  }
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i) {
    strides_[static_cast<size_t>(i)] =
        strides_[static_cast<size_t>(i) + 1] *
        static_cast<std::size_t>(dims_[static_cast<size_t>(i) + 1]);
  }
  data_.assign(total, 0.0);
}

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void Tensor::add_scaled(const Tensor& other, double scale) {
  if (!same_shape(other)) throw std::invalid_argument("shape mismatch in add_scaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
}

void fill_uniform(Tensor& t, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (double& v : t.flat()) v = dist(rng);
}

bool all_finite(const Tensor& t) {
  for (double v : t.flat()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace {

constexpr char kMagic[4] = {'B', 'E', 'T', 'C'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw std::runtime_error("truncated tensor container");
  return v;
}

}  // namespace

void save_tensors(const std::string& path,
                  const std::vector<std::pair<std::string, const Tensor*>>& tensors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, tensor] : tensors) {
    write_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u32(out, static_cast<std::uint32_t>(tensor->rank()));
    for (int d : tensor->dims()) write_u32(out, static_cast<std::uint32_t>(d));
    out.write(reinterpret_cast<const char*>(tensor->flat().data()),
              static_cast<std::streamsize>(tensor->size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::map<std::string, Tensor> load_tensors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a tensor container: " + path);
  }
  const std::uint32_t version = read_u32(in);
  if (version != kVersion) {
    throw std::runtime_error("unsupported container version in " + path);
  }
  const std::uint32_t count = read_u32(in);
  std::map<std::string, Tensor> result;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t name_len = read_u32(in);
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);
    const std::uint32_t rank = read_u32(in);
    if (rank == 0 || rank > 4) throw std::runtime_error("bad tensor rank in " + path);
    std::vector<int> dims(rank);
    for (auto& d : dims) d = static_cast<int>(read_u32(in));
    Tensor t(dims);
    in.read(reinterpret_cast<char*>(t.flat().data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated tensor container: " + path);
    result.emplace(std::move(name), std::move(t));
  }
  return result;
}

}  // namespace birdseye
