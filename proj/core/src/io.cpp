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

#include "birdseye/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace birdseye {

using nlohmann::json;

std::string map_to_json(const GlobalMap& map) {
  json j;
  j["M"] = map.rows();
  j["N"] = map.cols();
  json cells = json::array();
  for (CellCode c : map.cells.data()) {
    cells.push_back(static_cast<int>(static_cast<std::int8_t>(c)));
  }
  j["cells"] = std::move(cells);
  j["start"] = {map.start.row, map.start.col};
  j["target"] = {map.target.row, map.target.col};
  j["seed"] = map.seed;
  return j.dump();
}

GlobalMap map_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int rows = j.at("M").get<int>();
  const int cols = j.at("N").get<int>();
  const auto& cells = j.at("cells");
  if (static_cast<int>(cells.size()) != rows * cols) {
    throw std::invalid_argument("cell array size does not match M*N");
  }
  CodeGrid grid(rows, cols, CellCode::kFree);
  for (int i = 0; i < rows * cols; ++i) {
    grid.data()[static_cast<size_t>(i)] =
        static_cast<CellCode>(cells[static_cast<size_t>(i)].get<int>());
  }
  const Cell start{j.at("start")[0].get<int>(), j.at("start")[1].get<int>()};
  const Cell target{j.at("target")[0].get<int>(), j.at("target")[1].get<int>()};
  return make_global_map(std::move(grid), start, target,
                         j.value("seed", std::uint64_t{0}));
}

void save_map(const std::string& path, const GlobalMap& map) {
  write_file(path, map_to_json(map) + "\n");
}

GlobalMap load_map(const std::string& path) {
  return map_from_json(read_file(path));
}

const char* failure_reason_name(FailureReason reason) {
  switch (reason) {
    case FailureReason::kNone: return "none";
    case FailureReason::kStepCap: return "step_cap";
    case FailureReason::kNoModeSwitch: return "no_mode_switch";
    case FailureReason::kDeadEnd: return "dead_end";
    case FailureReason::kNoLocalPath: return "no_local_path";
    case FailureReason::kLeftFov: return "left_fov";
  }
  return "unknown";
}

const char* mode_name(Mode mode) { return mode == Mode::kJoint ? "I" : "II"; }

std::string outcome_to_json(const EpisodeOutcome& outcome) {
  json j;
  j["success"] = outcome.success;
  j["steps"] = outcome.steps;
  j["collisions"] = outcome.collisions;
  json traj = json::array();
  for (const Cell& c : outcome.trajectory) traj.push_back({c.row, c.col});
  j["trajectory"] = std::move(traj);
  j["reason"] = failure_reason_name(outcome.reason);
  return j.dump();
}

namespace {

json obs_to_json(const CodeGrid& obs) {
  json rows = json::array();
  for (int r = 0; r < obs.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < obs.cols(); ++c) {
      row.push_back(static_cast<int>(static_cast<std::int8_t>(obs(r, c))));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CodeGrid obs_from_json(const json& rows) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) throw std::invalid_argument("empty observation");
  const int n = static_cast<int>(rows[0].size());
  CodeGrid obs(m, n, CellCode::kUnknown);
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != n) {
      throw std::invalid_argument("ragged observation");
    }
    for (int c = 0; c < n; ++c) {
      obs(r, c) = static_cast<CellCode>(
          rows[static_cast<size_t>(r)][static_cast<size_t>(c)].get<int>());
    }
  }
  return obs;
}

}  // namespace

std::string dataset_to_jsonl(const std::vector<ExpertSample>& dataset) {
  std::string out;
  for (const ExpertSample& s : dataset) {
    json j;
    j["scenario"] = s.scenario_id;
    j["step"] = s.step_index;
    j["mode"] = mode_name(s.mode);
    j["obs"] = obs_to_json(s.obs);
    j["action"] = static_cast<int>(s.action);
    if (s.mode == Mode::kHover) j["ugv"] = {s.ugv_local.row, s.ugv_local.col};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ExpertSample> dataset_from_jsonl(const std::string& text) {
  std::vector<ExpertSample> dataset;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    ExpertSample s;
    s.scenario_id = j.at("scenario").get<std::uint64_t>();
    s.step_index = j.at("step").get<int>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "I") {
      s.mode = Mode::kJoint;
    } else if (mode == "II") {
      s.mode = Mode::kHover;
    } else {
      throw std::invalid_argument("mode must be \"I\" or \"II\"");
    }
    s.obs = obs_from_json(j.at("obs"));
    s.action = static_cast<Action>(j.at("action").get<int>());
    if (j.contains("ugv")) {
      s.ugv_local = Cell{j["ugv"][0].get<int>(), j["ugv"][1].get<int>()};
    }
    dataset.push_back(std::move(s));
  }
  return dataset;
}

void save_dataset(const std::string& path,
                  const std::vector<ExpertSample>& dataset) {
  write_file(path, dataset_to_jsonl(dataset));
}

std::vector<ExpertSample> load_dataset(const std::string& path) {
  return dataset_from_jsonl(read_file(path));
}

namespace {

// Skips whitespace and '#' comments between PGM header tokens.
std::string next_pgm_token(const std::string& bytes, std::size_t& at) {
  while (at < bytes.size()) {
    if (std::isspace(static_cast<unsigned char>(bytes[at]))) {
      ++at;
    } else if (bytes[at] == '#') {
      while (at < bytes.size() && bytes[at] != '\n') ++at;
    } else {
      break;
    }
  }
  std::string token;
  while (at < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[at]))) {
    token += bytes[at++];
  }
  if (token.empty()) throw std::invalid_argument("truncated PGM header");
  return token;
}

std::uint8_t binarize_pixel(int value, int maxval) {
  if (value == 0) return 0;
  if (value == 1 || value == maxval) return 1;
  throw std::invalid_argument("labels must be binary");
}

}  // namespace

Grid<std::uint8_t> parse_pgm(const std::string& bytes) {
  std::size_t at = 0;
  const std::string magic = next_pgm_token(bytes, at);
  if (magic != "P2" && magic != "P5") {
    throw std::invalid_argument("expected a P2 or P5 PGM");
  }
  const int width = std::stoi(next_pgm_token(bytes, at));
  const int height = std::stoi(next_pgm_token(bytes, at));
  const int maxval = std::stoi(next_pgm_token(bytes, at));
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw std::invalid_argument("unsupported PGM geometry");
  }
  Grid<std::uint8_t> out(height, width, 0);
  if (magic == "P2") {
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        out(r, c) = binarize_pixel(std::stoi(next_pgm_token(bytes, at)), maxval);
      }
    }
  } else {
    ++at;  // single whitespace after maxval
    if (at + static_cast<std::size_t>(width) * height > bytes.size()) {
      throw std::invalid_argument("truncated PGM payload");
    }
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        out(r, c) = binarize_pixel(
            static_cast<unsigned char>(bytes[at++]), maxval);
      }
    }
  }
  return out;
}

Grid<std::uint8_t> load_pgm(const std::string& path) {
  return parse_pgm(read_file(path));
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " is not key=value");
    }
    kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace birdseye
