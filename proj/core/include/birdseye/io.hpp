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

#ifndef BIRDSEYE_IO_HPP_
#define BIRDSEYE_IO_HPP_

#include <map>
#include <string>
#include <vector>

#include "birdseye/episode.hpp"
#include "birdseye/expert.hpp"
#include "birdseye/grid.hpp"

namespace birdseye {

// Map serialization: {"M", "N", "cells" (row-major), "start", "target",
// "seed"}. Cells hold 0/1; start and target are [row, col].
std::string map_to_json(const GlobalMap& map);
GlobalMap map_from_json(const std::string& json);
void save_map(const std::string& path, const GlobalMap& map);
GlobalMap load_map(const std::string& path);

std::string outcome_to_json(const EpisodeOutcome& outcome);

const char* failure_reason_name(FailureReason reason);
const char* mode_name(Mode mode);  // "I" / "II"

// Datasets are JSON Lines, one sample per line:
//   {"scenario": id, "step": k, "mode": "I"|"II", "obs": [[...]],
//    "action": 0..3}
// Hover-mode lines additionally carry "ugv": [row, col] in window
// coordinates, which the attention lookup needs at train time.
std::string dataset_to_jsonl(const std::vector<ExpertSample>& dataset);
std::vector<ExpertSample> dataset_from_jsonl(const std::string& text);
void save_dataset(const std::string& path, const std::vector<ExpertSample>&);
std::vector<ExpertSample> load_dataset(const std::string& path);

// Binary label image as plain (P2) or raw (P5) PGM. Pixels must be 0/1 or
// 0/maxval; anything else is rejected.
Grid<std::uint8_t> parse_pgm(const std::string& bytes);
Grid<std::uint8_t> load_pgm(const std::string& path);

// Plain key=value configuration lines; '#' starts a comment, blank lines are
// skipped.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace birdseye

#endif  // BIRDSEYE_IO_HPP_
