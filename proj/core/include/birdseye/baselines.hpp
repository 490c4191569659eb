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

#ifndef BIRDSEYE_BASELINES_HPP_
#define BIRDSEYE_BASELINES_HPP_

#include "birdseye/episode.hpp"
#include "birdseye/grid.hpp"

namespace birdseye {

// Improved-A* baseline, full-leg flavor: plan to the visible cell nearest the
// target, execute the whole sub-path, re-observe; once the target is in view,
// plan to it directly. Unknown cells are never traversed. Fails with kDeadEnd
// when the nearest-visible search stops making progress twice in a row.
EpisodeOutcome run_tb1(const GlobalMap& map, FovSize fov,
                       int step_cap = kDefaultStepCap);

// Improved-A* baseline, single-step flavor: same target selection, but only
// the first action of each sub-path is executed before re-observing. Greedy
// re-selection can oscillate; the step cap is the only stop for that.
EpisodeOutcome run_tb2(const GlobalMap& map, FovSize fov,
                       int step_cap = kDefaultStepCap);

// Full-knowledge A* rolled through the episode dynamics; the success-rate
// upper bound in evaluation suites.
EpisodeOutcome run_expert(const GlobalMap& map, FovSize fov,
                          int step_cap = kDefaultStepCap);

}  // namespace birdseye

#endif  // BIRDSEYE_BASELINES_HPP_
